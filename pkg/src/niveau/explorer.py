"""Probes of translated Hamming balls over odd primes.

For each translate g the connection set is (g + V(n, k)) together with its
negation, minus 0, and the question is whether the Cayley graph needs more
than ``k_colors`` colors.  A PROVEN row means every k_colors-partition of
G_p^(n) has a class with a difference in g + V(n, k); a REFUTED row carries
a proper coloring.  Either way a row is evidence about a single ball at a
single scale, not about unions of balls.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .group import DEFAULT_ENUMERATION_CAP, GroupElement, RandomStream, check_prime, enumerable, group_order
from .recurrence import DEFAULT_NODE_BUDGET, INCONCLUSIVE, PROVEN, REFUTED, CayleyGraph, Verdict, chromatic_exceeds
from .sets import FiniteSet, HammingBallSpec, materialize

DEFAULT_SAMPLE = 20
CSV_COLUMNS = ("index", "translate", "status", "certificate", "witness_type", "degree", "nodes")


@dataclass
class ProbeResult:
    p: int
    n: int
    k: int
    k_colors: int
    translate: GroupElement
    verdict: Verdict
    stats: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return self.verdict.status

    def row(self, index: int) -> dict:
        witness = self.verdict.witness or {}
        return {
            "index": index,
            "translate": self.translate.encode(),
            "status": self.status,
            "certificate": self.verdict.certificate,
            "witness_type": witness.get("type", ""),
            "degree": self.stats.get("degree", ""),
            "nodes": self.verdict.budget_spent.get("nodes", 0),
        }

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "k_colors": self.k_colors,
            "translate": self.translate.encode(),
            "stats": self.stats,
            **self.verdict.as_dict(),
        }


def translated_connection(p: int, n: int, k: int, g: GroupElement) -> FiniteSet:
    """((g + V(n, k)) u -(g + V(n, k))) minus 0."""
    ball = materialize(HammingBallSpec.V(p, n, min(k, 2**n))).translate(g)
    conn = ball.union(ball.negate()).without_zero()
    conn.description = f"+-({g.encode()} + V(p={p};n={n};k={k})) minus 0"
    return conn


def _translates(p: int, n: int, g_range: Union[str, int], rng: Optional[RandomStream], cap: int,
                sample: int) -> list[int]:
    total = group_order(p, n)
    if g_range == "all":
        return list(range(total))
    count = int(g_range)
    if count < 1:
        raise ValueError("sample size must be positive")
    if rng is None:
        raise ValueError("sampling translates needs a RandomStream")
    return [int(c) for c in rng.generator.choice(total, size=min(count, total), replace=False)]


def probe_odd_prime(p: int, n: int, k: int, k_colors: int, g_range: Union[str, int] = "all",
                    budget: int = DEFAULT_NODE_BUDGET, rng: Optional[RandomStream] = None,
                    cap: int = DEFAULT_ENUMERATION_CAP, sample: int = DEFAULT_SAMPLE,
                    translates: Optional[Sequence[GroupElement]] = None,
                    graph_cap: int = DEFAULT_ENUMERATION_CAP) -> list[ProbeResult]:
    """One chromatic decision per translate g of V(n, k).

    ``g_range`` is "all" or a sample size.  When the group is above ``cap``,
    "all" falls back to ``sample`` random translates with a warning.  Explicit
    ``translates`` override both.  ``graph_cap`` bounds each Cayley graph.
    p = 2 is accepted for cross-checks.
    """
    check_prime(p)
    if k_colors < 1:
        raise ValueError("k_colors must be at least 1")
    if not enumerable(p, n, graph_cap):
        raise ValueError(f"G_{p}^({n}) has more than {graph_cap} elements; the Cayley graphs cannot be built")
    if translates is not None:
        gs = [g if g.n == n else GroupElement.from_coeffs(p, n, _embed_coeffs(g, n)) for g in translates]
    else:
        if g_range == "all" and group_order(p, n) > cap:
            warnings.warn(f"g_range=all over {group_order(p, n)} translates exceeds the cap; sampling {sample}")
            g_range = sample
        codes = _translates(p, n, g_range, rng, cap, sample)
        gs = [GroupElement(p, n, c) for c in codes]
    out = []
    for g in gs:
        conn = translated_connection(p, n, k, g)
        graph = CayleyGraph(p, n, conn)
        verdict = chromatic_exceeds(graph, k_colors, budget)
        out.append(ProbeResult(p, n, k, k_colors, g, verdict, {"degree": graph.degree}))
    return out


def _embed_coeffs(g: GroupElement, n: int) -> list[int]:
    reps = 2 ** (n - g.n)
    return [c for c in g.coeffs for _ in range(reps)]


def verdict_counts(results: Sequence[ProbeResult]) -> dict[str, int]:
    out = {PROVEN: 0, REFUTED: 0, INCONCLUSIVE: 0}
    for r in results:
        out[r.status] += 1
    return out


def probe_table(results: Sequence[ProbeResult]) -> list[dict]:
    return [r.row(i) for i, r in enumerate(results)]


def table_csv(results: Sequence[ProbeResult]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in probe_table(results):
        writer.writerow(row)
    return buf.getvalue()


__all__ = [
    "ProbeResult",
    "probe_odd_prime",
    "translated_connection",
    "verdict_counts",
    "probe_table",
    "table_csv",
]
