"""Verification engines for difference avoidance and chromatic recurrence.

A set S is k-chromatically recurrent in G_p^(n) when every partition into k
classes has a class whose difference set meets S.  That is the statement
chi(Cayley(S minus 0)) > k, which is what :func:`chromatic_exceeds` decides.
Odd-p connection sets are closed under negation first; difference sets are
symmetric, so nothing is lost.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__
from .coloring import (
    ColoringSearch,
    bfs_two_coloring,
    f2_two_coloring,
    greedy_clique,
    is_proper_coloring,
    maximum_independent_set,
)
from .group import GroupElement, RandomStream, embed, group_order, random_element
from .kneser import KneserVerifier, lovasz_instance_size, verify_lovasz_claim
from .sets import (
    FiniteSet,
    HammingBallSpec,
    SetPredicate,
    codes_from_digits,
    digit_matrix,
    materialize,
    predicate,
)

PROVEN = "PROVEN"
REFUTED = "REFUTED"
INCONCLUSIVE = "INCONCLUSIVE"
STATUSES = (PROVEN, REFUTED, INCONCLUSIVE)

DEFAULT_NODE_BUDGET = 10**6
# explicit adjacency lists are built only below this many directed edges
EDGE_CAP = 2 * 10**7
# largest coloring written out vertex by vertex in a witness
WITNESS_VERTEX_CAP = 4096


@dataclass(frozen=True)
class Verdict:
    status: str
    parameters: dict = field(default_factory=dict)
    witness: Optional[dict] = None
    certificate: str = ""
    budget_spent: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status != INCONCLUSIVE and self.witness is None and not self.certificate:
            raise ValueError(f"{self.status} verdict needs a witness or a certificate")

    @property
    def proven(self) -> bool:
        return self.status == PROVEN

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "certificate": self.certificate,
            "parameters": self.parameters,
            "budget_spent": self.budget_spent,
            "library_version": __version__,
        }


def combine(verdicts: Sequence[Verdict]) -> str:
    """REFUTED beats INCONCLUSIVE beats PROVEN."""
    statuses = {v.status for v in verdicts}
    if REFUTED in statuses:
        return REFUTED
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return PROVEN


# -- code arithmetic ------------------------------------------------------------------

def add_codes(p: int, n: int, codes: np.ndarray, shift_codes: np.ndarray) -> np.ndarray:
    """Elementwise codes of x + y (broadcasting)."""
    codes = np.asarray(codes, dtype=np.int64)
    shift_codes = np.asarray(shift_codes, dtype=np.int64)
    if p == 2:
        return codes ^ shift_codes
    digits = digit_matrix(p, n)
    total = (digits[codes].astype(np.int64) + digits[shift_codes].astype(np.int64)) % p
    return codes_from_digits(p, total)


def sub_codes(p: int, n: int, codes: np.ndarray, other: np.ndarray) -> np.ndarray:
    """Elementwise codes of x - y (broadcasting)."""
    codes = np.asarray(codes, dtype=np.int64)
    other = np.asarray(other, dtype=np.int64)
    if p == 2:
        return codes ^ other
    digits = digit_matrix(p, n)
    total = (digits[codes].astype(np.int64) - digits[other].astype(np.int64)) % p
    return codes_from_digits(p, total)


def _as_finite(obj, n: int) -> FiniteSet:
    if isinstance(obj, FiniteSet) and obj.n == n:
        return obj
    return materialize(obj, n)


def _enc(p: int, n: int, code: int) -> str:
    return GroupElement(p, n, int(code)).encode()


# -- Cayley graphs --------------------------------------------------------------------

@dataclass
class CayleyGraph:
    """g ~ h iff g - h lies in the connection set (closed under negation, without 0)."""

    p: int
    n: int
    connection: FiniteSet

    def __post_init__(self) -> None:
        conn = self.connection
        if (conn.p, conn.n) != (self.p, self.n):
            conn = materialize(conn, self.n)
        if self.p != 2:
            conn = conn.union(conn.negate())
        self.connection = FiniteSet(self.p, self.n, conn.mask, conn.description).without_zero()
        self.connection.description = conn.description

    @classmethod
    def from_spec(cls, spec, n: Optional[int] = None) -> "CayleyGraph":
        fs = materialize(spec, n)
        return cls(fs.p, fs.n, fs)

    @property
    def order(self) -> int:
        return group_order(self.p, self.n)

    @property
    def degree(self) -> int:
        return self.connection.cardinality

    def generators(self) -> np.ndarray:
        return self.connection.codes()

    def neighbors(self, v: int) -> np.ndarray:
        return add_codes(self.p, self.n, np.int64(v), self.generators())

    def adjacency(self) -> list[np.ndarray]:
        if self.order * self.degree > EDGE_CAP:
            raise ValueError(f"Cayley graph with {self.order} vertices of degree {self.degree} is too large to list")
        gens = self.generators()
        return [add_codes(self.p, self.n, np.int64(v), gens) for v in range(self.order)]

    def describe(self) -> str:
        return f"Cayley(G_{self.p}^({self.n}), {self.connection.description})"


def _coloring_witness(p: int, n: int, coloring: Sequence[int], k: int) -> dict:
    if len(coloring) <= WITNESS_VERTEX_CAP:
        return {"type": "coloring", "colors": k, "coloring": [int(c) for c in coloring]}
    sizes = np.bincount(np.asarray(coloring), minlength=k).tolist()
    return {"type": "coloring", "colors": k, "class_sizes": sizes}


def chromatic_exceeds(graph: CayleyGraph, k: int, node_budget: int = DEFAULT_NODE_BUDGET,
                      method: str = "auto") -> Verdict:
    """Decide chi(graph) > k.

    ``method`` is "auto", "linear" (k = 2, p = 2 only), "bfs" (k = 2) or "search".
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    params = {"graph": graph.describe(), "vertices": graph.order, "degree": graph.degree, "colors": k}
    p, n = graph.p, graph.n
    gens = graph.generators()
    if gens.size == 0:
        return Verdict(REFUTED, params, {"type": "constant coloring", "colors": k},
                       "empty connection set: the graph has no edges")
    if k == 1:
        s = int(gens[0])
        return Verdict(PROVEN, params, {"type": "monochromatic pair", "pair": [_enc(p, n, 0), _enc(p, n, s)]},
                       "one class holds both endpoints of an edge")
    if k >= graph.order:
        return Verdict(REFUTED, params, {"type": "rainbow coloring", "coloring": "color(g) = code(g)"},
                       "every vertex gets its own color")
    if k == 2 and method in ("auto", "linear") and p == 2:
        res = f2_two_coloring([int(s) for s in gens])
        if res.solvable:
            phi = GroupElement(2, n, res.functional)
            return Verdict(REFUTED, params, {"type": "linear 2-coloring", "functional": phi.encode()},
                           "color(g) = <functional, g> mod 2 takes value 1 on every generator",
                           {"generators": int(gens.size)})
        relation = [_enc(2, n, gens[j]) for j in res.odd_relation]
        return Verdict(PROVEN, params, {"type": "odd relation", "generators": relation},
                       "an odd number of generators sums to 0, so every 2-coloring has a monochromatic edge",
                       {"generators": int(gens.size)})
    if k == 2 and method in ("auto", "bfs"):
        res = bfs_two_coloring(graph.order, graph.neighbors)
        if res.bipartite:
            return Verdict(REFUTED, params, _coloring_witness(p, n, res.coloring, 2), "BFS 2-coloring",
                           {"vertices": graph.order})
        cycle = [_enc(p, n, v) for v in res.odd_cycle]
        return Verdict(PROVEN, params, {"type": "odd cycle", "cycle": cycle}, "odd cycle found by BFS",
                       {"vertices": graph.order})
    if method == "linear":
        raise ValueError("the linear decision needs p = 2 and k = 2")
    adj = graph.adjacency()
    outcome = ColoringSearch(adj, k, node_budget=node_budget).run()
    spent = {"nodes": outcome.nodes}
    clique = [_enc(p, n, v) for v in outcome.clique]
    if outcome.colorable is None:
        return Verdict(INCONCLUSIVE, params, None, "node budget exhausted", spent)
    if outcome.colorable:
        assert is_proper_coloring(adj, outcome.coloring, k)
        return Verdict(REFUTED, params, _coloring_witness(p, n, outcome.coloring, k), "DSATUR search", spent)
    if len(outcome.clique) > k:
        return Verdict(PROVEN, params, {"type": "clique", "clique": clique}, "clique larger than k", spent)
    return Verdict(PROVEN, params, {"type": "exhausted search", "clique": clique},
                   "DSATUR backtracking exhausted every k-coloring", spent)


# -- difference avoidance ---------------------------------------------------------------

def difference_avoids(A: FiniteSet, S, chunk: int = 512) -> Verdict:
    """Exhaustive check that no ordered pair a, a2 of A has a - a2 in S."""
    p, n = A.p, A.n
    s_set = _as_finite(S, n)
    params = {"A": A.description, "S": s_set.description, "p": p, "n": n, "A_size": A.cardinality}
    codes = A.codes()
    smask = s_set.mask
    pairs = 0
    for start in range(0, codes.size, chunk):
        rows = codes[start:start + chunk]
        diffs = sub_codes(p, n, rows[:, None], codes[None, :])
        hits = smask[diffs]
        pairs += hits.size
        if hits.any():
            r, c = np.unravel_index(int(np.argmax(hits)), hits.shape)
            a, a2, d = int(rows[r]), int(codes[c]), int(diffs[r, c])
            return Verdict(REFUTED, params,
                           {"type": "difference", "a": _enc(p, n, a), "a2": _enc(p, n, a2), "difference": _enc(p, n, d)},
                           "a - a2 lies in S", {"pairs": pairs})
    return Verdict(PROVEN, params, None, f"exhaustive over {codes.size ** 2} ordered pairs", {"pairs": pairs})


SAMPLE_BATCH = 8192


class _Drawer:
    """Uniform draws from a predicate: its exact sampler, or rejection from the whole group."""

    def __init__(self, pred: SetPredicate, rng: RandomStream, burn_in: int):
        self.pred, self.rng, self.burn_in = pred, rng, burn_in
        self.draws = 0
        self.hits = 0
        self.method = "exact sampler" if pred.sampler is not None else "rejection"

    def draw(self) -> Optional[GroupElement]:
        if self.pred.sampler is not None:
            return self.pred.sampler(self.rng)
        while True:
            g = random_element(self.pred.p, self.pred.n, self.rng)
            self.draws += 1
            if g in self.pred:
                self.hits += 1
                return g
            if self.hits == 0 and self.draws >= self.burn_in:
                return None


def _as_predicate(obj) -> SetPredicate:
    if isinstance(obj, SetPredicate):
        return obj
    if isinstance(obj, FiniteSet):
        return SetPredicate(obj.p, obj.n, obj.__contains__, obj.description,
                            rows_fn=lambda d: obj.mask[codes_from_digits(obj.p, d)])
    return predicate(obj)


def _rows_at(rows: np.ndarray, n_from: int, n: int) -> np.ndarray:
    return rows if n_from == n else np.repeat(rows, 2 ** (n - n_from), axis=1)


def _row_element(p: int, n: int, row: np.ndarray) -> GroupElement:
    return GroupElement.from_coeffs(p, n, row)


def _batched(pred: SetPredicate) -> bool:
    return pred.batch_sampler is not None and pred.rows_fn is not None


def sampled_difference_check(A, S, trials: int, rng: RandomStream, burn_in: int = 10_000) -> Verdict:
    """Random search for a, a2 in A with a - a2 in S.  Never proves anything.

    When S can be sampled, each trial draws a in A and s in S and tests
    whether a - s is in A (a pair (a, a - s) with difference s).  Otherwise
    both members of the pair are drawn from A.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    a_pred, s_pred = _as_predicate(A), _as_predicate(S)
    if a_pred.p != s_pred.p:
        raise ValueError("A and S live in different groups")
    p, n = a_pred.p, max(a_pred.n, s_pred.n)
    mode = "translate" if s_pred.sampler is not None or s_pred.batch_sampler is not None else "pairs"
    params = {"A": a_pred.description, "S": s_pred.description, "p": p, "n": n, "trials": trials,
              "seed": rng.seed, "mode": mode}
    if a_pred.n == n and _batched(a_pred) and (_batched(s_pred) or (mode == "pairs" and s_pred.rows_fn)):
        params["A_draws"] = "exact batch sampler"
        return _batched_difference_check(a_pred, s_pred, trials, rng, params, mode)
    drawer = _Drawer(a_pred, rng, burn_in)
    params["A_draws"] = drawer.method
    for t in range(1, trials + 1):
        a = drawer.draw()
        if a is None:
            if drawer.method == "exact sampler":
                return Verdict(PROVEN, params, None, "A is empty", {"trials": t - 1})
            return Verdict(INCONCLUSIVE, params, {"type": "gave up", "draws": drawer.draws},
                           f"no member of A found in {drawer.draws} burn-in draws", {"trials": t - 1})
        a = _up(a, n)
        if mode == "translate":
            s = _up(s_pred.sampler(rng), n)
            a2 = a - s
            bad = a2 in a_pred
        else:
            a2 = drawer.draw()
            if a2 is None:
                return Verdict(INCONCLUSIVE, params, {"type": "gave up", "draws": drawer.draws},
                               "rejection sampler lost A", {"trials": t - 1})
            a2 = _up(a2, n)
            s = a - a2
            bad = s in s_pred
        if bad:
            return Verdict(REFUTED, params,
                           {"type": "difference", "a": a.encode(), "a2": a2.encode(), "difference": s.encode(),
                            "trial": t},
                           "a - a2 lies in S", {"trials": t, "draws": drawer.draws})
    return Verdict(INCONCLUSIVE, params, None, f"no violation in {trials} sampled pairs",
                   {"trials": trials, "violations": 0, "draws": drawer.draws})


def _batched_difference_check(a_pred: SetPredicate, s_pred: SetPredicate, trials: int, rng: RandomStream,
                              params: dict, mode: str) -> Verdict:
    p, n = a_pred.p, a_pred.n
    done = 0
    while done < trials:
        size = min(SAMPLE_BATCH, trials - done)
        a = a_pred.batch_sampler(rng, size)
        if a is None:
            return Verdict(PROVEN, params, None, "A is empty", {"trials": 0})
        if mode == "translate":
            s = _rows_at(s_pred.batch_sampler(rng, size), s_pred.n, n)
            a2 = ((a.astype(np.int16) - s) % p).astype(np.uint8)
            bad = a_pred.rows_fn(a2)
        else:
            a2 = a_pred.batch_sampler(rng, size)
            s = ((a.astype(np.int16) - a2) % p).astype(np.uint8)
            bad = s_pred.rows_fn(s) if s_pred.n == n else np.array([_row_element(p, n, r) in s_pred for r in s])
        if bad.any():
            j = int(np.argmax(bad))
            witness = {"type": "difference", "a": _row_element(p, n, a[j]).encode(),
                       "a2": _row_element(p, n, a2[j]).encode(),
                       "difference": _row_element(p, n, (a[j].astype(np.int16) - a2[j]) % p).encode(),
                       "trial": done + j + 1}
            return Verdict(REFUTED, params, witness, "a - a2 lies in S", {"trials": done + j + 1})
        done += size
    return Verdict(INCONCLUSIVE, params, None, f"no violation in {trials} sampled pairs",
                   {"trials": trials, "violations": 0})


def sampled_sum_containment(A, S, target, trials: int, rng: RandomStream) -> Verdict:
    """Random search for a in A, s in S with a + s outside ``target``.

    All three arguments need batch samplers or row membership; the result is
    REFUTED with the offending triple or INCONCLUSIVE.
    """
    a_pred, s_pred, t_pred = _as_predicate(A), _as_predicate(S), _as_predicate(target)
    p, n = a_pred.p, t_pred.n
    params = {"A": a_pred.description, "S": s_pred.description, "target": t_pred.description,
              "p": p, "n": n, "trials": trials, "seed": rng.seed}
    done = 0
    while done < trials:
        size = min(SAMPLE_BATCH, trials - done)
        a = a_pred.batch_sampler(rng, size)
        if a is None:
            return Verdict(PROVEN, params, None, "A is empty", {"trials": 0})
        a = _rows_at(a, a_pred.n, n)
        s = _rows_at(s_pred.batch_sampler(rng, size), s_pred.n, n)
        total = ((a.astype(np.int16) + s) % p).astype(np.uint8)
        bad = ~t_pred.rows_fn(total)
        if bad.any():
            j = int(np.argmax(bad))
            witness = {"type": "sum outside target", "a": _row_element(p, n, a[j]).encode(),
                       "s": _row_element(p, n, s[j]).encode(), "sum": _row_element(p, n, total[j]).encode(),
                       "trial": done + j + 1}
            return Verdict(REFUTED, params, witness, "a + s misses the target", {"trials": done + j + 1})
        done += size
    return Verdict(INCONCLUSIVE, params, None, f"no violation in {trials} sampled pairs",
                   {"trials": trials, "violations": 0})


def _up(g: GroupElement, n: int) -> GroupElement:
    return g if g.n == n else embed(g, n)


# -- named chromatic claims ------------------------------------------------------------------

def hamming_connection(p: int, n: int, k: int, center: Optional[GroupElement] = None) -> FiniteSet:
    spec = HammingBallSpec(p, n, min(k, 2**n), center)
    return materialize(spec)


def verify_poincare(p: int, n: int, k: int, relax: bool = False,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> Verdict:
    """Every k-partition has a class with a nonzero difference in U(n, 2k+2)."""
    if not relax and not k < n:
        raise ValueError(f"the statement needs k < n (got k={k}, n={n}); pass relax=True to run anyway")
    graph = CayleyGraph(p, n, hamming_connection(p, n, 2 * k + 2))
    inner = chromatic_exceeds(graph, k, node_budget)
    params = {"p": p, "n": n, "k": k, "radius": 2 * k + 2, "relaxed": relax and not k < n}
    return Verdict(inner.status, params, inner.witness, inner.certificate, inner.budget_spent)


def verify_translate_claim(n: int, k: int, g: GroupElement, node_budget: int = DEFAULT_NODE_BUDGET) -> Verdict:
    """Every k-partition of G_2^(n) has a class whose differences meet (g + U(n, 3k+3)) minus 0."""
    radius = 3 * k + 3
    params = {"n": n, "k": k, "translate": _up(g, n).encode(), "radius": radius}
    if radius > 2**n:
        # the ball is the whole group, so it contains U(n, 2k+2)
        inner = verify_poincare(2, n, k, relax=True, node_budget=node_budget)
        params["reduced_to"] = "U(n, 2k+2) case"
        return Verdict(inner.status, params, inner.witness, inner.certificate, inner.budget_spent)
    conn = hamming_connection(2, n, radius, _up(g, n))
    inner = chromatic_exceeds(CayleyGraph(2, n, conn), k, node_budget)
    return Verdict(inner.status, params, inner.witness, inner.certificate, inner.budget_spent)


LOVASZ_VERTEX_CAP = 5000


def verify_lovasz(r: int, k: int, node_budget: int = 2 * 10**6, verifier=None) -> Verdict:
    """The r-subsets of {1..2r+k}, split into k classes, always put a disjoint pair in one class."""
    size = lovasz_instance_size(r, k)
    if size > LOVASZ_VERTEX_CAP:
        raise ValueError(f"C({2 * r + k},{r}) = {size} exceeds the vertex cap {LOVASZ_VERTEX_CAP}")
    out = verify_lovasz_claim(r, k, node_budget, verifier)
    params = {"r": r, "k": k, "ground_set": 2 * r + k, "vertices": size}
    witness = {"type": "claims", "claims": out.claims}
    if out.coloring is not None:
        witness = {"type": "coloring", **out.coloring}
    certificate = {
        PROVEN: ("Kneser graph has no k-coloring (clique or pigeonhole on class capacities)" if out.route == "full"
                 else "stable Kneser subgraph has no k-coloring (induction on covers)"),
        REFUTED: "proper k-coloring of the Kneser graph",
        INCONCLUSIVE: "node budget exhausted",
    }[out.status]
    return Verdict(out.status, params, witness, certificate, {"nodes": out.nodes})


def lovasz_census(max_vertices: int = 500, node_budget: int = 2 * 10**6, r_max: int = 64) -> list[Verdict]:
    """verify_lovasz on every (r, k) with C(2r + k, r) <= max_vertices; one shared verifier per r."""
    out = []
    for r in range(1, r_max + 1):
        if lovasz_instance_size(r, 1) > max_vertices:
            break
        verifier = KneserVerifier(node_budget)
        k = 1
        while lovasz_instance_size(r, k) <= max_vertices:
            out.append(verify_lovasz(r, k, node_budget, verifier))
            k += 1
    return out


# -- avoiding sets --------------------------------------------------------------------

@dataclass
class DensityInterval:
    lower: Fraction
    upper: Fraction
    witness_size: int
    upper_method: str
    witness: Optional[FiniteSet] = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "lower": str(self.lower),
            "upper": str(self.upper),
            "lower_float": float(self.lower),
            "upper_float": float(self.upper),
            "witness_size": self.witness_size,
            "upper_method": self.upper_method,
        }


def _greedy_independent(graph: CayleyGraph, order: Sequence[int], start: Optional[np.ndarray] = None) -> np.ndarray:
    gens = graph.generators()
    chosen = np.zeros(graph.order, dtype=bool)
    blocked = np.zeros(graph.order, dtype=bool)
    if start is not None:
        chosen |= start
        for v in np.flatnonzero(start):
            blocked[add_codes(graph.p, graph.n, np.int64(v), gens)] = True
    for v in order:
        if not chosen[v] and not blocked[v]:
            chosen[v] = True
            blocked[add_codes(graph.p, graph.n, np.int64(v), gens)] = True
    return chosen


def _local_search(graph: CayleyGraph, chosen: np.ndarray, rounds: int) -> np.ndarray:
    """(1, 2)-swaps: drop one member, add two vertices whose only chosen neighbor it was."""
    gens = graph.generators()
    p, n = graph.p, graph.n
    chosen = chosen.copy()
    for _ in range(rounds):
        conflicts = np.zeros(graph.order, dtype=np.int64)
        for v in np.flatnonzero(chosen):
            np.add.at(conflicts, add_codes(p, n, np.int64(v), gens), 1)
        improved = False
        for v in np.flatnonzero(chosen):
            nbrs = add_codes(p, n, np.int64(v), gens)
            free = [int(u) for u in nbrs if conflicts[u] == 1 and not chosen[u]]
            if len(free) < 2:
                continue
            free_set = set(free)
            for u in free:
                others = free_set - set(add_codes(p, n, np.int64(u), gens).tolist()) - {u}
                if others:
                    w = min(others)
                    chosen[v] = False
                    chosen[u] = chosen[w] = True
                    improved = True
                    break
            if improved:
                break
        if not improved:
            break
    return chosen


def max_avoiding_density(S, n: Optional[int] = None, node_budget: int = DEFAULT_NODE_BUDGET,
                         seed_set: Optional[FiniteSet] = None, exact_cap: int = 256,
                         restarts: int = 4, seed: int = 0) -> DensityInterval:
    """Bounds on the largest density of a set A with (A - A) meeting S only in 0."""
    s_set = materialize(S, n)
    graph = CayleyGraph(s_set.p, s_set.n, s_set)
    total = graph.order
    rng = random.Random(seed)
    start = None
    if seed_set is not None:
        seed_set = _as_finite(seed_set, graph.n)
        if difference_avoids(seed_set, graph.connection).proven:
            start = seed_set.mask
    candidates = [_greedy_independent(graph, range(total), start)]
    for _ in range(restarts):
        order = list(range(total))
        rng.shuffle(order)
        candidates.append(_greedy_independent(graph, order, start))
    best = max(candidates, key=lambda m: int(m.sum()))
    if total <= 4096:
        best = _local_search(graph, best, rounds=20)
    lower_size = int(best.sum())
    upper, method = Fraction(1), "trivial"
    if total <= exact_cap:
        mis, _nodes = maximum_independent_set(graph.adjacency(), node_budget)
        if mis is not None:
            upper, method = Fraction(len(mis), total), "exact maximum independent set"
            if len(mis) > lower_size:
                best = np.zeros(total, dtype=bool)
                best[mis] = True
                lower_size = len(mis)
    if method == "trivial" and total * graph.degree <= EDGE_CAP:
        clique = greedy_clique(graph.adjacency())
        # vertex-transitive graphs satisfy alpha * omega <= |V|
        upper, method = Fraction(1, max(1, len(clique))), f"clique bound (clique of size {len(clique)})"
    witness = FiniteSet(graph.p, graph.n, best, f"avoiding set for {s_set.description}")
    return DensityInterval(Fraction(lower_size, total), upper, lower_size, method, witness)


__all__ = [
    "PROVEN",
    "REFUTED",
    "INCONCLUSIVE",
    "Verdict",
    "CayleyGraph",
    "chromatic_exceeds",
    "difference_avoids",
    "sampled_difference_check",
    "sampled_sum_containment",
    "verify_poincare",
    "verify_translate_claim",
    "verify_lovasz",
    "lovasz_census",
    "max_avoiding_density",
    "DensityInterval",
]
