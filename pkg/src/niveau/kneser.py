"""Exact verification that r-subsets of {1..2r+k} admit no k-coloring without a disjoint monochromatic pair.

Equivalently the Kneser graph K(2r+k, r) (vertices r-sets, edges disjoint
pairs) has chromatic number > k.  Claims have the form "K(N, r) has no proper
c-coloring", or the same for the stable Kneser graph SG(N, r) (r-sets with
no two cyclically consecutive elements).  SG(N, r) is an induced subgraph of
K(N, r), so non-colorability of SG(N, r) suffices.

Each claim is reduced by covers.  Suppose a color class C has a cover T
(every member meets T, |T| = t).  The vertices avoiding T contain a copy of
the same kind of graph on N - t points: for K this is exact, and for SG
relabel [N] minus T in cyclic order (a set stable in the shorter cycle is
stable in the longer one).  That copy is colored by the other c - 1 classes.
So once the (N - t, c - 1) claim is proven, every color class of a
hypothetical c-coloring must avoid covers of size t.  Smaller claims are
proven first by the same procedure.

Classes without small covers are also small.  A color class is an
intersecting family; if no set of T points meets all its members then it has
at most r^(T+1) * C(N-T-1, r-T-1) members: pick a member and a point x_1 of
it (r choices) that the member in question contains; {x_1} is not a cover, so
some member avoids it and our member meets that one in a new point x_2 (r
choices); after T+1 rounds every member contains one of at most r^(T+1)
chosen (T+1)-sets.  On the full graph the exact maximum is also computed by
search (cover_free_capacity).  When c times the capacity is below the vertex
count the claim follows by pigeonhole.

Full-graph claims are settled by clique, explicit coloring or pigeonhole
only; stable-graph claims fall back to DSATUR search with the covers
enforced by propagation.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .coloring import ColoringSearch, greedy_clique, is_proper_coloring, maximum_independent_set

STABLE = "stable"
FULL = "full"
# exact capacities are searched only on graphs up to this many vertices
CAPACITY_VERTEX_CAP = 1000
# and with at most this many nodes, so the stable search keeps most of the budget
CAPACITY_NODE_CAP = 250_000


def kneser_graph(N: int, r: int, stable: bool = False) -> tuple[list[int], list[list[int]]]:
    """Vertices (ground-set bitmasks in lexicographic order) and adjacency lists."""
    labels = []
    for combo in itertools.combinations(range(N), r):
        if stable and N > 1 and any((x + 1) % N in combo for x in combo):
            continue
        labels.append(sum(1 << x for x in combo))
    adj = [[j for j, w in enumerate(labels) if not v & w] for v in labels]
    return labels, adj


def class_capacity(N: int, r: int, T: int) -> int:
    """Upper bound on an intersecting family of r-subsets of [N] with no cover of size <= T."""
    if T >= r:
        return 0
    return r ** (T + 1) * comb(N - T - 1, r - T - 1)


def cover_free_capacity(N: int, r: int, T: int, node_budget: int = 10**6) -> tuple[Optional[int], int]:
    """Exact maximum of an intersecting family of r-subsets of [N] with no cover of size <= T.

    Returns (value, nodes); value is None when the budget runs out.  The
    symmetric group is transitive on r-sets, so the family may be assumed to
    contain {0..r-1}.  The search branches on a pending T-set that still
    meets every chosen member, over the candidates avoiding it, and finishes
    with an exact maximum independent set once no T-set covers the choice.
    """
    if T >= r:
        return 0, 0
    if T <= 0:
        raise ValueError("T must be positive")
    labels = [sum(1 << x for x in c) for c in itertools.combinations(range(N), r)]
    nv = len(labels)
    meets = []
    for a in labels:
        m = 0
        for j, b in enumerate(labels):
            if a & b:
                m |= 1 << j
        meets.append(m)
    first = labels.index((1 << r) - 1)
    best = [0]
    nodes = [0]

    def bits(mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def bound(cand: int) -> int:
        # disjoint sets are pairwise adjacent: each greedy clique holds at most one member
        count = 0
        rest = cand
        while rest:
            count += 1
            v = rest.bit_length() - 1
            pick = 1 << v
            cl = rest & ~meets[v]
            while cl:
                u = cl.bit_length() - 1
                pick |= 1 << u
                cl &= ~meets[u]
            rest &= ~pick
        return count

    def finish(cand: int) -> int:
        vs = bits(cand)
        pos = {v: i for i, v in enumerate(vs)}
        adj = [[pos[u] for u in vs if not meets[v] >> u & 1] for v in vs]
        found, spent = maximum_independent_set(adj, max(1, node_budget - nodes[0]))
        nodes[0] += spent
        if found is None:
            raise TimeoutError
        return len(found)

    def rec(size: int, cand: int, pending: list[int]) -> None:
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise TimeoutError
        if size + bound(cand) <= best[0]:
            return
        if not pending:
            best[0] = max(best[0], size + finish(cand))
            return
        options = None
        for U in pending:
            avoid = [v for v in bits(cand) if not labels[v] & U]
            if options is None or len(avoid) < len(options):
                options = avoid
            if not avoid:
                return
        for v in options:
            rec(size + 1, cand & meets[v] & ~(1 << v), [U for U in pending if U & labels[v]])
            cand &= ~(1 << v)
            if size + bound(cand) <= best[0]:
                return

    covers = [sum(1 << x for x in c) for c in itertools.combinations(range(N), T)]
    try:
        rec(1, meets[first] & ~(1 << first), [U for U in covers if U & labels[first]])
    except TimeoutError:
        return None, nodes[0]
    return best[0], nodes[0]


@dataclass
class ClaimResult:
    """Outcome of "K(N, r) (or SG(N, r)) has no proper c-coloring"."""

    r: int
    N: int
    colors: int
    proven: Optional[bool]  # True proven, False a coloring exists, None undecided
    nodes: int = 0
    method: str = ""
    cover_sizes: list[int] = field(default_factory=list)
    coloring: Optional[list[int]] = None
    clique: list[int] = field(default_factory=list)
    labels: list[int] = field(default_factory=list)
    graph: str = STABLE
    capacity: Optional[int] = None

    @property
    def key(self) -> tuple[int, int, int, str]:
        return (self.r, self.N, self.colors, self.graph)

    def as_dict(self) -> dict:
        out = {
            "r": self.r,
            "ground_set": self.N,
            "colors": self.colors,
            "graph": self.graph,
            "proven": self.proven,
            "nodes": self.nodes,
            "method": self.method,
            "excluded_cover_sizes": self.cover_sizes,
        }
        if self.capacity is not None:
            out["class_capacity"] = self.capacity
        if self.clique:
            out["clique"] = [_subset(self.labels[v]) for v in self.clique]
        return out


def _subset(mask: int) -> list[int]:
    return [x + 1 for x in range(mask.bit_length()) if mask >> x & 1]


class KneserVerifier:
    """Memoized prover for Kneser non-colorability claims.

    The node budget applies per top-level call of verify_lovasz_claim.
    """

    def __init__(self, node_budget: int = 2 * 10**6):
        self.budget = node_budget
        self.spent = 0
        self.limit = node_budget
        self.memo: dict[tuple[int, int, int, str], ClaimResult] = {}
        self.capacities: dict[tuple[int, int, int], tuple[Optional[int], int]] = {}

    def claim(self, r: int, N: int, colors: int, graph: str = STABLE) -> ClaimResult:
        key = (r, N, colors, graph)
        if key in self.memo:
            return self.memo[key]
        result = self._claim(r, N, colors, graph)
        if result.proven is not None or graph == FULL:
            self.memo[key] = result
        return result

    def capacity(self, N: int, r: int, T: int) -> tuple[Optional[int], int]:
        key = (N, r, T)
        if key not in self.capacities:
            remaining = min(CAPACITY_NODE_CAP, max(0, self.limit - self.spent))
            value, spent = cover_free_capacity(N, r, T, remaining)
            self.spent += spent
            self.capacities[key] = (value, spent)
        return self.capacities[key]

    def _claim(self, r: int, N: int, colors: int, graph: str) -> ClaimResult:
        def result(proven, method="", **kw) -> ClaimResult:
            return ClaimResult(r, N, colors, proven, method=method, graph=graph, **kw)

        if N < 2 * r:
            # no disjoint pair at all: any single color works (or no vertices)
            return result(False, "no edges")
        if colors <= 0:
            return result(True, "nonempty graph")
        full = graph == FULL
        if full and colors < N // r:
            # N // r pairwise disjoint blocks
            labels = [sum(1 << (i * r + x) for x in range(r)) for i in range(N // r)]
            return result(True, "clique", clique=list(range(len(labels))), labels=labels)
        labels, adj = kneser_graph(N, r, stable=not full)
        if colors >= N - 2 * r + 2:
            coloring = min_element_coloring(labels, N, r)
            assert is_proper_coloring(adj, coloring, colors)
            return result(False, "min-element coloring", coloring=coloring, labels=labels)
        if not full:
            clique = greedy_clique(adj)
            if len(clique) > colors:
                return result(True, "clique", clique=clique, labels=labels)
        cover_sizes = []
        for t in range(1, min(N - 2 * r, r) + 1):
            sub = self.claim(r, N - t, colors - 1, graph)
            if sub.proven is not True:
                break
            cover_sizes.append(t)
        if cover_sizes:
            T = max(cover_sizes)
            cap = class_capacity(N, r, T)
            if colors * cap >= len(labels) and full and len(labels) <= CAPACITY_VERTEX_CAP:
                exact, _ = self.capacity(N, r, T)
                if exact is not None:
                    cap = min(cap, exact)
            if colors * cap < len(labels):
                return result(True, f"capacity: {colors} classes of at most {cap} vertices",
                              cover_sizes=cover_sizes, labels=labels, capacity=cap)
        if full:
            return result(None, "pigeonhole bound not reached", cover_sizes=cover_sizes)
        covers = [sum(1 << x for x in T) for t in cover_sizes for T in itertools.combinations(range(N), t)]
        remaining = max(0, self.limit - self.spent)
        outcome = ColoringSearch(adj, colors, node_budget=remaining, labels=labels, covers=covers).run()
        self.spent += outcome.nodes
        method = "search" + (f" excluding covers of size <= {max(cover_sizes)}" if cover_sizes else "")
        if outcome.colorable is None:
            return ClaimResult(r, N, colors, None, outcome.nodes, method, cover_sizes, labels=labels)
        if outcome.colorable:
            assert is_proper_coloring(adj, outcome.coloring, colors)
            return ClaimResult(r, N, colors, False, outcome.nodes, method, cover_sizes,
                               coloring=outcome.coloring, labels=labels)
        return ClaimResult(r, N, colors, True, outcome.nodes, method, cover_sizes,
                           clique=outcome.clique, labels=labels)


@dataclass
class LovaszOutcome:
    r: int
    k: int
    status: str  # PROVEN / REFUTED / INCONCLUSIVE
    nodes: int
    claims: list[dict]
    coloring: Optional[dict] = None
    seconds: float = 0.0
    route: str = ""


def lovasz_instance_size(r: int, k: int) -> int:
    return comb(2 * r + k, r)


def verify_lovasz_claim(r: int, k: int, node_budget: int = 2 * 10**6,
                        verifier: Optional[KneserVerifier] = None) -> LovaszOutcome:
    """Decide whether every k-coloring of the r-subsets of [2r+k] has a monochromatic disjoint pair.

    The full-graph pigeonhole route is tried first; the stable-graph search
    handles what it leaves open.
    """
    if r < 1 or k < 1:
        raise ValueError("r and k must be positive")
    verifier = verifier or KneserVerifier(node_budget)
    start = time.perf_counter()
    before = verifier.spent
    verifier.limit = verifier.spent + verifier.budget
    N = 2 * r + k
    result = verifier.claim(r, N, k, FULL)
    if result.proven is not True:
        result = verifier.claim(r, N, k, STABLE)
    claims = [c.as_dict() for c in _dependencies(verifier, result)]
    coloring = None
    if result.proven is True:
        status = "PROVEN"
    elif result.proven is None:
        status = "INCONCLUSIVE"
    else:
        # the stable subgraph gave no certificate; only a coloring of the full graph refutes
        labels, adj = kneser_graph(N, r)
        remaining = max(0, verifier.limit - verifier.spent)
        outcome = ColoringSearch(adj, k, node_budget=remaining).run()
        verifier.spent += outcome.nodes
        claims.append({"r": r, "ground_set": N, "colors": k, "graph": FULL,
                       "proven": None if outcome.colorable is None else not outcome.colorable,
                       "nodes": outcome.nodes, "method": "search"})
        if outcome.colorable is None:
            status = "INCONCLUSIVE"
        elif outcome.colorable:
            assert is_proper_coloring(adj, outcome.coloring, k)
            status = "REFUTED"
            coloring = {"classes": _classes(labels, outcome.coloring, k)}
        else:
            status = "PROVEN"
    return LovaszOutcome(r, k, status, verifier.spent - before, claims, coloring,
                         time.perf_counter() - start, result.graph)


def min_element_coloring(labels: list[int], N: int, r: int) -> list[int]:
    """Color a set by its least element, lumping the last 2r - 1 points together: N - 2r + 2 colors."""
    top = N - 2 * r + 1
    return [min((m & -m).bit_length() - 1, top) for m in labels]


def _dependencies(verifier: KneserVerifier, result: ClaimResult) -> list[ClaimResult]:
    seen: dict[tuple[int, int, int, str], ClaimResult] = {}
    stack = [result]
    while stack:
        c = stack.pop()
        if c.key in seen:
            continue
        seen[c.key] = c
        for t in c.cover_sizes:
            sub = verifier.memo.get((c.r, c.N - t, c.colors - 1, c.graph))
            if sub is not None:
                stack.append(sub)
    return sorted(seen.values(), key=lambda c: (c.graph, c.N, c.colors))


def _classes(labels: list[int], coloring: list[int], k: int) -> list[list[list[int]]]:
    out: list[list[list[int]]] = [[] for _ in range(k)]
    for v, c in enumerate(coloring):
        out[c].append(_subset(labels[v]))
    return out
