"""Exact graph-coloring engines.

* :func:`f2_two_coloring` decides 2-colorability of a Cayley graph on F_2^N
  by solving phi(s) = 1 for every generator s (bipartite iff solvable).
* :func:`bfs_two_coloring` is the generic bipartiteness test.
* :class:`ColoringSearch` is DSATUR backtracking with a greedy clique
  precoloring, forward checking and a node budget.  It optionally takes
  vertex labels (ground-set bitmasks) and a list of forbidden covers: a
  color class may not consist solely of labels meeting one cover.  The
  Kneser verifier uses this to discard colorings that an induction
  hypothesis already rules out.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence


# -- k = 2 over F_2 ---------------------------------------------------------------

@dataclass
class F2Result:
    solvable: bool
    functional: Optional[int] = None  # bitmask c with phi(x) = popcount(c & x) mod 2
    odd_relation: list[int] = field(default_factory=list)  # generator indices summing to 0, odd count


def f2_two_coloring(generators: Sequence[int]) -> F2Result:
    """Solve <c, s> = 1 over F_2 for every generator s (packed bitvectors)."""
    # basis rows keyed by pivot bit: (vector, rhs, combination of generator indices as int bitmask)
    basis: dict[int, tuple[int, int, int]] = {}
    for idx, s in enumerate(generators):
        vec, rhs, combo = s, 1, 1 << idx
        while vec:
            pivot = vec.bit_length() - 1
            if pivot not in basis:
                basis[pivot] = (vec, rhs, combo)
                break
            bvec, brhs, bcombo = basis[pivot]
            vec ^= bvec
            rhs ^= brhs
            combo ^= bcombo
        if vec == 0 and rhs == 1:
            members = [j for j in range(combo.bit_length()) if combo >> j & 1]
            return F2Result(False, odd_relation=members)
    # back substitution: choose free variables 0
    c = 0
    for pivot in sorted(basis):
        vec, rhs, _ = basis[pivot]
        rest = vec & ~(1 << pivot)
        value = rhs ^ ((c & rest).bit_count() & 1)
        if value:
            c |= 1 << pivot
    return F2Result(True, functional=c)


# -- generic bipartiteness ------------------------------------------------------------

@dataclass
class BipartiteResult:
    bipartite: bool
    coloring: Optional[list[int]] = None
    odd_cycle: list[int] = field(default_factory=list)


def bfs_two_coloring(num_vertices: int, neighbors) -> BipartiteResult:
    """``neighbors(v)`` yields adjacent vertex ids; returns a 2-coloring or an odd closed walk."""
    color = [-1] * num_vertices
    parent = [-1] * num_vertices
    for root in range(num_vertices):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in neighbors(v):
                u = int(u)
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    parent[u] = v
                    queue.append(u)
                elif color[u] == color[v]:
                    return BipartiteResult(False, odd_cycle=_odd_cycle(parent, u, v))
    return BipartiteResult(True, coloring=color)


def _odd_cycle(parent: list[int], u: int, v: int) -> list[int]:
    def path(x: int) -> list[int]:
        out = [x]
        while parent[out[-1]] >= 0:
            out.append(parent[out[-1]])
        return out

    pu, pv = path(u), path(v)
    on_pv = {x: idx for idx, x in enumerate(pv)}
    for idx, x in enumerate(pu):
        if x in on_pv:
            return pu[: idx + 1] + list(reversed(pv[: on_pv[x]]))
    raise AssertionError("BFS trees share their root")


# -- cliques and independent sets ---------------------------------------------------

def greedy_clique(adj: Sequence[Sequence[int]], starts: int = 8) -> list[int]:
    """A maximal clique grown greedily from a few high-degree start vertices."""
    nv = len(adj)
    if nv == 0:
        return []
    order = sorted(range(nv), key=lambda v: (-len(adj[v]), v))[:starts]
    adj_sets = {}

    def nbrs(v: int) -> set[int]:
        if v not in adj_sets:
            adj_sets[v] = set(adj[v])
        return adj_sets[v]

    by_degree = sorted(range(nv), key=lambda v: (-len(adj[v]), v))
    best: list[int] = []
    for s in order:
        clique = [s]
        cand = set(nbrs(s))
        if nv <= 150:
            # pick the candidate keeping the most candidates alive
            while cand:
                v = min(cand, key=lambda u: (-len(cand & nbrs(u)), u))
                clique.append(v)
                cand &= nbrs(v)
        else:
            for v in by_degree:
                if not cand:
                    break
                if v in cand:
                    clique.append(v)
                    cand &= nbrs(v)
        if len(clique) > len(best):
            best = clique
    return best


def maximum_independent_set(adj: Sequence[Sequence[int]], node_budget: int = 10**6) -> tuple[Optional[list[int]], int]:
    """Exact maximum independent set by branch and bound on bitsets.

    Returns (set, nodes); the set is None if the budget ran out.
    """
    nv = len(adj)
    nbr = [0] * nv
    for v in range(nv):
        for u in adj[v]:
            nbr[v] |= 1 << int(u)
    best = [0, 0]  # size, bitmask
    nodes = [0]

    def greedy_cover_bound(cand: int) -> int:
        # color the complement greedily: cliques in the complement bound independent sets
        bound = 0
        rest = cand
        while rest:
            bound += 1
            cls = rest
            pick = 0
            while cls:
                v = cls.bit_length() - 1
                pick |= 1 << v
                cls &= ~(1 << v)
                cls &= nbr[v]  # next vertex of the clique must be adjacent
            rest &= ~pick
        return bound

    def rec(chosen: int, size: int, cand: int) -> None:
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise TimeoutError
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + greedy_cover_bound(cand) <= best[0]:
            return
        v = cand.bit_length() - 1
        rec(chosen | (1 << v), size + 1, cand & ~nbr[v] & ~(1 << v))
        rec(chosen, size, cand & ~(1 << v))

    try:
        rec(0, 0, (1 << nv) - 1)
    except TimeoutError:
        return None, nodes[0]
    return [v for v in range(nv) if best[1] >> v & 1], nodes[0]


# -- DSATUR backtracking --------------------------------------------------------------

@dataclass
class SearchOutcome:
    colorable: Optional[bool]  # None when the budget ran out
    coloring: Optional[list[int]] = None
    nodes: int = 0
    clique: list[int] = field(default_factory=list)


class ColoringSearch:
    """Exact k-colorability by DSATUR backtracking.

    Colors are introduced in order (a new color is always the smallest unused
    one), which removes the k! relabelling symmetry.  Ties in vertex choice go
    to the larger degree, then the smaller vertex id.
    """

    def __init__(self, adj: Sequence[Sequence[int]], k: int, node_budget: int = 10**6,
                 labels: Optional[Sequence[int]] = None, covers: Sequence[int] = ()):
        self.adj = [list(map(int, a)) for a in adj]
        self.k = k
        self.budget = node_budget
        self.nv = len(self.adj)
        self.deg = [len(a) for a in self.adj]
        self.covers = list(covers)
        if self.covers and labels is None:
            raise ValueError("cover exclusion needs vertex labels")
        self.labels = list(labels) if labels is not None else None
        # avoid[j] = bitmask of vertices whose label misses cover j
        self.avoid = [
            sum(1 << v for v, lab in enumerate(self.labels) if not lab & cover) for cover in self.covers
        ] if self.covers else []

    def run(self) -> SearchOutcome:
        k, nv = self.k, self.nv
        if nv == 0:
            return SearchOutcome(True, [], 0)
        if k <= 0:
            return SearchOutcome(False, None, 0)
        clique = greedy_clique(self.adj)
        if len(clique) > k:
            return SearchOutcome(False, None, 0, clique)
        self.cnt = [[0] * k for _ in range(nv)]
        self.sat = [0] * nv
        self.col = [-1] * nv
        self.nodes = 0
        for c, v in enumerate(clique):
            self._assign(v, c)
        try:
            ok = self._rec(len(clique), len(clique))
        except TimeoutError:
            return SearchOutcome(None, None, self.nodes, clique)
        return SearchOutcome(ok, list(self.col) if ok else None, self.nodes, clique)

    def _assign(self, v: int, c: int) -> None:
        self.col[v] = c
        cnt, sat = self.cnt, self.sat
        for u in self.adj[v]:
            cu = cnt[u]
            cu[c] += 1
            if cu[c] == 1:
                sat[u] += 1

    def _unassign(self, v: int, c: int) -> None:
        cnt, sat = self.cnt, self.sat
        for u in self.adj[v]:
            cu = cnt[u]
            cu[c] -= 1
            if cu[c] == 0:
                sat[u] -= 1
        self.col[v] = -1

    def _propagate(self) -> Optional[list[tuple[int, int]]]:
        """None on contradiction, else forced (vertex, color) pairs."""
        k = self.k
        members = [0] * k
        cands = [0] * k
        for v in range(self.nv):
            c0 = self.col[v]
            if c0 >= 0:
                members[c0] |= 1 << v
                continue
            if self.sat[v] >= k:
                return None
            cv = self.cnt[v]
            bit = 1 << v
            for c in range(k):
                if cv[c] == 0:
                    cands[c] |= bit
        forced = []
        for c in range(k):
            m, cs = members[c], cands[c]
            for av in self.avoid:
                if m & av:
                    continue
                x = cs & av
                if not x:
                    return None
                if x & (x - 1) == 0:
                    forced.append((x.bit_length() - 1, c))
        return forced

    def _rec(self, ncol: int, used: int) -> bool:
        if ncol == self.nv:
            return True
        self.nodes += 1
        if self.nodes > self.budget:
            raise TimeoutError
        applied: list[tuple[int, int]] = []
        ok = True
        if self.avoid:
            while True:
                forced = self._propagate()
                if forced is None:
                    ok = False
                    break
                progressed = False
                for v, c in forced:
                    if self.col[v] < 0 and self.cnt[v][c] == 0:
                        self._assign(v, c)
                        applied.append((v, c))
                        progressed = True
                    elif self.col[v] != c:
                        ok = False
                        break
                if not ok or not progressed:
                    break
        result = False
        if ok:
            done = ncol + len(applied)
            if done == self.nv:
                result = True
            else:
                result = self._branch(done, used)
        if not result:
            for v, c in reversed(applied):
                self._unassign(v, c)
        return result

    def _branch(self, done: int, used: int) -> bool:
        best, best_sat, best_deg = -1, -1, -1
        col, sat, deg = self.col, self.sat, self.deg
        for v in range(self.nv):
            if col[v] < 0:
                s = sat[v]
                if s > best_sat or (s == best_sat and deg[v] > best_deg):
                    best, best_sat, best_deg = v, s, deg[v]
        v = best
        if best_sat >= self.k:
            return False
        cv = self.cnt[v]
        choices = [c for c in range(used) if cv[c] == 0]
        if used < self.k:
            choices.append(used)
        for c in choices:
            self._assign(v, c)
            # forward check: a neighbor with no color left means a dead end
            if all(col[u] >= 0 or sat[u] < self.k for u in self.adj[v]):
                if self._rec(done + 1, max(used, c + 1)):
                    return True
            self._unassign(v, c)
        return False


def is_proper_coloring(adj: Sequence[Sequence[int]], coloring: Sequence[int], k: int) -> bool:
    if len(coloring) != len(adj):
        return False
    if any(not 0 <= c < k for c in coloring):
        return False
    return all(coloring[v] != coloring[int(u)] for v in range(len(adj)) for u in adj[v])


def brute_force_colorable(adj: Sequence[Sequence[int]], k: int) -> bool:
    """Try every assignment in {0..k-1}^V (first vertex fixed to color 0); for tiny graphs only."""
    nv = len(adj)
    if nv == 0:
        return True
    if k == 0:
        return False
    edges = [(v, int(u)) for v in range(nv) for u in adj[v] if v < int(u)]
    for rest in itertools.product(range(k), repeat=nv - 1):
        coloring = (0,) + rest
        if all(coloring[a] != coloring[b] for a, b in edges):
            return True
    return False
