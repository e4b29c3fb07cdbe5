"""Brute-force oracles written independently of the library's mask and count code.

Elements are plain coefficient tuples in index order; nothing here imports
the membership, counting or sampling routines under test.
"""

from __future__ import annotations

import functools
import itertools
from math import comb


def all_coeffs(p: int, n: int):
    """Every coefficient tuple of G_p^(n), in code order (MSB-first digits)."""
    return itertools.product(range(p), repeat=2**n)


def code_of(p: int, coeffs) -> int:
    out = 0
    for c in coeffs:
        out = out * p + c
    return out


@functools.lru_cache(maxsize=None)
def niveau_member(coeffs: tuple, i: int, chain: tuple) -> bool:
    n1, m1 = chain[0]
    cells = 2**n1
    if len(chain) == 1:
        return 2 * sum(1 for c in coeffs if c == i) > cells + 2 * m1
    block = len(coeffs) // cells
    tail = tuple((n - n1, m) for n, m in chain[1:])
    good = sum(niveau_member(coeffs[b * block:(b + 1) * block], i, tail) for b in range(cells))
    return 2 * good > cells + 2 * m1


def niveau_count(p: int, i: int, chain: tuple) -> int:
    n = chain[-1][0]
    return sum(niveau_member(c, i, chain) for c in all_coeffs(p, n))


def hamming_member(coeffs: tuple, center: tuple, k: int) -> bool:
    return sum(1 for a, b in zip(coeffs, center) if a != b) <= k


def ball_count_formula(p: int, n: int, k: int) -> int:
    cells = 2**n
    return sum(comb(cells, j) * (p - 1) ** j for j in range(min(k, cells) + 1))


def xor_differences(codes) -> set:
    return {a ^ b for a in codes for b in codes}


def small_chains(max_scale: int, margins=range(0, 4), max_levels: int = 3):
    """Every chain with scales in 1..max_scale and margins drawn from ``margins``."""
    for levels in range(1, max_levels + 1):
        for scales in itertools.combinations(range(1, max_scale + 1), levels):
            for ms in itertools.product(margins, repeat=levels):
                yield tuple(zip(scales, ms))


def cayley_colorable_p2(n: int, connection: set, k: int) -> bool:
    """Plain backtracking k-coloring of Cayley(G_2^(n), connection); no heuristics."""
    order = 2 ** (2**n)
    color = [-1] * order

    def place(v: int) -> bool:
        if v == order:
            return True
        used = {color[v ^ s] for s in connection if (v ^ s) < v}
        for c in range(k):
            if c not in used:
                color[v] = c
                if place(v + 1):
                    return True
        color[v] = -1
        return False

    return place(0)


def independent_max(order: int, connection: set) -> int:
    """Largest A in G_2^(n) with (A - A) avoiding ``connection``; exhaustive, tiny orders only."""
    best = 0

    def grow(start: int, chosen: list) -> None:
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (order - start) <= best:
            return
        for v in range(start, order):
            if all((v ^ u) not in connection for u in chosen):
                chosen.append(v)
                grow(v + 1, chosen)
                chosen.pop()

    grow(0, [])
    return best
