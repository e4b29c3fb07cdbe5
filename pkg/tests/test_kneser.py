from __future__ import annotations

import itertools
import time
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from niveau.coloring import is_proper_coloring
from niveau.kneser import (
    FULL,
    STABLE,
    KneserVerifier,
    class_capacity,
    cover_free_capacity,
    kneser_graph,
    lovasz_instance_size,
    min_element_coloring,
    verify_lovasz_claim,
)
from niveau.recurrence import lovasz_census


def test_petersen_graph():
    labels, adj = kneser_graph(5, 2)
    assert len(labels) == 10
    assert all(len(a) == 3 for a in adj)
    assert sum(len(a) for a in adj) // 2 == 15


@pytest.mark.parametrize("N, r", [(5, 2), (7, 3), (8, 3), (9, 4), (10, 3)])
def test_stable_graph_size(N, r):
    labels, _ = kneser_graph(N, r, stable=True)
    assert len(labels) * (N - r) == N * comb(N - r, r)


def _max_family_without_small_cover(N, r, T):
    """Exhaustive: largest intersecting family of r-sets with every T-set missing some member."""
    sets = [frozenset(c) for c in itertools.combinations(range(N), r)]
    covers = [frozenset(c) for c in itertools.combinations(range(N), T)]
    best = 0
    for size in range(len(sets), 0, -1):
        if size <= best:
            break
        for fam in itertools.combinations(sets, size):
            if all(a & b for a, b in itertools.combinations(fam, 2)) and all(
                    any(not (c & f) for f in fam) for c in covers):
                return size
    return best


@pytest.mark.parametrize("N, r, T", [(5, 2, 1), (6, 2, 1), (4, 2, 1)])
def test_cover_free_capacity_brute_force(N, r, T):
    value, _ = cover_free_capacity(N, r, T)
    assert value == _max_family_without_small_cover(N, r, T)


@pytest.mark.parametrize("N", range(7, 14))
def test_cover_free_capacity_non_star_families(N):
    # largest intersecting 3-uniform family that is not a star: C(N-1,2) - C(N-4,2) + 1 = 3N - 8
    value, _ = cover_free_capacity(N, 3, 1)
    assert value == comb(N - 1, 2) - comb(N - 4, 2) + 1 == 3 * N - 8


@pytest.mark.parametrize("N", [7, 9])
def test_cover_free_capacity_cover_number_three(N):
    assert cover_free_capacity(N, 3, 2)[0] == 10


@pytest.mark.parametrize("N, r, T", [(6, 2, 1), (8, 3, 1), (9, 3, 2), (10, 3, 1)])
def test_elementary_capacity_is_an_upper_bound(N, r, T):
    value, _ = cover_free_capacity(N, r, T)
    assert value is not None and value <= class_capacity(N, r, T)


def test_capacity_budget():
    value, nodes = cover_free_capacity(12, 4, 1, node_budget=5)
    assert value is None and nodes >= 5
    assert class_capacity(6, 2, 2) == 0


@given(st.integers(1, 4), st.integers(0, 4))
def test_min_element_coloring_is_proper(r, extra):
    N = 2 * r + extra
    labels, adj = kneser_graph(N, r)
    coloring = min_element_coloring(labels, N, r)
    assert is_proper_coloring(adj, coloring, N - 2 * r + 2)


def test_claims():
    ver = KneserVerifier()
    assert ver.claim(2, 5, 2, FULL).proven is True
    assert ver.claim(2, 5, 3, FULL).proven is False
    assert ver.claim(2, 5, 2, STABLE).proven is True
    assert ver.claim(1, 1, 1, FULL).proven is False
    assert (2, 5, 2, FULL) in ver.memo


@pytest.mark.parametrize("r, k", [(1, 1), (2, 2), (3, 3), (4, 2)])
def test_lovasz_claim_outcome(r, k):
    out = verify_lovasz_claim(r, k)
    assert out.status == "PROVEN"
    assert out.claims and out.claims[-1]["ground_set"] <= 2 * r + k
    assert lovasz_instance_size(r, k) == comb(2 * r + k, r)


def test_lovasz_census_all_proven():
    start = time.perf_counter()
    verdicts = lovasz_census(500)
    pairs = {(v.parameters["r"], v.parameters["k"]) for v in verdicts}
    expected = {(r, k) for r in range(1, 10) for k in range(1, 500) if comb(2 * r + k, r) <= 500}
    assert pairs == expected
    assert {v.status for v in verdicts} == {"PROVEN"}
    assert time.perf_counter() - start < 120
