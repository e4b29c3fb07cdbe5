from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from niveau.group import GroupElement, RandomStream, decode, one, zero
from niveau.recurrence import (
    INCONCLUSIVE,
    PROVEN,
    REFUTED,
    CayleyGraph,
    Verdict,
    chromatic_exceeds,
    combine,
    difference_avoids,
    max_avoiding_density,
    sampled_difference_check,
    sampled_sum_containment,
    verify_lovasz,
    verify_poincare,
    verify_translate_claim,
)
from niveau.sets import FiniteSet, HammingBallSpec, NiveauSpec, finite_set_from_elements, materialize

from oracles import cayley_colorable_p2, independent_max, xor_differences

U, V = HammingBallSpec.U, HammingBallSpec.V


def fs_from_codes(n, codes, description=""):
    mask = np.zeros(2 ** (2**n), dtype=bool)
    mask[list(codes)] = True
    return FiniteSet(2, n, mask, description)


# -- verdict plumbing ---------------------------------------------------------------------


def test_verdict_contract():
    with pytest.raises(ValueError):
        Verdict(PROVEN)
    with pytest.raises(ValueError):
        Verdict("MAYBE", certificate="x")
    assert Verdict(INCONCLUSIVE).as_dict()["status"] == INCONCLUSIVE
    assert combine([Verdict(PROVEN, certificate="a"), Verdict(INCONCLUSIVE)]) == INCONCLUSIVE
    assert combine([Verdict(INCONCLUSIVE), Verdict(REFUTED, certificate="b")]) == REFUTED
    assert combine([]) == PROVEN


# -- difference avoidance --------------------------------------------------------------------


def test_difference_avoids_examples():
    assert difference_avoids(fs_from_codes(2, [15]), V(2, 2, 1)).status == PROVEN
    full = materialize(U(2, 2, 4))
    S = full.without_zero()
    v = difference_avoids(full, S)
    assert v.status == REFUTED
    a, a2, d = decode(v.witness["a"]), decode(v.witness["a2"]), decode(v.witness["difference"])
    assert a - a2 == d and d in S


@given(st.sets(st.integers(0, 255), max_size=12), st.sets(st.integers(1, 255), max_size=10))
def test_difference_avoids_matches_brute_force(a_codes, s_codes):
    A, S = fs_from_codes(3, a_codes), fs_from_codes(3, s_codes)
    expected = not (xor_differences(a_codes) & s_codes)
    assert (difference_avoids(A, S).status == PROVEN) == expected


def test_sampled_check_examples():
    A = NiveauSpec(2, 1, ((8, 3),))
    v = sampled_difference_check(A, V(2, 8, 1), 100_000, RandomStream(1))
    assert v.status == INCONCLUSIVE and v.budget_spent["violations"] == 0 and v.budget_spent["trials"] == 100_000
    full = U(2, 4, 16)
    S = materialize(full).without_zero()
    hits = [sampled_difference_check(full, S, 100, RandomStream(s)) for s in (3, 3)]
    assert hits[0].status == REFUTED and hits[0].witness == hits[1].witness


def test_sampled_check_small_exact_route():
    # pairs route (S given as a finite set without a sampler) on a small set with a known violation
    A = materialize(V(2, 2, 1))
    S = fs_from_codes(2, [0b0001])
    v = sampled_difference_check(A, S, 2000, RandomStream(8))
    assert v.status == REFUTED
    assert decode(v.witness["difference"]).code == 1


def test_sampled_sum_containment():
    A, S = NiveauSpec(2, 1, ((4, 3),)), V(2, 4, 1)
    ok = sampled_sum_containment(A, S, NiveauSpec(2, 0, ((4, 2),)), 20_000, RandomStream(2))
    assert ok.status == INCONCLUSIVE and ok.budget_spent["violations"] == 0
    bad = sampled_sum_containment(A, S, NiveauSpec(2, 1, ((4, 3),)), 1000, RandomStream(2))
    assert bad.status == REFUTED


# -- chromatic decisions -----------------------------------------------------------------------


def test_chromatic_examples():
    complete = CayleyGraph.from_spec(U(2, 2, 4))
    v = chromatic_exceeds(complete, 2)
    assert v.status == PROVEN and v.witness["type"] == "odd relation"
    rel = [decode(x).code for x in v.witness["generators"]]
    assert len(rel) % 2 == 1 and np.bitwise_xor.reduce(rel) == 0

    cube = CayleyGraph.from_spec(U(2, 2, 1))
    v = chromatic_exceeds(cube, 2)
    assert v.status == REFUTED
    phi = decode(v.witness["functional"]).code
    assert all(bin(phi & int(s)).count("1") % 2 == 1 for s in cube.generators())

    assert chromatic_exceeds(cube, 16).status == REFUTED
    assert chromatic_exceeds(complete, 15).status == PROVEN
    assert chromatic_exceeds(complete, 16).status == REFUTED


def test_chromatic_budget_exhaustion():
    graph = CayleyGraph.from_spec(U(2, 3, 1))
    assert chromatic_exceeds(graph, 3, node_budget=10).status == INCONCLUSIVE
    assert chromatic_exceeds(graph, 3).status == REFUTED


@given(st.sets(st.integers(1, 15), min_size=1, max_size=6), st.integers(2, 4))
def test_chromatic_matches_backtracking(gens, k):
    graph = CayleyGraph(2, 2, fs_from_codes(2, gens))
    v = chromatic_exceeds(graph, k)
    assert v.status == (REFUTED if cayley_colorable_p2(2, gens, k) else PROVEN)
    if k == 2:
        assert chromatic_exceeds(graph, 2, method="bfs").status == v.status
        assert chromatic_exceeds(graph, 2, method="search").status == v.status


@given(st.sets(st.integers(1, 255), min_size=1, max_size=5))
def test_two_coloring_routes_agree_at_scale_three(gens):
    graph = CayleyGraph(2, 3, fs_from_codes(3, gens))
    linear = chromatic_exceeds(graph, 2, method="linear")
    assert chromatic_exceeds(graph, 2, method="bfs").status == linear.status


def test_odd_prime_connection_is_symmetrized():
    g = GroupElement.from_coeffs(3, 1, [1, 0])
    graph = CayleyGraph(3, 1, finite_set_from_elements(3, 1, [g]))
    assert graph.degree == 2
    # three disjoint triangles: 3 colors suffice and 2 do not
    assert chromatic_exceeds(graph, 2).status == PROVEN
    assert chromatic_exceeds(graph, 3).status == REFUTED


@pytest.mark.parametrize("p, n, k", [(2, 2, 1), (2, 3, 2), (2, 4, 2), (3, 2, 1)])
def test_poincare_examples(p, n, k):
    assert verify_poincare(p, n, k).status == PROVEN


def test_poincare_hypothesis_guard():
    with pytest.raises(ValueError):
        verify_poincare(2, 2, 2)
    assert verify_poincare(2, 2, 2, relax=True).parameters["relaxed"]


@pytest.mark.parametrize("g", [zero(2, 4), one(2, 4), zero(2, 1)])
def test_translate_claim_examples(g):
    assert verify_translate_claim(4, 2, g).status == PROVEN


def test_translate_claim_one_class():
    for code in range(16):
        assert verify_translate_claim(2, 1, GroupElement(2, 2, code)).status == PROVEN


@pytest.mark.parametrize("r, k", [(1, 1), (2, 1), (2, 2), (1, 3), (3, 1)])
def test_lovasz_examples(r, k):
    assert verify_lovasz(r, k).status == PROVEN


def test_lovasz_vertex_cap():
    with pytest.raises(ValueError):
        verify_lovasz(6, 6)


# -- avoiding densities -----------------------------------------------------------------------


def test_max_avoiding_density_examples():
    d = max_avoiding_density(materialize(U(2, 2, 4)).without_zero())
    assert (d.lower, d.upper) == (Fraction(1, 16), Fraction(1, 16))
    d = max_avoiding_density(V(2, 2, 1))
    assert d.lower == d.upper == Fraction(independent_max(16, set(materialize(V(2, 2, 1)).codes().tolist())), 16)
    assert d.lower == Fraction(5, 16)
    seed = materialize(NiveauSpec(2, 1, ((4, 3),)))
    d = max_avoiding_density(V(2, 4, 3), seed_set=seed)
    assert d.lower >= Fraction(2517, 65536)
    assert d.lower <= d.upper
    assert difference_avoids(d.witness, materialize(V(2, 4, 3)).without_zero()).status == PROVEN


@given(st.sets(st.integers(1, 15), min_size=1, max_size=5))
def test_max_avoiding_density_exact_small(gens):
    d = max_avoiding_density(fs_from_codes(2, gens))
    assert d.lower == d.upper == Fraction(independent_max(16, gens), 16)
