from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from niveau.counting import (
    base_density_lower_bound,
    base_gap,
    binomial_tail,
    block_extension_size,
    central_binomial_upper,
    count_hamming,
    count_niveau,
    count_niveau_complement,
    density,
    density_lower_bound,
    middle_band_size,
    z_bound,
)
from niveau.group import ScaleTooLargeError, enumerate_group, level_count
from niveau.sets import HammingBallSpec, NiveauSpec, block_extension_mask

from oracles import ball_count_formula, niveau_count


@pytest.mark.parametrize("chain, expected", [
    (((2, 1),), 1),
    (((3, 1),), 37),
    (((2, 0), (4, 1)), 61),
    (((4, 3),), 2517),
])
def test_count_fixtures(chain, expected):
    assert count_niveau(NiveauSpec(2, 1, chain)) == expected


def test_count_fixture_cross_checks():
    assert comb(8, 6) + comb(8, 7) + comb(8, 8) == 37
    assert comb(4, 3) * 1 * 15 + comb(4, 4) == 61
    assert sum(comb(16, w) for w in range(12, 17)) == 2517


def test_count_hamming_examples():
    assert count_hamming(HammingBallSpec.U(2, 2, 1)) == 5
    for p, n in ((2, 3), (3, 1), (5, 1)):
        assert count_hamming(HammingBallSpec.U(p, n, 2**n)) == p ** (2**n)
    assert count_hamming(HammingBallSpec.U(3, 2, 1)) == 9
    assert count_hamming(HammingBallSpec.V(3, 2, 1)) == 9


def test_density_examples():
    assert density(NiveauSpec(2, 1, ((2, 1),))) == Fraction(1, 16)
    assert density(HammingBallSpec.U(2, 3, 8)) == 1
    d = density(NiveauSpec(2, 1, ((12, 1),)))
    assert Fraction(45, 100) <= d < Fraction(1, 2)
    expected = Fraction(sum(comb(4096, w) for w in range(2050, 4097)), 2**4096)
    assert d == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_vacuous_margin_gives_empty_set(n):
    assert count_niveau(NiveauSpec(2, 1, ((n, 2 ** (n - 1)),))) == 0
    assert count_niveau(NiveauSpec(2, 1, ((n, 2 ** (n - 1) + 3),))) == 0


def test_exact_count_cap():
    with pytest.raises(ScaleTooLargeError):
        count_niveau(NiveauSpec(2, 1, ((30, 1),)))


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(0, 3)), min_size=1, max_size=3), st.integers(0, 1))
def test_count_matches_enumeration(pairs, i):
    chain = tuple(sorted({n: m for n, m in pairs}.items()))
    assert count_niveau(NiveauSpec(2, i, chain)) == niveau_count(2, i, chain)


@given(st.sampled_from([3, 5]), st.lists(st.tuples(st.integers(1, 2), st.integers(0, 2)), min_size=1, max_size=2),
       st.integers(0, 4))
def test_odd_prime_count_matches_enumeration(p, pairs, i):
    chain = tuple(sorted({n: m for n, m in pairs}.items()))
    if p == 5 and chain[-1][0] == 2:
        chain = ((1, chain[0][1]),)
    assert count_niveau(NiveauSpec(p, i % p, chain)) == niveau_count(p, i % p, chain)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 4), st.integers(0, 20))
def test_hamming_count_formula(p, n, k):
    assert count_hamming(HammingBallSpec.U(p, n, k)) == ball_count_formula(p, n, k)


@given(st.integers(1, 6), st.integers(0, 4))
def test_residue_symmetry_and_band(n, m):
    spec = NiveauSpec(2, 1, ((n, m),))
    a1, a0 = count_niveau(spec), count_niveau(spec.with_residue(0))
    assert a1 == a0
    assert a1 + a0 + middle_band_size(n, m) == 2 ** (2**n)
    assert count_niveau_complement(spec) == 2 ** (2**n) - a1


@given(st.integers(1, 9), st.integers(0, 5))
def test_gap_formula_and_bound(n, m):
    cells = 2**n
    gap = base_gap(cells, m)
    assert gap == Fraction(1, 2) - density(NiveauSpec(2, 1, ((n, m),)))
    if 2 * m < cells:
        assert gap <= z_bound(cells, m) / 2 + Fraction(0)
        assert gap <= z_bound(cells, m)


@given(st.integers(1, 400))
def test_central_binomial_upper(h):
    assert Fraction(comb(2 * h, h), 4**h) <= central_binomial_upper(h)


@given(st.integers(0, 30), st.integers(-2, 32), st.fractions(min_value=0, max_value=1, max_denominator=50))
def test_binomial_tail_matches_sum(cells, start, q):
    expected = sum(Fraction(comb(cells, t)) * q**t * (1 - q) ** (cells - t)
                   for t in range(max(start, 0), cells + 1))
    assert binomial_tail(cells, start, q) == expected


@pytest.mark.parametrize("chain", [((5, 1),), ((8, 2),), ((2, 0), (6, 1)), ((3, 1), (9, 3)), ((1, 0), (4, 1), (8, 2))])
def test_certified_bound_below_exact(chain):
    spec = NiveauSpec(2, 1, chain)
    exact = density(spec)
    assert density_lower_bound(spec) == (exact, True)
    bound, flagged = density_lower_bound(spec, bit_cap=0, bits=64)
    assert bound <= exact
    # a single level stays exact below the base-cell threshold
    assert flagged == (len(chain) == 1)
    if flagged:
        assert bound == exact


@pytest.mark.parametrize("cells", [2**17, 2**20, 2**30])
def test_large_base_bound_is_certified(cells):
    bound, exact = base_density_lower_bound(cells, 3)
    assert not exact
    assert Fraction(45, 100) < bound < Fraction(1, 2)


def test_block_extension_size_matches_masks():
    for g in enumerate_group(2, 2):
        for top, margin in ((3, 0), (4, 1), (4, 0)):
            levels = {1: level_count(g, 1), 0: level_count(g, 0)}
            assert int(block_extension_mask(g, top, margin).sum()) == block_extension_size(2, 2, top, margin, levels)
