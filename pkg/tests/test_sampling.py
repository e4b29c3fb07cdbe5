from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from niveau.group import GroupElement, RandomStream
from niveau.sampling import sample_hamming, sample_hamming_rows, sample_niveau, sample_niveau_rows
from niveau.sets import HammingBallSpec, NiveauSpec, codes_from_digits, hamming_mask, in_hamming, in_niveau, niveau_mask

from oracles import niveau_member


def _row_codes(p, rows):
    return codes_from_digits(p, rows.astype(np.int64))


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(0, 3)), min_size=1, max_size=3), st.integers(0, 1),
       st.integers(0, 2**32 - 1), st.booleans())
def test_niveau_draws_are_members(pairs, i, seed, inside):
    chain = tuple(sorted({n: m for n, m in pairs}.items()))
    spec = NiveauSpec(2, i, chain)
    g = sample_niveau(spec, RandomStream(seed), inside)
    if g is None:
        mask = niveau_mask(spec)
        assert not (mask.any() if inside else (~mask).any())
        return
    assert in_niveau(g, spec) == inside
    assert niveau_member(g.coeffs, i, chain) == inside


@given(st.sampled_from([2, 3]), st.integers(0, 3), st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_ball_draws_are_members(p, n, k, seed):
    spec = HammingBallSpec.V(p, n, k)
    assert in_hamming(sample_hamming(spec, RandomStream(seed)), spec)
    rows = sample_hamming_rows(spec, RandomStream(seed), 50)
    mask = hamming_mask(spec) if p ** (2**n) <= 2**16 else None
    if mask is not None:
        assert mask[_row_codes(p, rows)].all()


def _chi_square_ok(counts, expected):
    stat = float(((counts - expected) ** 2 / expected).sum())
    dof = counts.size - 1
    return stat < dof + 6 * np.sqrt(2 * dof)  # about 6 sigma


@pytest.mark.parametrize("chain", [((3, 1),), ((2, 0), (4, 1)), ((4, 3),)])
def test_batch_niveau_sampler_is_uniform(chain):
    spec = NiveauSpec(2, 1, chain)
    members = np.flatnonzero(niveau_mask(spec))
    draws = 200 * members.size
    rows = sample_niveau_rows(spec, RandomStream(11), draws)
    codes = _row_codes(2, rows)
    pos = np.searchsorted(members, codes)
    assert np.array_equal(members[pos], codes)
    counts = np.bincount(pos, minlength=members.size)
    assert _chi_square_ok(counts, np.full(members.size, draws / members.size))


def test_single_sampler_is_uniform():
    spec = NiveauSpec(2, 1, ((3, 1),))
    members = np.flatnonzero(niveau_mask(spec))
    rng = RandomStream(5)
    codes = np.array([sample_niveau(spec, rng).code for _ in range(37 * 150)])
    counts = np.bincount(np.searchsorted(members, codes), minlength=members.size)
    assert _chi_square_ok(counts, np.full(members.size, 150.0))


def test_ball_sampler_is_uniform_odd_prime():
    spec = HammingBallSpec.U(3, 2, 1)
    members = np.flatnonzero(hamming_mask(spec))
    assert members.size == 9
    rows = sample_hamming_rows(spec, RandomStream(9), 9000)
    counts = np.bincount(np.searchsorted(members, _row_codes(3, rows)), minlength=9)
    assert _chi_square_ok(counts, np.full(9, 1000.0))


def test_samplers_are_deterministic():
    spec = NiveauSpec(2, 1, ((2, 0), (5, 2)))
    a = sample_niveau_rows(spec, RandomStream(123), 20)
    b = sample_niveau_rows(spec, RandomStream(123), 20)
    assert np.array_equal(a, b)
    assert sample_niveau(spec, RandomStream(4)) == sample_niveau(spec, RandomStream(4))


def test_empty_set_sampler_returns_none():
    assert sample_niveau(NiveauSpec(2, 1, ((2, 2),)), RandomStream(0)) is None
    assert sample_niveau_rows(NiveauSpec(2, 1, ((2, 2),)), RandomStream(0), 5) is None
