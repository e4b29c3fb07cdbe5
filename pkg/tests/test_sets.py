from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from niveau.group import GroupElement, RandomStream, enumerate_group, group_order, one, random_element, zero
from niveau.sets import (
    FiniteSet,
    HammingBallSpec,
    NiveauSpec,
    block_extension_mask,
    finite_set_from_elements,
    in_block_extension,
    in_hamming,
    in_niveau,
    materialize,
    niveau_mask,
    parse_set_spec,
    predicate,
)

from oracles import all_coeffs, hamming_member, niveau_member


def test_in_hamming_examples():
    U20 = HammingBallSpec.U(2, 2, 0)
    assert in_hamming(zero(2, 2), U20)
    for b in range(4):
        assert not in_hamming(GroupElement(2, 2, 1 << b), U20)
    U21 = HammingBallSpec.U(2, 2, 1)
    assert sum(in_hamming(g, U21) for g in enumerate_group(2, 2)) == 5


def test_V_is_U_translated_by_one():
    rng = RandomStream(3)
    for _ in range(10_000):
        n = int(rng.randbelow(9))
        k = int(rng.randbelow(2**n + 1))
        g = random_element(2, n, rng)
        assert in_hamming(g, HammingBallSpec.V(2, n, k)) == in_hamming(g + one(2, n), HammingBallSpec.U(2, n, k))


def test_in_niveau_examples():
    A = NiveauSpec(2, 1, ((2, 1),))
    assert [g for g in enumerate_group(2, 2) if in_niveau(g, A)] == [one(2, 2)]
    assert sum(in_niveau(g, NiveauSpec(2, 1, ((3, 1),))) for g in enumerate_group(2, 3)) == 37
    assert int(niveau_mask(NiveauSpec(2, 1, ((2, 0), (4, 1)))).sum()) == 61


def test_in_block_extension_examples():
    assert in_block_extension(one(2, 4), one(2, 2), 1)
    assert not in_block_extension(one(2, 4), zero(2, 2), 1)
    for g in enumerate_group(2, 2):
        mask = block_extension_mask(g, 4, 1)
        assert int(mask.sum()) == 1
        h = GroupElement(2, 4, int(np.flatnonzero(mask)[0]))
        assert in_block_extension(h, g, 1)
    with pytest.raises(ValueError):
        in_block_extension(one(2, 2), one(2, 2), 1)


def test_materialize_examples():
    assert materialize(NiveauSpec(2, 1, ((2, 1),))).cardinality == 1
    assert materialize(HammingBallSpec.U(2, 4, 16)).cardinality == 65536
    V, U = materialize(HammingBallSpec.V(2, 2, 1)), materialize(HammingBallSpec.U(2, 2, 1))
    assert V.cardinality == 5 and V.isdisjoint(U)
    assert {bin(c).count("1") for c in V.codes()} == {3, 4}


def test_spec_validation():
    with pytest.raises(ValueError):
        NiveauSpec(2, 1, ((2, 1), (2, 1)))
    with pytest.raises(ValueError):
        NiveauSpec(2, 1, ())
    with pytest.raises(ValueError):
        NiveauSpec(2, 2, ((1, 0),))
    with pytest.raises(ValueError):
        NiveauSpec(2, 1, ((2, 0),), strict=True)
    with pytest.raises(ValueError):
        HammingBallSpec(2, 1, -1)
    with pytest.raises(ValueError):
        in_niveau(one(2, 3), NiveauSpec(2, 1, ((2, 1),)))


def test_tail_is_valid():
    spec = NiveauSpec(2, 1, ((1, 0), (3, 2), (4, 1)))
    assert spec.tail().chain == ((2, 2), (3, 1))
    assert spec.tail().tail().chain == ((1, 1),)


@pytest.mark.parametrize("text", ["p=2;i=1;chain=(2,1),(4,1)", "p=3;i=2;chain=(1,0)", "ball=U;p=2;n=3;k=1",
                                  "ball=V;p=5;n=2;k=2"])
def test_spec_text_roundtrip(text):
    spec = parse_set_spec(text)
    assert spec.format() == text
    assert parse_set_spec(spec.format()) == spec


@pytest.mark.parametrize("text", ["p=2;i=1", "p=2;i=1;chain=(2,1)x", "ball=W;p=2;n=1;k=1", "ball=U;p=2;n=1",
                                  "nonsense"])
def test_spec_text_rejects(text):
    with pytest.raises(ValueError):
        parse_set_spec(text)


def test_finite_set_file_roundtrip(tmp_path):
    fs = materialize(NiveauSpec(2, 1, ((1, 0), (3, 1))))
    fs.save(tmp_path / "set.rle")
    back = FiniteSet.load(tmp_path / "set.rle")
    assert back.cardinality == fs.cardinality and np.array_equal(back.mask, fs.mask)
    full = materialize(HammingBallSpec.U(2, 2, 4))
    full.save(tmp_path / "full.rle")
    assert FiniteSet.load(tmp_path / "full.rle").cardinality == 16


# -- masks against the brute-force oracle ---------------------------------------------------

chains3 = st.lists(st.tuples(st.integers(1, 3), st.integers(0, 3)), min_size=1, max_size=3).map(
    lambda xs: tuple(sorted({n: m for n, m in xs}.items())))


@given(chains3, st.integers(0, 1))
def test_niveau_mask_matches_oracle(chain, i):
    spec = NiveauSpec(2, i, chain)
    mask = niveau_mask(spec)
    expected = np.array([niveau_member(c, i, chain) for c in all_coeffs(2, spec.scale)])
    assert np.array_equal(mask, expected)


@given(st.integers(0, 2), st.integers(0, 2), st.lists(st.tuples(st.integers(1, 2), st.integers(0, 2)),
                                                     min_size=1, max_size=2))
def test_odd_prime_membership_matches_oracle(p_idx, i, pairs):
    p = (3, 5, 3)[p_idx]
    chain = tuple(sorted({n: m for n, m in pairs}.items()))
    spec = NiveauSpec(p, i % p, chain)
    for coeffs in list(all_coeffs(p, spec.scale))[:: 7 if p == 5 else 1]:
        g = GroupElement.from_coeffs(p, spec.scale, coeffs)
        assert in_niveau(g, spec) == niveau_member(coeffs, i % p, chain)


@given(st.sampled_from([2, 3]), st.integers(0, 2), st.integers(0, 5), st.booleans())
def test_hamming_mask_matches_oracle(p, n, k, use_v):
    if p == 3 and n > 1:
        n = 1
    spec = HammingBallSpec.V(p, n, k) if use_v else HammingBallSpec.U(p, n, k)
    center = spec.center_at_scale.coeffs
    mask = materialize(spec).mask
    expected = np.array([hamming_member(c, center, k) for c in all_coeffs(p, n)])
    assert np.array_equal(mask, expected)


@given(chains3)
def test_residues_are_disjoint(chain):
    a1, a0 = niveau_mask(NiveauSpec(2, 1, chain)), niveau_mask(NiveauSpec(2, 0, chain))
    assert not (a1 & a0).any()


@given(st.integers(1, 3), st.integers(0, 3))
def test_predicate_agrees_with_mask(n, m):
    spec = NiveauSpec(2, 1, ((n, m),))
    pred = predicate(spec)
    mask = niveau_mask(spec)
    for code in range(0, group_order(2, n), max(1, group_order(2, n) // 64)):
        assert pred.fn(GroupElement(2, n, code)) == bool(mask[code])


def test_embedded_materialize_keeps_cardinality():
    small = materialize(HammingBallSpec.V(2, 2, 1))
    big = materialize(small, 4)
    assert big.cardinality == small.cardinality
    assert one(2, 4) in big
    elems = finite_set_from_elements(2, 4, small.elements())
    assert np.array_equal(elems.mask, big.mask)
