from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from niveau.group import (
    GroupElement,
    RandomStream,
    ScaleTooLargeError,
    add,
    blocks,
    check_enumerable,
    cylinders,
    decode,
    embed,
    enumerable,
    enumerate_group,
    group_order,
    is_prime,
    level_count,
    make_constant,
    negate,
    one,
    random_element,
    reduce_scale,
    restrict,
    string_index,
    subtract,
    zero,
)

primes = st.sampled_from([2, 3, 5])


@st.composite
def elements(draw, p=None, n=None, max_n=3):
    p = draw(primes) if p is None else p
    n = draw(st.integers(0, max_n if p == 2 else 2)) if n is None else n
    return GroupElement(p, n, draw(st.integers(0, group_order(p, n) - 1)))


@st.composite
def same_group_pair(draw):
    g = draw(elements())
    h = GroupElement(g.p, g.n, draw(st.integers(0, group_order(g.p, g.n) - 1)))
    return g, h


def coeffs(*c):
    return tuple(c)


# -- examples ---------------------------------------------------------------------------


def test_make_constant_examples():
    assert make_constant(2, 2, 1).coeffs == (1, 1, 1, 1)
    z = make_constant(2, 3, 0)
    assert z == zero(2, 3) and level_count(z, 0) == 8
    c = make_constant(3, 1, 2)
    assert c.coeffs == (2, 2)
    assert (c + c).coeffs == (1, 1)


def test_add_xor_example():
    g = GroupElement.from_coeffs(2, 2, [1, 0, 0, 1])
    h = GroupElement.from_coeffs(2, 2, [1, 1, 0, 0])
    assert add(g, h).coeffs == (0, 1, 0, 1)


def test_embed_examples():
    assert embed(one(2, 1), 3) == one(2, 3)
    g = GroupElement.from_coeffs(2, 1, [1, 0])
    assert embed(g, 2).coeffs == (1, 1, 0, 0)
    for g in enumerate_group(2, 2):
        assert level_count(embed(g, 4), 1) == 4 * level_count(g, 1)


def test_restrict_examples():
    g = GroupElement.from_coeffs(2, 2, [1, 0, 0, 0])
    assert restrict(g, "0").coeffs == (1, 0)
    for tau in ("", "0", "1", "01", "11"):
        assert restrict(make_constant(3, 3, 2), tau) == make_constant(3, 3 - len(tau), 2)
    with pytest.raises(ValueError):
        restrict(g, "01")
    for g in enumerate_group(2, 3):
        assert sum(level_count(restrict(g, t), 1) for t in cylinders(1)) == level_count(g, 1)


def test_level_count_examples():
    assert level_count(one(2, 4), 1) == 16
    assert level_count(zero(2, 3), 1) == 0
    g = GroupElement.from_coeffs(2, 2, [1, 1, 0, 1])
    assert (level_count(g, 1), level_count(g, 0)) == (3, 1)


def test_enumerate_group_examples():
    assert [g.coeffs for g in enumerate_group(2, 1)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    codes = {g.code for g in enumerate_group(2, 4)}
    assert len(codes) == 65536
    assert sum(1 for _ in enumerate_group(3, 2)) == 81


def test_enumeration_cap():
    assert enumerable(2, 4) and not enumerable(2, 5)
    assert not enumerable(2, 80)  # must not build 2^(2^80)
    with pytest.raises(ScaleTooLargeError):
        check_enumerable(2, 5)
    with pytest.raises(ScaleTooLargeError):
        next(enumerate_group(2, 6))


def test_random_element_determinism():
    a = [random_element(2, 3, RandomStream(42)) for _ in range(2)]
    assert a[0] == a[1]
    assert random_element(5, 2, RandomStream(42)) == random_element(5, 2, RandomStream(42))


def test_random_element_uniform_at_scale_two():
    rng = RandomStream(1)
    freq = np.bincount([random_element(2, 2, rng).code for _ in range(100_000)], minlength=16)
    assert np.all(np.abs(freq - 6250) <= 500)


def test_random_element_mean_weight():
    rng = RandomStream(2)
    mean = np.mean([level_count(random_element(2, 4, rng), 1) for _ in range(100_000)])
    assert abs(mean - 8.0) <= 0.1


def test_cylinder_order_is_lexicographic():
    assert cylinders(2) == ["00", "01", "10", "11"]
    assert [string_index(t) for t in cylinders(3)] == list(range(8))


def test_validation():
    assert is_prime(7) and not is_prime(9) and not is_prime(1)
    with pytest.raises(ValueError):
        make_constant(4, 1, 0)
    with pytest.raises(ValueError):
        GroupElement(2, 1, 4)
    with pytest.raises(ValueError):
        add(one(2, 1), one(2, 2))
    with pytest.raises(ValueError):
        embed(one(2, 2), 1)
    with pytest.raises(ValueError):
        GroupElement.from_coeffs(3, 1, [0, 3])


# -- properties ------------------------------------------------------------------------------


@given(elements())
def test_encode_roundtrip(g):
    assert decode(g.encode()) == g
    assert GroupElement.from_coeffs(g.p, g.n, g.coeffs) == g


@given(same_group_pair())
def test_group_laws(pair):
    g, h = pair
    z = zero(g.p, g.n)
    assert g + z == g
    assert g + h == h + g
    assert g + negate(g) == z
    assert subtract(g + h, h) == g
    if g.p == 2:
        assert g + g == z
    assert all((a + b) % g.p == c for a, b, c in zip(g.coeffs, h.coeffs, (g + h).coeffs))


@given(same_group_pair(), st.integers(0, 2))
def test_embed_is_a_homomorphism(pair, extra):
    g, h = pair
    n = g.n + extra
    assert embed(g + h, n) == embed(g, n) + embed(h, n)
    assert reduce_scale(embed(g, n), g.n) == g


@given(elements(max_n=3), st.integers(0, 2))
def test_level_counts_scale_with_embedding(g, extra):
    e = embed(g, g.n + extra)
    for i in range(g.p):
        assert level_count(e, i) == 2**extra * level_count(g, i)
    assert sum(level_count(g, i) for i in range(g.p)) == 2**g.n


@given(same_group_pair(), st.data())
def test_restrict_is_a_homomorphism(pair, data):
    g, h = pair
    if g.n == 0:
        return
    tau = data.draw(st.sampled_from(cylinders(data.draw(st.integers(0, g.n - 1)))))
    assert restrict(g + h, tau) == restrict(g, tau) + restrict(h, tau)


@given(elements(max_n=3), st.data())
def test_blocks_agree_with_restrict(g, data):
    if g.n == 0:
        return
    m = data.draw(st.integers(0, g.n - 1))
    parts = blocks(g, m)
    assert parts == [restrict(g, t) for t in cylinders(m)]
    assert sum((b.coeffs for b in parts), ()) == g.coeffs
