from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niveau.explorer import CSV_COLUMNS, probe_odd_prime, probe_table, table_csv, translated_connection, verdict_counts
from niveau.group import GroupElement, RandomStream, random_element, zero
from niveau.recurrence import INCONCLUSIVE, PROVEN, REFUTED, verify_translate_claim

from oracles import all_coeffs, code_of, hamming_member


def _oracle_connection(p: int, n: int, k: int, g: tuple) -> set:
    ones = (1,) * 2**n
    out = set()
    for x in all_coeffs(p, n):
        minus = tuple((-c) % p for c in x)
        hit = any(hamming_member(tuple((a - b) % p for a, b in zip(y, g)), ones, k) for y in (x, minus))
        if hit and any(x):
            out.add(code_of(p, x))
    return out


def _proper(p: int, n: int, conn: set, coloring: list) -> bool:
    elems = list(all_coeffs(p, n))
    codes = {code_of(p, c): c for c in elems}
    for code, x in codes.items():
        for s in conn:
            y = tuple((a + b) % p for a, b in zip(x, codes[s]))
            if coloring[code] == coloring[code_of(p, y)]:
                return False
    return True


@pytest.mark.parametrize("k_colors", range(1, 9))
def test_complete_graph_case(k_colors):
    # V(1, 2) is all of G_3^(1), so every translate gives K_9
    results = probe_odd_prime(3, 1, 2, k_colors)
    assert verdict_counts(results) == {PROVEN: 9, REFUTED: 0, INCONCLUSIVE: 0}


def test_complete_graph_nine_colors():
    assert all(r.status == REFUTED for r in probe_odd_prime(3, 1, 2, 9))


def test_full_sweep_is_deterministic():
    a, b = probe_odd_prime(3, 2, 1, 2), probe_odd_prime(3, 2, 1, 2)
    assert len(a) == 81 and all(r.status == PROVEN for r in a)
    assert table_csv(a) == table_csv(b)
    assert table_csv(a).splitlines()[0] == ",".join(CSV_COLUMNS)


def test_refuted_rows_carry_proper_colorings():
    results = probe_odd_prime(3, 2, 1, 3)
    assert verdict_counts(results) == {PROVEN: 72, REFUTED: 9, INCONCLUSIVE: 0}
    for r in results:
        conn = _oracle_connection(3, 2, 1, r.translate.coeffs)
        assert set(int(c) for c in translated_connection(3, 2, 1, r.translate).codes()) == conn
        if r.status == REFUTED:
            coloring = r.verdict.witness["coloring"]
            assert max(coloring) < 3 and _proper(3, 2, conn, coloring)


def test_sampled_translates_reproducible():
    a = probe_odd_prime(5, 2, 1, 3, 20, rng=RandomStream(7))
    b = probe_odd_prime(5, 2, 1, 3, 20, rng=RandomStream(7))
    assert [r.translate for r in a] == [r.translate for r in b]
    assert probe_table(a) == probe_table(b)
    assert len({r.translate for r in a}) == 20


def test_sampling_needs_stream_and_positive_size():
    with pytest.raises(ValueError):
        probe_odd_prime(3, 1, 1, 2, 5)
    with pytest.raises(ValueError):
        probe_odd_prime(3, 1, 1, 2, 0, rng=RandomStream(0))
    with pytest.raises(ValueError):
        probe_odd_prime(3, 1, 1, 0)
    with pytest.raises(ValueError):
        probe_odd_prime(4, 1, 1, 2)


def test_all_over_cap_warns_and_samples():
    with pytest.warns(UserWarning, match="sampling 4"):
        results = probe_odd_prime(3, 2, 1, 2, "all", rng=RandomStream(1), cap=50, sample=4)
    assert len(results) == 4 and len({r.translate for r in results}) == 4
    with pytest.raises(ValueError):
        probe_odd_prime(3, 2, 1, 2, "all", rng=RandomStream(1), graph_cap=50)


@settings(max_examples=15)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 1), (3, 1)]))
def test_binary_probe_agrees_with_translate_claim(seed, nk):
    n, k = nk
    g = random_element(2, n, RandomStream(seed))
    probe = probe_odd_prime(2, n, 3 * k + 3, k, translates=[g])[0]
    claim = verify_translate_claim(n, k, g)
    assert probe.status == claim.status


@given(st.integers(0, 2**16 - 1), st.sampled_from([3, 5]))
def test_connection_is_symmetric_without_zero(seed, p):
    g = random_element(p, 1, RandomStream(seed))
    conn = translated_connection(p, 1, 1, g)
    assert conn.negate() == conn
    assert zero(p, 1) not in conn
    closure = conn.union(conn.negate())
    assert closure.union(closure.negate()) == closure == conn


@settings(max_examples=10)
@given(st.integers(0, 80), st.integers(1, 3))
def test_verdict_invariant_under_double_closure(code, colors):
    from niveau.recurrence import CayleyGraph, chromatic_exceeds
    g = GroupElement(3, 2, code)
    conn = translated_connection(3, 2, 1, g)
    twice = conn.union(conn.negate())
    twice = twice.union(twice.negate())
    a = chromatic_exceeds(CayleyGraph(3, 2, conn), colors)
    b = chromatic_exceeds(CayleyGraph(3, 2, twice), colors)
    assert a.status == b.status == probe_odd_prime(3, 2, 1, colors, translates=[g])[0].status
