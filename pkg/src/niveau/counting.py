"""Exact cardinalities and densities, plus certified lower bounds at large scales.

Counts use block independence: an element of the chain's top scale is a
tuple of 2^(n_1) independent blocks, so the number of blocks landing in the
tail set is binomial.  With N = 2^(n_1), M = |block group| and a = |tail set|,

    |A_i(chain)| = sum over t with 2t > N + 2*m_1 of C(N, t) a^t (M - a)^(N - t).

Exact counts are big integers with about 2^(n_l) * log2(p) bits, so they stop
being practical around n_l = 20.  Above that :func:`density_lower_bound`
returns an exact rational that is provably at most the true density: the
binomial tail is increasing in the block success probability, so rounding
that probability down at every level keeps the bound valid.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import comb, isqrt

import gmpy2

from .group import ScaleTooLargeError
from .sets import HammingBallSpec, NiveauSpec, threshold_exceeded

# bit budget for exact big-integer counts: blocks * bits-per-block-group
EXACT_COUNT_BITS = 2**24
# largest cell count for which the base gap uses the exact central binomial
EXACT_BASE_CELLS = 2**16
DEFAULT_BOUND_BITS = 256


def count_hamming(spec: HammingBallSpec) -> int:
    """|center + U(n, k)| = sum_{j <= k} C(2^n, j) (p-1)^j."""
    cells = 2**spec.n
    if spec.k >= cells:
        return spec.p**cells
    return sum(comb(cells, j) * (spec.p - 1) ** j for j in range(spec.k + 1))


def _min_good(cells: int, margin: int) -> int:
    """Smallest t with 2t > cells + 2*margin."""
    return cells // 2 + margin + 1


def _exact_cost_bits(spec: NiveauSpec) -> int:
    n1 = spec.chain[0][0]
    return 2**n1 * 2 ** (spec.scale - n1) * max(1, spec.p.bit_length())


@functools.lru_cache(maxsize=512)
def _count(p: int, i: int, chain: tuple[tuple[int, int], ...]) -> int:
    n1, m1 = chain[0]
    cells = 2**n1
    start = _min_good(cells, m1)
    if start > cells:
        return 0
    if len(chain) == 1:
        if p == 2 and cells >= 2 and 2 * m1 < cells:
            # complement of the middle band, split evenly between the two residues
            return (2**cells - _central_band(cells, m1)) // 2
        return sum(comb(cells, w) * (p - 1) ** (cells - w) for w in range(start, cells + 1))
    tail = tuple((nj - n1, mj) for nj, mj in chain[1:])
    a = _count(p, i, tail)
    total = p ** (2 ** (chain[-1][0] - n1))
    return sum(comb(cells, t) * a**t * (total - a) ** (cells - t) for t in range(start, cells + 1))


def count_niveau(spec: NiveauSpec, bit_cap: int = EXACT_COUNT_BITS) -> int:
    """Exact |A_i(chain)| as a big integer."""
    if _exact_cost_bits(spec) > bit_cap:
        raise ScaleTooLargeError(
            f"exact count of {spec.format()} needs about {_exact_cost_bits(spec)} bits (cap {bit_cap}); "
            "use density_lower_bound instead"
        )
    return _count(spec.p, spec.i, spec.chain)


def count_niveau_complement(spec: NiveauSpec) -> int:
    return spec.p ** (2**spec.scale) - count_niveau(spec)


def density(spec, bit_cap: int = EXACT_COUNT_BITS) -> Fraction:
    """Exact |set| / |G_p^(n)| for a niveau or Hamming spec."""
    if isinstance(spec, HammingBallSpec):
        return Fraction(count_hamming(spec), spec.p ** (2**spec.n))
    if isinstance(spec, NiveauSpec):
        return Fraction(count_niveau(spec, bit_cap), spec.p ** (2**spec.scale))
    raise TypeError(f"no density for {type(spec).__name__}")


def exact_density_feasible(spec: NiveauSpec, bit_cap: int = EXACT_COUNT_BITS) -> bool:
    return _exact_cost_bits(spec) <= bit_cap


# -- central binomial band ---------------------------------------------------------

@functools.lru_cache(maxsize=64)
def _central_band(cells: int, margin: int) -> int:
    """sum_{|j| <= margin} C(cells, cells/2 + j) for even cells."""
    half = cells // 2
    term = int(gmpy2.comb(cells, half))
    total = term
    up = term
    for j in range(margin):
        if half + j + 1 > cells:
            break
        up = up * (half - j) // (half + j + 1)
        total += 2 * up
    return total


def base_gap(cells: int, margin: int) -> Fraction:
    """1/2 - |A_i(n, m)| / 2^cells for p = 2, exactly."""
    if cells == 1 or 2 * margin >= cells:
        return Fraction(1, 2) - Fraction(_count(2, 1, ((cells.bit_length() - 1, margin),)), 2**cells)
    return Fraction(_central_band(cells, margin), 2 ** (cells + 1))


def z_bound(cells: int, margin: int) -> Fraction:
    """(2m+1) C(N, N/2) / 2^N, an upper bound for the middle band's density."""
    return Fraction((2 * margin + 1) * comb(cells, cells // 2), 2**cells)


def central_binomial_upper(half: int, bits: int = DEFAULT_BOUND_BITS) -> Fraction:
    """Rational upper bound on C(2h, h) / 4^h via C(2h,h)/4^h <= 1/sqrt(3h+1)."""
    x = 3 * half + 1
    return Fraction(2**bits, isqrt(x * 4**bits))


def _floor_dyadic(value: Fraction, bits: int) -> Fraction:
    return Fraction((value.numerator << bits) // value.denominator, 2**bits)


def base_density_lower_bound(cells: int, margin: int, bits: int = DEFAULT_BOUND_BITS) -> tuple[Fraction, bool]:
    """Lower bound for the density of A_1(n, m) (p = 2) with 2^n = cells.

    Returns (bound, exact).  Exact when the central binomial is affordable,
    otherwise 1/2 - (2m+1)/2 * [upper bound on C(N, N/2)/2^N].
    """
    if cells <= EXACT_BASE_CELLS:
        return Fraction(1, 2) - base_gap(cells, margin), True
    if 2 * margin >= cells:
        return Fraction(0), True
    gap = Fraction(2 * margin + 1, 2) * central_binomial_upper(cells // 2, bits)
    return max(Fraction(0), _floor_dyadic(Fraction(1, 2) - gap, bits) - Fraction(1, 2**bits)), False


def binomial_tail(cells: int, start: int, q: Fraction) -> Fraction:
    """P(Binomial(cells, q) >= start), exactly."""
    if start > cells:
        return Fraction(0)
    if start <= 0:
        return Fraction(1)
    a, d = q.numerator, q.denominator
    b = d - a
    a_pow = [gmpy2.mpz(1)]
    for _ in range(cells):
        a_pow.append(a_pow[-1] * a)
    total = gmpy2.mpz(0)
    b_pow = gmpy2.mpz(1)
    for t in range(cells, start - 1, -1):
        total += gmpy2.comb(cells, t) * a_pow[t] * b_pow
        b_pow *= b
    return Fraction(int(total), int(gmpy2.mpz(d) ** cells))


def density_lower_bound(spec: NiveauSpec, bits: int = DEFAULT_BOUND_BITS,
                        bit_cap: int = EXACT_COUNT_BITS) -> tuple[Fraction, bool]:
    """(lower bound on density, exact flag).  Exact whenever the count is affordable."""
    if exact_density_feasible(spec, bit_cap):
        return density(spec, bit_cap), True
    if spec.p != 2:
        raise ScaleTooLargeError("certified lower bounds are implemented for p = 2 only")
    n1, m1 = spec.chain[0]
    cells = 2**n1
    if spec.levels == 1:
        return base_density_lower_bound(cells, m1, bits)
    q, _ = density_lower_bound(spec.tail(), bits, bit_cap)
    q = _floor_dyadic(q, bits)
    value = binomial_tail(cells, _min_good(cells, m1), q)
    return _floor_dyadic(value, bits), False


def block_extension_size(p: int, base_scale: int, top_scale: int, margin: int, base_levels: dict[int, int]) -> int:
    """|G[g, margin]| = prod over cells of |A_{g(tau)}(top - base, margin)|.

    ``base_levels`` maps residue -> number of cells of g with that value.
    """
    d = top_scale - base_scale
    out = 1
    for value, count in base_levels.items():
        out *= count_niveau(NiveauSpec(p, value, ((d, margin),))) ** count
    return out


def middle_band_size(n: int, margin: int) -> int:
    """|Z(n, m)|: elements of G_2^(n) in neither A_0(n, m) nor A_1(n, m), counted directly."""
    cells = 2**n
    return sum(comb(cells, w) for w in range(cells + 1)
               if not threshold_exceeded(w, cells, margin) and not threshold_exceeded(cells - w, cells, margin))
