"""Uniform samplers for Hamming balls and niveau sets (and their complements).

Rejection sampling is hopeless for sets of tiny density, so these samplers
draw the level structure first with exact big-integer weights and then fill
in positions uniformly.  Each draw is exactly uniform on its target set.
"""

from __future__ import annotations

import bisect
import functools
import itertools
from math import comb
from typing import Optional, Sequence

import numpy as np

from .counting import _count, _min_good
from .group import GroupElement, RandomStream, add
from .sets import HammingBallSpec, NiveauSpec


def _weighted_index(cumulative: Sequence[int], rng: RandomStream) -> int:
    """Index j with probability proportional to cumulative[j] - cumulative[j - 1]."""
    return bisect.bisect_right(cumulative, rng.randbelow(cumulative[-1]))


def _fill_level(p: int, i: int, cells: int, hits: int, rng: RandomStream) -> np.ndarray:
    """Coefficients with exactly ``hits`` entries equal to i, the rest uniform over the other residues."""
    if p == 2:
        out = np.full(cells, 1 - i, dtype=np.int64)
    else:
        out = (i + rng.generator.integers(1, p, size=cells)) % p
    out[rng.sample(cells, hits)] = i
    return out


@functools.lru_cache(maxsize=256)
def _level_weights(p: int, i: int, chain: tuple[tuple[int, int], ...], inside: bool) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(admissible good-counts, cumulative exact weights) for the top level of the chain."""
    n1, m1 = chain[0]
    cells = 2**n1
    start = _min_good(cells, m1)
    ts = range(start, cells + 1) if inside else range(0, min(start, cells + 1))
    if len(chain) == 1:
        weights = [comb(cells, w) * (p - 1) ** (cells - w) for w in ts]
    else:
        tail = tuple((nj - n1, mj) for nj, mj in chain[1:])
        a = _count(p, i, tail)
        total = p ** (2 ** (chain[-1][0] - n1))
        weights = [comb(cells, t) * a**t * (total - a) ** (cells - t) for t in ts]
    return tuple(ts), tuple(itertools.accumulate(weights))


def _sample_coeffs(p: int, i: int, chain: tuple[tuple[int, int], ...], inside: bool, rng: RandomStream) -> Optional[np.ndarray]:
    ts, cumulative = _level_weights(p, i, chain, inside)
    if not ts or cumulative[-1] == 0:
        return None
    t = ts[_weighted_index(cumulative, rng)]
    n1 = chain[0][0]
    cells = 2**n1
    if len(chain) == 1:
        return _fill_level(p, i, cells, t, rng)
    tail = tuple((nj - n1, mj) for nj, mj in chain[1:])
    good = set(rng.sample(cells, t))
    pieces = []
    for b in range(cells):
        piece = _sample_coeffs(p, i, tail, b in good, rng)
        if piece is None:
            raise AssertionError("zero-weight block drawn")
        pieces.append(piece)
    return np.concatenate(pieces)


def sample_niveau(spec: NiveauSpec, rng: RandomStream, inside: bool = True) -> Optional[GroupElement]:
    """Uniform element of A_i(chain) (or of its complement); None if that set is empty."""
    coeffs = _sample_coeffs(spec.p, spec.i, spec.chain, inside, rng)
    if coeffs is None:
        return None
    return GroupElement.from_coeffs(spec.p, spec.scale, coeffs)


@functools.lru_cache(maxsize=256)
def _ball_weights(p: int, cells: int, k: int) -> tuple[int, ...]:
    return tuple(itertools.accumulate(comb(cells, j) * (p - 1) ** j for j in range(min(k, cells) + 1)))


def sample_hamming(spec: HammingBallSpec, rng: RandomStream) -> GroupElement:
    """Uniform element of center + U(n, k)."""
    cells = 2**spec.n
    j = _weighted_index(_ball_weights(spec.p, cells, spec.k), rng)
    coeffs = np.zeros(cells, dtype=np.int64)
    if spec.p == 2:
        coeffs[rng.sample(cells, j)] = 1
    else:
        coeffs[rng.sample(cells, j)] = rng.generator.integers(1, spec.p, size=j)
    return add(GroupElement.from_coeffs(spec.p, spec.n, coeffs), spec.center_at_scale)


# -- batched draws: one element per row of a coefficient matrix ------------------------

def _weighted_indices(cumulative: Sequence[int], rng: RandomStream, size: int) -> np.ndarray:
    total = cumulative[-1]
    if total < 2**62:
        x = rng.generator.integers(0, total, size=size, dtype=np.int64)
        return np.searchsorted(np.array(cumulative, dtype=np.int64), x, side="right")
    return np.array([_weighted_index(cumulative, rng) for _ in range(size)], dtype=np.int64)


def _random_subsets(rng: RandomStream, counts: np.ndarray, cells: int) -> np.ndarray:
    """Boolean (rows, cells) matrix; row r is a uniform subset of size counts[r]."""
    keys = rng.generator.random((counts.size, cells))
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    return ranks < counts[:, None]


def _fill_rows(p: int, i: int, chosen: np.ndarray, rng: RandomStream) -> np.ndarray:
    if p == 2:
        out = np.full(chosen.shape, 1 - i, dtype=np.uint8)
    else:
        out = ((i + rng.generator.integers(1, p, size=chosen.shape)) % p).astype(np.uint8)
    out[chosen] = i
    return out


def _sample_rows(p: int, i: int, chain: tuple[tuple[int, int], ...], inside: bool,
                 rng: RandomStream, size: int) -> Optional[np.ndarray]:
    if size == 0:
        return np.zeros((0, 2 ** chain[-1][0]), dtype=np.uint8)
    ts, cumulative = _level_weights(p, i, chain, inside)
    if not ts or cumulative[-1] == 0:
        return None
    counts = np.asarray(ts, dtype=np.int64)[_weighted_indices(cumulative, rng, size)]
    n1 = chain[0][0]
    cells = 2**n1
    chosen = _random_subsets(rng, counts, cells)
    if len(chain) == 1:
        return _fill_rows(p, i, chosen, rng)
    tail = tuple((nj - n1, mj) for nj, mj in chain[1:])
    width = 2 ** tail[-1][0]
    blocks = np.empty((size * cells, width), dtype=np.uint8)
    flat = chosen.reshape(-1)
    for flag in (True, False):
        where = np.flatnonzero(flat == flag)
        piece = _sample_rows(p, i, tail, flag, rng, where.size)
        if piece is None:
            raise AssertionError("zero-weight block drawn")
        blocks[where] = piece
    return blocks.reshape(size, cells * width)


def sample_niveau_rows(spec: NiveauSpec, rng: RandomStream, size: int, inside: bool = True) -> Optional[np.ndarray]:
    """``size`` independent uniform draws from A_i(chain) (or its complement), one per row."""
    return _sample_rows(spec.p, spec.i, spec.chain, inside, rng, size)


def sample_hamming_rows(spec: HammingBallSpec, rng: RandomStream, size: int) -> np.ndarray:
    cells = 2**spec.n
    cumulative = _ball_weights(spec.p, cells, spec.k)
    counts = _weighted_indices(cumulative, rng, size)
    chosen = _random_subsets(rng, counts, cells)
    if spec.p == 2:
        offset = chosen.astype(np.uint8)
    else:
        offset = np.where(chosen, rng.generator.integers(1, spec.p, size=chosen.shape), 0).astype(np.uint8)
    center = np.array(spec.center_at_scale.coeffs, dtype=np.uint8)
    return ((offset + center) % spec.p).astype(np.uint8)


def batch_sampler_for(spec):
    if isinstance(spec, NiveauSpec):
        return lambda rng, size: sample_niveau_rows(spec, rng, size)
    if isinstance(spec, HammingBallSpec):
        return lambda rng, size: sample_hamming_rows(spec, rng, size)
    raise TypeError(f"no sampler for {type(spec).__name__}")


def sampler_for(spec):
    if isinstance(spec, NiveauSpec):
        return lambda rng: sample_niveau(spec, rng)
    if isinstance(spec, HammingBallSpec):
        return lambda rng: sample_hamming(spec, rng)
    raise TypeError(f"no sampler for {type(spec).__name__}")
