"""Element algebra for the finite groups G_p^(n).

An element of G_p^(n) is a function on the 2^n cylinders of scale n with
values in F_p.  Cylinder ``tau`` (a 0/1 string of length n) sits at index
``int(tau, 2)``: the first letter is the most significant bit, so a
restriction to a prefix is a contiguous slice of the coefficient vector.

Elements are stored as a single integer ``code``, the coefficient vector read
as a base-p number with coefficient 0 as the most significant digit.  For
p = 2 this is a packed bitvector and addition is XOR.  The code doubles as
the element's position in :func:`enumerate_group`.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

DEFAULT_ENUMERATION_CAP = 2**24
RNG_ALGORITHM = "numpy.PCG64"


class ScaleTooLargeError(ValueError):
    """Raised when a group is too large to enumerate or materialize."""


@functools.lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"p must be prime, got {p!r}")


def check_scale(n: int) -> None:
    if n < 0:
        raise ValueError(f"scale must be >= 0, got {n}")


def group_order(p: int, n: int) -> int:
    return p ** (2**n)


def enumerable(p: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """|G_p^(n)| <= cap, decided without building p^(2^n) when it is obviously huge."""
    if n >= 64 or 2**n > cap.bit_length():
        return False
    return group_order(p, n) <= cap


def check_enumerable(p: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> None:
    if not enumerable(p, n, cap):
        raise ScaleTooLargeError(
            f"scale too large to enumerate: |G_{p}^({n})| = {p}^{2**n} exceeds the cap of {cap} elements"
        )


# -- binary strings (cylinder labels) ----------------------------------------

def string_index(tau: str) -> int:
    """Index of the cylinder ``tau``; the first letter is the most significant bit."""
    if tau and set(tau) - {"0", "1"}:
        raise ValueError(f"not a binary string: {tau!r}")
    return int(tau, 2) if tau else 0


def index_string(index: int, m: int) -> str:
    if not 0 <= index < 2**m:
        raise ValueError(f"index {index} out of range for length {m}")
    return format(index, f"0{m}b") if m else ""


def cylinders(m: int) -> list[str]:
    """All of Omega_m in index order."""
    return [index_string(i, m) for i in range(2**m)]


# -- digit helpers for odd p ------------------------------------------------

def _digits(code: int, p: int, length: int) -> list[int]:
    out = [0] * length
    for pos in range(length - 1, -1, -1):
        code, out[pos] = divmod(code, p)
    return out


def _undigits(digits: Sequence[int], p: int) -> int:
    code = 0
    for d in digits:
        code = code * p + int(d)
    return code


@dataclass(frozen=True)
class GroupElement:
    """An element of G_p^(n); see the module docstring for the encoding."""

    p: int
    n: int
    code: int

    def __post_init__(self) -> None:
        if not 0 <= self.code < group_order(self.p, self.n):
            raise ValueError(f"code {self.code} out of range for G_{self.p}^({self.n})")

    @classmethod
    def from_coeffs(cls, p: int, n: int, coeffs: Sequence[int]) -> "GroupElement":
        check_prime(p)
        check_scale(n)
        if len(coeffs) != 2**n:
            raise ValueError(f"expected {2**n} coefficients, got {len(coeffs)}")
        arr = np.asarray(coeffs, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= p):
            raise ValueError(f"coefficients must lie in 0..{p - 1}")
        if p == 2:
            pad = -arr.size % 8
            return cls(p, n, int.from_bytes(np.packbits(arr.astype(np.uint8)).tobytes(), "big") >> pad)
        return cls(p, n, _undigits(arr.tolist(), p))

    @property
    def size(self) -> int:
        """Number of scale-n cylinders, |Omega_n|."""
        return 2**self.n

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self.p == 2:
            return tuple(int(b) for b in format(self.code, f"0{self.size}b"))
        return tuple(_digits(self.code, self.p, self.size))

    def value_at(self, tau: str) -> int:
        """g([tau]) for a cylinder of scale exactly n."""
        if len(tau) != self.n:
            raise ValueError(f"cylinder length {len(tau)} != scale {self.n}")
        return self.coeffs[string_index(tau)]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __neg__(self) -> "GroupElement":
        return negate(self)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return add(self, negate(other))

    def encode(self) -> str:
        digits = "".join(str(c) for c in self.coeffs) if self.p <= 10 else ",".join(str(c) for c in self.coeffs)
        return f"p={self.p};n={self.n};{digits}"

    def __str__(self) -> str:
        return self.encode()


_ENCODING = re.compile(r"^p=(\d+);n=(\d+);([0-9,]*)$")


def decode(text: str) -> GroupElement:
    """Inverse of :meth:`GroupElement.encode`."""
    match = _ENCODING.match(text.strip())
    if not match:
        raise ValueError(f"malformed element encoding: {text!r}")
    p, n, body = int(match[1]), int(match[2]), match[3]
    coeffs = [int(c) for c in body.split(",")] if "," in body else [int(c) for c in body]
    return GroupElement.from_coeffs(p, n, coeffs)


# -- operations ---------------------------------------------------------------

def make_constant(p: int, n: int, x: int) -> GroupElement:
    """The constant function x*1 at scale n; x = 0 gives the identity."""
    check_prime(p)
    check_scale(n)
    if not 0 <= x < p:
        raise ValueError(f"residue {x} out of range for p={p}")
    size = 2**n
    if p == 2:
        return GroupElement(2, n, (1 << size) - 1 if x else 0)
    return GroupElement(p, n, x * (p**size - 1) // (p - 1))


def zero(p: int, n: int) -> GroupElement:
    return make_constant(p, n, 0)


def one(p: int, n: int) -> GroupElement:
    return make_constant(p, n, 1)


def _same_group(g: GroupElement, h: GroupElement) -> None:
    if g.p != h.p or g.n != h.n:
        raise ValueError(f"elements live in different groups: G_{g.p}^({g.n}) vs G_{h.p}^({h.n})")


def add(g: GroupElement, h: GroupElement) -> GroupElement:
    _same_group(g, h)
    if g.p == 2:
        return GroupElement(2, g.n, g.code ^ h.code)
    p = g.p
    return GroupElement(p, g.n, _undigits([(a + b) % p for a, b in zip(g.coeffs, h.coeffs)], p))


def negate(g: GroupElement) -> GroupElement:
    if g.p == 2:
        return g
    p = g.p
    return GroupElement(p, g.n, _undigits([(-a) % p for a in g.coeffs], p))


def subtract(g: GroupElement, h: GroupElement) -> GroupElement:
    return add(g, negate(h))


def embed(g: GroupElement, n_target: int) -> GroupElement:
    """Include g in G_p^(n_target) by duplicating each coefficient 2^(n_target - n) times."""
    if n_target < g.n:
        raise ValueError(f"cannot embed scale {g.n} into smaller scale {n_target}")
    if n_target == g.n:
        return g
    rep = 2 ** (n_target - g.n)
    if g.p == 2:
        bits = format(g.code, f"0{g.size}b")
        return GroupElement(2, n_target, int("".join(b * rep for b in bits), 2))
    return GroupElement(g.p, n_target, _undigits([c for c in g.coeffs for _ in range(rep)], g.p))


def restrict(g: GroupElement, tau: str) -> GroupElement:
    """g|_tau in G_p^(n - len(tau)): the coefficients on cylinders extending tau."""
    m = len(tau)
    if m >= g.n:
        raise ValueError(f"restriction string length {m} must be < scale {g.n}")
    block = 2 ** (g.n - m)
    b = string_index(tau)
    if g.p == 2:
        shift = g.size - (b + 1) * block
        return GroupElement(2, g.n - m, (g.code >> shift) & ((1 << block) - 1))
    return GroupElement(g.p, g.n - m, _undigits(g.coeffs[b * block:(b + 1) * block], g.p))


def blocks(g: GroupElement, m: int) -> list[GroupElement]:
    """[g|_tau for tau in Omega_m] in index order."""
    return [restrict(g, tau) for tau in cylinders(m)]


def level_count(g: GroupElement, i: int) -> int:
    """|g^{-1}(i)|_n, the number of scale-n cylinders on which g equals i."""
    if not 0 <= i < g.p:
        raise ValueError(f"residue {i} out of range for p={g.p}")
    if g.p == 2:
        ones = g.code.bit_count()
        return ones if i == 1 else g.size - ones
    return sum(1 for c in g.coeffs if c == i)


def is_at_scale(g: GroupElement, m: int) -> bool:
    """True when g is constant on every scale-m cylinder, i.e. g lies in G_p^(m)."""
    if m >= g.n:
        return True
    return all(len(set(b.coeffs)) == 1 for b in blocks(g, m))


def reduce_scale(g: GroupElement, m: int) -> GroupElement:
    """The element of G_p^(m) that embeds to g; raises if g is not constant on scale-m cylinders."""
    if m >= g.n:
        return g
    parts = blocks(g, m)
    values = []
    for b in parts:
        vals = set(b.coeffs)
        if len(vals) != 1:
            raise ValueError(f"element is not constant on scale-{m} cylinders")
        values.append(vals.pop())
    return GroupElement.from_coeffs(g.p, m, values)


def enumerate_group(p: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[GroupElement]:
    """Every element of G_p^(n) exactly once, in code order."""
    check_prime(p)
    check_scale(n)
    check_enumerable(p, n, cap)
    for code in range(group_order(p, n)):
        yield GroupElement(p, n, code)


class RandomStream:
    """Seeded source of randomness; one owner at a time."""

    def __init__(self, seed: int, algorithm: str = RNG_ALGORITHM):
        if algorithm != RNG_ALGORITHM:
            raise ValueError(f"unsupported RNG algorithm {algorithm!r}")
        self.seed = int(seed)
        self.algorithm = algorithm
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def randbits(self, k: int) -> int:
        if k == 0:
            return 0
        nbytes = (k + 7) // 8
        return int.from_bytes(self.generator.bytes(nbytes), "big") >> (8 * nbytes - k)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound), exact for arbitrarily large bounds."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        k = bound.bit_length()
        while True:
            x = self.randbits(k)
            if x < bound:
                return x

    def sample(self, population: int, k: int) -> list[int]:
        """k distinct integers from range(population), in random order."""
        return [int(x) for x in self.generator.choice(population, size=k, replace=False)] if k else []

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, algorithm={self.algorithm!r})"


def random_element(p: int, n: int, rng: RandomStream) -> GroupElement:
    check_prime(p)
    check_scale(n)
    if p == 2:
        return GroupElement(2, n, rng.randbits(2**n))
    digits = rng.generator.integers(0, p, size=2**n)
    return GroupElement(p, n, _undigits(digits.tolist(), p))
