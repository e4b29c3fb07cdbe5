"""Hamming balls, niveau sets and their two representations.

A set is either a :class:`FiniteSet` (an explicit boolean mask indexed by
element code, only below the enumeration cap) or a :class:`SetPredicate`
(a membership function, optionally carrying a vectorized mask builder and an
exact sampler).  The vectorized builders work on the digit matrix of a
group: row ``c`` holds the coefficient vector of the element with code ``c``.
"""

from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import __version__
from .group import (
    DEFAULT_ENUMERATION_CAP,
    GroupElement,
    ScaleTooLargeError,
    check_enumerable,
    check_prime,
    embed,
    enumerate_group,
    group_order,
    make_constant,
    restrict,
    string_index,
)


# -- specs --------------------------------------------------------------------

@dataclass(frozen=True)
class HammingBallSpec:
    """center + U(n, k); center 0 gives U(n,k), center 1 gives V(n,k)."""

    p: int
    n: int
    k: int
    center: Optional[GroupElement] = None

    def __post_init__(self) -> None:
        check_prime(self.p)
        if self.n < 0:
            raise ValueError(f"scale must be >= 0, got {self.n}")
        if self.k < 0:
            raise ValueError(f"radius must be >= 0, got {self.k}")
        if self.center is not None:
            if self.center.p != self.p:
                raise ValueError("center lives over a different prime")
            if self.center.n > self.n:
                raise ValueError(f"center scale {self.center.n} exceeds ball scale {self.n}")

    @classmethod
    def U(cls, p: int, n: int, k: int) -> "HammingBallSpec":
        return cls(p, n, k, None)

    @classmethod
    def V(cls, p: int, n: int, k: int) -> "HammingBallSpec":
        return cls(p, n, k, make_constant(p, n, 1))

    @property
    def scale(self) -> int:
        return self.n

    @property
    def center_at_scale(self) -> GroupElement:
        if self.center is None:
            return make_constant(self.p, self.n, 0)
        return embed(self.center, self.n)

    def describe(self) -> str:
        c = self.center_at_scale
        if c.code == 0:
            name = "U"
        elif c == make_constant(self.p, self.n, 1):
            name = "V"
        else:
            return f"({c.encode()})+U(p={self.p};n={self.n};k={self.k})"
        return f"{name}(p={self.p};n={self.n};k={self.k})"


    def format(self) -> str:
        """Text form "ball=U;p=2;n=3;k=1" (or ball=V); other centers have no text form."""
        name = self.describe()[0]
        if name not in "UV":
            raise ValueError("only U and V balls have a text form")
        return f"ball={name};p={self.p};n={self.n};k={self.k}"

    @classmethod
    def parse(cls, text: str) -> "HammingBallSpec":
        fields = _fields(text)
        try:
            kind, p, n, k = fields["ball"], int(fields["p"]), int(fields["n"]), int(fields["k"])
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed ball spec {text!r}") from exc
        if set(fields) != {"ball", "p", "n", "k"} or kind not in ("U", "V"):
            raise ValueError(f"malformed ball spec {text!r}; expected ball=U|V;p=..;n=..;k=..")
        return cls.U(p, n, k) if kind == "U" else cls.V(p, n, k)


def _fields(text: str) -> dict[str, str]:
    fields = {}
    for part in text.strip().split(";"):
        if "=" not in part:
            raise ValueError(f"malformed spec {text!r}")
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    return fields


def parse_set_spec(text: str, strict: bool = False):
    """A ball ("ball=U;p=2;n=3;k=1") or a niveau set ("p=2;i=1;chain=(2,1),(4,1)")."""
    if text.strip().startswith("ball="):
        return HammingBallSpec.parse(text)
    return NiveauSpec.parse(text, strict)


_CHAIN_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


@dataclass(frozen=True)
class NiveauSpec:
    """A_i(chain) for chain = ((n_1, m_1), ..., (n_l, m_l)).

    ``strict=True`` follows the reading where margins and scales are positive
    integers and rejects m = 0 or n = 0.
    """

    p: int
    i: int
    chain: tuple[tuple[int, int], ...]
    strict: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        check_prime(self.p)
        chain = tuple((int(n), int(m)) for n, m in self.chain)
        object.__setattr__(self, "chain", chain)
        if not chain:
            raise ValueError("niveau chain must be nonempty")
        if not 0 <= self.i < self.p:
            raise ValueError(f"residue {self.i} out of range for p={self.p}")
        prev = -1
        for n, m in chain:
            if n <= prev:
                raise ValueError(f"chain scales must be strictly increasing: {chain}")
            if n < 0 or m < 0:
                raise ValueError(f"chain entries must be >= 0: {chain}")
            if self.strict and (m == 0 or n == 0):
                raise ValueError(f"strict mode requires positive scales and margins: {chain}")
            prev = n

    @property
    def scale(self) -> int:
        return self.chain[-1][0]

    @property
    def levels(self) -> int:
        return len(self.chain)

    def tail(self) -> "NiveauSpec":
        """The chain ((n_2 - n_1, m_2), ..., (n_l - n_1, m_l)) with the same residue."""
        if self.levels < 2:
            raise ValueError("a single-level chain has no tail")
        n1 = self.chain[0][0]
        return NiveauSpec(self.p, self.i, tuple((n - n1, m) for n, m in self.chain[1:]), self.strict)

    def prefix(self, length: int) -> "NiveauSpec":
        return NiveauSpec(self.p, self.i, self.chain[:length], self.strict)

    def with_residue(self, i: int) -> "NiveauSpec":
        return NiveauSpec(self.p, i % self.p, self.chain, self.strict)

    def with_margin(self, j: int, m: int) -> "NiveauSpec":
        """Replace the margin at (0-based) level j."""
        chain = list(self.chain)
        chain[j] = (chain[j][0], m)
        return NiveauSpec(self.p, self.i, tuple(chain), self.strict)

    def with_margins(self, margins: Sequence[int]) -> "NiveauSpec":
        if len(margins) != self.levels:
            raise ValueError("margin list length does not match the chain")
        return NiveauSpec(self.p, self.i, tuple((n, m) for (n, _), m in zip(self.chain, margins)), self.strict)

    def format(self) -> str:
        pairs = ",".join(f"({n},{m})" for n, m in self.chain)
        return f"p={self.p};i={self.i};chain={pairs}"

    def describe(self) -> str:
        return f"A_{self.i}[{self.format()}]"

    def __str__(self) -> str:
        return self.format()

    @classmethod
    def parse(cls, text: str, strict: bool = False) -> "NiveauSpec":
        fields = _fields(text)
        try:
            p, i, chain_text = int(fields["p"]), int(fields["i"]), fields["chain"]
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed niveau spec {text!r}") from exc
        pairs = _CHAIN_PAIR.findall(chain_text)
        if not pairs or _CHAIN_PAIR.sub("", chain_text).replace(",", "").strip():
            raise ValueError(f"malformed chain in {text!r}")
        return cls(p, i, tuple((int(n), int(m)) for n, m in pairs), strict)

    def last_level_nonempty_top(self) -> bool:
        """Whether the constant i*1 block lies in A_i at the deepest level.

        This is what adding a level needs for the nested family to grow: with
        d = n_l - n_{l-1} the top block is in A_i(d, m_l) iff m_l < 2^(d-1).
        """
        if self.levels < 2:
            return True
        d = self.chain[-1][0] - self.chain[-2][0]
        return 2 * self.chain[-1][1] < 2**d


def threshold_exceeded(count, cells: int, margin: int):
    """count > cells/2 + margin, in integer arithmetic; works elementwise on arrays."""
    return 2 * count > cells + 2 * margin


# -- scalar membership ----------------------------------------------------------

def _lift(g: GroupElement, n: int) -> GroupElement:
    if g.n < n:
        return embed(g, n)
    if g.n > n:
        raise ValueError(f"element scale {g.n} does not match set scale {n}")
    return g


def in_hamming(g: GroupElement, spec: HammingBallSpec) -> bool:
    if g.p != spec.p:
        raise ValueError("prime mismatch")
    g = _lift(g, spec.n)
    c = spec.center_at_scale
    if g.p == 2:
        return (g.code ^ c.code).bit_count() <= spec.k
    return sum(1 for a, b in zip(g.coeffs, c.coeffs) if a != b) <= spec.k


def _niveau_code_p2(code: int, i: int, chain: tuple[tuple[int, int], ...], base: int = 0) -> bool:
    n1, m1 = chain[0]
    n1 -= base
    cells = 2**n1
    if len(chain) == 1:
        ones = code.bit_count()
        return threshold_exceeded(ones if i == 1 else cells - ones, cells, m1)
    block = 2 ** (chain[-1][0] - chain[0][0])
    mask = (1 << block) - 1
    sub = chain[1:]
    good = 0
    need = cells // 2 + m1 + 1 if cells > 1 else m1 + 1
    left = cells
    for b in range(cells):
        piece = (code >> ((cells - 1 - b) * block)) & mask
        if _niveau_code_p2(piece, i, sub, chain[0][0]):
            good += 1
        left -= 1
        if good >= need or good + left < need:
            break
    return threshold_exceeded(good, cells, m1)


def _niveau_coeffs(coeffs: Sequence[int], i: int, chain: tuple[tuple[int, int], ...], base: int = 0) -> bool:
    n1, m1 = chain[0]
    cells = 2 ** (n1 - base)
    if len(chain) == 1:
        return threshold_exceeded(sum(1 for c in coeffs if c == i), cells, m1)
    block = 2 ** (chain[-1][0] - n1)
    good = sum(
        1 for b in range(cells) if _niveau_coeffs(coeffs[b * block:(b + 1) * block], i, chain[1:], n1)
    )
    return threshold_exceeded(good, cells, m1)


def in_niveau(g: GroupElement, spec: NiveauSpec) -> bool:
    if g.p != spec.p:
        raise ValueError("prime mismatch")
    g = _lift(g, spec.scale)
    if g.p == 2:
        return _niveau_code_p2(g.code, spec.i, spec.chain)
    return _niveau_coeffs(g.coeffs, spec.i, spec.chain)


# -- membership over batches of coefficient rows ----------------------------------------

def niveau_rows(digits: np.ndarray, i: int, chain: tuple[tuple[int, int], ...]) -> np.ndarray:
    """Membership of every row of a (rows, 2^n_l) coefficient matrix in A_i(chain)."""
    rows, width = digits.shape
    cells = 2 ** chain[0][0]
    if len(chain) == 1:
        counts = (digits == i).sum(axis=1)
    else:
        tail = tuple((nj - chain[0][0], mj) for nj, mj in chain[1:])
        inner = niveau_rows(digits.reshape(rows * cells, width // cells), i, tail)
        counts = inner.reshape(rows, cells).sum(axis=1)
    return threshold_exceeded(counts, cells, chain[0][1])


def hamming_rows(digits: np.ndarray, spec: "HammingBallSpec") -> np.ndarray:
    center = np.array(spec.center_at_scale.coeffs, dtype=digits.dtype)
    return (digits != center).sum(axis=1) <= spec.k


def in_block_extension(h: GroupElement, g: GroupElement, margin: int) -> bool:
    """h lies in G[g, margin]: every block h|tau is in A_{g(tau)}(h.n - g.n, margin)."""
    if h.p != g.p:
        raise ValueError("prime mismatch")
    if h.n <= g.n:
        raise ValueError(f"extension scale {h.n} must exceed base scale {g.n}")
    d = h.n - g.n
    values = g.coeffs
    if g.n == 0:
        return in_niveau(h, NiveauSpec(h.p, values[0], ((d, margin),)))
    for b, value in enumerate(values):
        block = restrict(h, format(b, f"0{g.n}b"))
        if not in_niveau(block, NiveauSpec(h.p, value, ((d, margin),))):
            return False
    return True


# -- vectorized masks over an enumerable group ----------------------------------

@functools.lru_cache(maxsize=16)
def digit_matrix(p: int, n: int) -> np.ndarray:
    """Row c is the coefficient vector of the element with code c."""
    check_enumerable(p, n)
    cells = 2**n
    codes = np.arange(group_order(p, n), dtype=np.int64)
    out = np.empty((codes.size, cells), dtype=np.uint8)
    if p == 2:
        for j in range(cells):
            out[:, j] = (codes >> (cells - 1 - j)) & 1
        return out
    rest = codes.copy()
    for j in range(cells - 1, -1, -1):
        out[:, j] = rest % p
        rest //= p
    return out


@functools.lru_cache(maxsize=16)
def _place_values(p: int, cells: int) -> np.ndarray:
    return np.array([p ** (cells - 1 - j) for j in range(cells)], dtype=np.int64)


def codes_from_digits(p: int, digits: np.ndarray) -> np.ndarray:
    return digits.astype(np.int64) @ _place_values(p, digits.shape[-1])


def translate_codes(p: int, n: int, codes: np.ndarray, shift: GroupElement) -> np.ndarray:
    """Codes of (element + shift) for every element code in ``codes``."""
    shift = _lift(shift, n)
    if p == 2:
        return np.asarray(codes, dtype=np.int64) ^ shift.code
    digits = digit_matrix(p, n)[np.asarray(codes, dtype=np.int64)]
    moved = (digits.astype(np.int64) + np.array(shift.coeffs, dtype=np.int64)) % p
    return codes_from_digits(p, moved)


def negate_codes(p: int, n: int, codes: np.ndarray) -> np.ndarray:
    if p == 2:
        return np.asarray(codes, dtype=np.int64)
    digits = digit_matrix(p, n)[np.asarray(codes, dtype=np.int64)].astype(np.int64)
    return codes_from_digits(p, (-digits) % p)


def _block_codes(p: int, digits: np.ndarray, blocks: int) -> list[np.ndarray]:
    cells = digits.shape[1]
    size = cells // blocks
    return [codes_from_digits(p, digits[:, b * size:(b + 1) * size]) for b in range(blocks)]


@functools.lru_cache(maxsize=256)
def _niveau_mask_cached(p: int, i: int, chain: tuple[tuple[int, int], ...]) -> np.ndarray:
    n1, m1 = chain[0]
    n = chain[-1][0]
    digits = digit_matrix(p, n)
    cells = 2**n1
    if len(chain) == 1:
        counts = (digits == i).sum(axis=1)
    else:
        tail = tuple((nj - n1, mj) for nj, mj in chain[1:])
        tail_mask = _niveau_mask_cached(p, i, tail)
        counts = np.zeros(digits.shape[0], dtype=np.int64)
        for codes in _block_codes(p, digits, cells):
            counts += tail_mask[codes]
    out = threshold_exceeded(counts, cells, m1)
    out.setflags(write=False)
    return out


def niveau_mask(spec: NiveauSpec) -> np.ndarray:
    return _niveau_mask_cached(spec.p, spec.i, spec.chain)


def hamming_mask(spec: HammingBallSpec) -> np.ndarray:
    digits = digit_matrix(spec.p, spec.n)
    center = np.array(spec.center_at_scale.coeffs, dtype=np.uint8)
    return (digits != center).sum(axis=1) <= spec.k


def block_extension_mask(g: GroupElement, n: int, margin: int) -> np.ndarray:
    """Mask of G[g, margin] inside the group at scale n."""
    if n <= g.n:
        raise ValueError(f"extension scale {n} must exceed base scale {g.n}")
    d = n - g.n
    digits = digit_matrix(g.p, n)
    out = np.ones(digits.shape[0], dtype=bool)
    for value, codes in zip(g.coeffs, _block_codes(g.p, digits, 2**g.n)):
        out &= niveau_mask(NiveauSpec(g.p, value, ((d, margin),)))[codes]
    return out


def embed_codes(p: int, n: int, codes: np.ndarray, n_target: int) -> np.ndarray:
    """Codes at scale n_target of the embeddings of scale-n elements."""
    if n_target == n:
        return np.asarray(codes, dtype=np.int64)
    digits = digit_matrix(p, n)[np.asarray(codes, dtype=np.int64)]
    return codes_from_digits(p, np.repeat(digits, 2 ** (n_target - n), axis=1))


def scale_mask(p: int, n: int, m: int) -> np.ndarray:
    """Mask of the subgroup G_p^(m) inside G_p^(n) (elements constant on scale-m cylinders)."""
    if m >= n:
        return np.ones(group_order(p, n), dtype=bool)
    out = np.zeros(group_order(p, n), dtype=bool)
    out[embed_codes(p, m, np.arange(group_order(p, m)), n)] = True
    return out


def sumset_mask(mask: np.ndarray, p: int, n: int, generators: Iterable[GroupElement], steps: int) -> np.ndarray:
    """mask + {sums of at most ``steps`` generators}, by repeated dilation.

    With the unit elements of a scale as generators this is mask + U(scale, steps).
    """
    current = np.asarray(mask, dtype=bool).copy()
    codes = np.arange(current.size, dtype=np.int64)
    gens = list(generators)
    shifted = [translate_codes(p, n, codes, g) for g in gens]
    for _ in range(steps):
        grown = current.copy()
        for target in shifted:
            # element c is reached if c - gen is in the set; for p=2 that is c + gen
            grown[target] |= current
        if np.array_equal(grown, current):
            break
        current = grown
    return current


def unit_elements(p: int, n_unit: int, n: int) -> list[GroupElement]:
    """Every x * (indicator of one scale-n_unit cylinder), x != 0, embedded at scale n."""
    out = []
    cells = 2**n_unit
    for b in range(cells):
        for x in range(1, p):
            coeffs = [0] * cells
            coeffs[b] = x
            out.append(embed(GroupElement.from_coeffs(p, n_unit, coeffs), n))
    return out


# -- set containers ---------------------------------------------------------------

@dataclass
class FiniteSet:
    """An explicit subset of G_p^(n), stored as a mask indexed by element code."""

    p: int
    n: int
    mask: np.ndarray
    description: str = ""

    def __post_init__(self) -> None:
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.mask.shape != (group_order(self.p, self.n),):
            raise ValueError("mask length does not match the group order")
        self._cardinality: Optional[int] = None

    @property
    def cardinality(self) -> int:
        if self._cardinality is None:
            self._cardinality = int(np.count_nonzero(self.mask))
        return self._cardinality

    def __len__(self) -> int:
        return self.cardinality

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return (self.p, self.n) == (other.p, other.n) and np.array_equal(self.mask, other.mask)

    __hash__ = None  # mutable mask

    def codes(self) -> np.ndarray:
        return np.flatnonzero(self.mask).astype(np.int64)

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self.p, self.n, int(c)) for c in self.codes()]

    def __contains__(self, g: GroupElement) -> bool:
        g = _lift(g, self.n)
        return bool(self.mask[g.code])

    def translate(self, shift: GroupElement) -> "FiniteSet":
        out = np.zeros_like(self.mask)
        out[translate_codes(self.p, self.n, self.codes(), shift)] = True
        return FiniteSet(self.p, self.n, out, f"({self.description})+{_lift(shift, self.n).encode()}")

    def negate(self) -> "FiniteSet":
        out = np.zeros_like(self.mask)
        out[negate_codes(self.p, self.n, self.codes())] = True
        return FiniteSet(self.p, self.n, out, f"-({self.description})")

    def union(self, other: "FiniteSet") -> "FiniteSet":
        self._same(other)
        return FiniteSet(self.p, self.n, self.mask | other.mask, f"{self.description} | {other.description}")

    def intersection(self, other: "FiniteSet") -> "FiniteSet":
        self._same(other)
        return FiniteSet(self.p, self.n, self.mask & other.mask, f"{self.description} & {other.description}")

    def difference(self, other: "FiniteSet") -> "FiniteSet":
        self._same(other)
        return FiniteSet(self.p, self.n, self.mask & ~other.mask, f"{self.description} - {other.description}")

    def without_zero(self) -> "FiniteSet":
        out = self.mask.copy()
        out[0] = False
        return FiniteSet(self.p, self.n, out, f"{self.description} minus 0")

    def issubset(self, other: "FiniteSet") -> bool:
        self._same(other)
        return not np.any(self.mask & ~other.mask)

    def isdisjoint(self, other: "FiniteSet") -> bool:
        self._same(other)
        return not np.any(self.mask & other.mask)

    def _same(self, other: "FiniteSet") -> None:
        if (self.p, self.n) != (other.p, other.n):
            raise ValueError("sets live in different groups")

    # run-length encoded persistence: header line, JSON metadata line, run lengths
    def save(self, path) -> None:
        flips = np.flatnonzero(np.diff(self.mask.astype(np.int8))) + 1
        bounds = np.concatenate(([0], flips, [self.mask.size]))
        runs = np.diff(bounds).tolist()
        if self.mask.size and self.mask[0]:
            runs = [0] + runs
        header = {
            "p": self.p,
            "n": self.n,
            "cardinality": self.cardinality,
            "spec": self.description,
            "library_version": __version__,
        }
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("NIVEAU-FINITESET-RLE 1\n")
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            fh.write(" ".join(str(r) for r in runs) + "\n")

    @classmethod
    def load(cls, path) -> "FiniteSet":
        with open(path, encoding="utf-8") as fh:
            magic = fh.readline().strip()
            if magic != "NIVEAU-FINITESET-RLE 1":
                raise ValueError(f"not a finite-set file: {path}")
            header = json.loads(fh.readline())
            runs = [int(x) for x in fh.readline().split()]
        mask = np.zeros(group_order(header["p"], header["n"]), dtype=bool)
        pos, value = 0, False
        for run in runs:
            if value:
                mask[pos:pos + run] = True
            pos += run
            value = not value
        if pos != mask.size:
            raise ValueError("run lengths do not cover the group")
        out = cls(header["p"], header["n"], mask, header.get("spec", ""))
        if out.cardinality != header["cardinality"]:
            raise ValueError("cardinality in header does not match the bitmap")
        return out


@dataclass
class SetPredicate:
    """A lazily evaluated subset of G_p^(n).

    ``mask_fn`` builds the full membership mask when the group is enumerable;
    ``sampler`` draws a uniform member (or ``None`` if the set is empty).
    ``rows_fn`` and ``batch_sampler`` are the same two services on coefficient
    matrices (one element per row), used by the sampled checks.
    """

    p: int
    n: int
    fn: Callable[[GroupElement], bool]
    description: str
    mask_fn: Optional[Callable[[], np.ndarray]] = None
    sampler: Optional[Callable[..., Optional[GroupElement]]] = None
    rows_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    batch_sampler: Optional[Callable[..., Optional[np.ndarray]]] = None

    def __contains__(self, g: GroupElement) -> bool:
        return bool(self.fn(_lift(g, self.n)))

    def contains(self, g: GroupElement) -> bool:
        return g in self


def predicate(spec) -> SetPredicate:
    """Lazy membership for a Hamming ball or niveau spec."""
    from .sampling import batch_sampler_for, sampler_for

    if isinstance(spec, HammingBallSpec):
        return SetPredicate(
            spec.p, spec.n, lambda g: in_hamming(g, spec), spec.describe(),
            mask_fn=lambda: hamming_mask(spec), sampler=sampler_for(spec),
            rows_fn=lambda d: hamming_rows(d, spec), batch_sampler=batch_sampler_for(spec),
        )
    if isinstance(spec, NiveauSpec):
        return SetPredicate(
            spec.p, spec.scale, lambda g: in_niveau(g, spec), spec.describe(),
            mask_fn=lambda: niveau_mask(spec), sampler=sampler_for(spec),
            rows_fn=lambda d: niveau_rows(d, spec.i, spec.chain), batch_sampler=batch_sampler_for(spec),
        )
    raise TypeError(f"no predicate for {type(spec).__name__}")


def materialize(obj, n: Optional[int] = None, cap: int = DEFAULT_ENUMERATION_CAP) -> FiniteSet:
    """Explicit mask of a spec or predicate, optionally embedded at a larger scale n."""
    if isinstance(obj, FiniteSet):
        base = obj
    else:
        pred = obj if isinstance(obj, SetPredicate) else predicate(obj)
        check_enumerable(pred.p, pred.n, cap)
        if pred.mask_fn is not None:
            mask = np.asarray(pred.mask_fn(), dtype=bool)
        else:
            mask = np.fromiter((pred.fn(g) for g in enumerate_group(pred.p, pred.n, cap)), dtype=bool)
        base = FiniteSet(pred.p, pred.n, mask, pred.description)
    if n is None or n == base.n:
        return base
    if n < base.n:
        raise ValueError(f"cannot materialize a scale-{base.n} set at smaller scale {n}")
    check_enumerable(base.p, n, cap)
    out = np.zeros(group_order(base.p, n), dtype=bool)
    out[embed_codes(base.p, base.n, base.codes(), n)] = True
    return FiniteSet(base.p, n, out, base.description)


def finite_set_from_elements(p: int, n: int, elements: Iterable[GroupElement], description: str = "") -> FiniteSet:
    mask = np.zeros(group_order(p, n), dtype=bool)
    for g in elements:
        mask[_lift(g, n).code] = True
    return FiniteSet(p, n, mask, description)


__all__ = [
    "parse_set_spec",
    "HammingBallSpec",
    "NiveauSpec",
    "FiniteSet",
    "SetPredicate",
    "ScaleTooLargeError",
    "in_hamming",
    "in_niveau",
    "in_block_extension",
    "niveau_mask",
    "niveau_rows",
    "hamming_rows",
    "hamming_mask",
    "block_extension_mask",
    "materialize",
    "predicate",
    "string_index",
]
