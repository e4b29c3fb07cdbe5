"""The end-to-end construction: scales, the witnesses S and A, and their verification.

S is the union of the balls V(n_j, k_j) and A the union of the niveau sets
A_1((n_1, m_1), ..., (n_l, m_l)) with m_j = 3 k_j, both truncated after L
levels.  Adding a ball element to a member of A lands in the superset

    A' = union over l of A_0((n_1, m_1 - k_1), ..., (n_l, m_l - k_l)),

so (A + S) - (A + S) avoiding S follows from A' - A' avoiding S.  That is the
form of the second disjointness check: it never builds the sumset.

Exhaustive checks need the whole group in memory (n_L <= 4 for p = 2).  The
sampled checks draw coefficient vectors of length 2^(n_L), which is fine up
to n_L of about 12; the scales chosen for a density target near 1/2 are far
beyond that, so the pipeline certifies their densities exactly or by
certified lower bounds and runs the pair checks on small analog scales.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .counting import count_hamming, count_niveau, density_lower_bound, exact_density_feasible
from .group import (
    DEFAULT_ENUMERATION_CAP,
    GroupElement,
    RandomStream,
    ScaleTooLargeError,
    enumerable,
    group_order,
    is_at_scale,
    one,
    reduce_scale,
)
from .lemmas import lemma_suite
from .recurrence import (
    INCONCLUSIVE,
    PROVEN,
    REFUTED,
    CayleyGraph,
    Verdict,
    add_codes,
    difference_avoids,
    sampled_difference_check,
    sampled_sum_containment,
)
from .sets import FiniteSet, HammingBallSpec, NiveauSpec, SetPredicate, materialize, predicate
from .witness import EXHAUSTIVE, SAMPLED, Check, WitnessReport

MARGIN_FACTOR = 3
DEFAULT_SCALE_CAP = 64
# longest coefficient vector the sampled checks will draw
SAMPLE_CELL_CAP = 2**12
DEFAULT_TRIALS = 100_000
ANALOG_SCALES = (4, 8)
EXHAUSTIVE_ANALOG = ((1,), (4,))


class CapExhaustedError(ValueError):
    """No scale up to the cap reaches the density target."""

    def __init__(self, level: int, best: Fraction, best_scale: Optional[int], n_cap: int, scan: list[dict]):
        self.level, self.best, self.best_scale, self.n_cap, self.scan = level, best, best_scale, n_cap, scan
        super().__init__(
            f"cap exhausted at level {level}: best density {float(best):.6g} "
            f"at n={best_scale}, below the target; scale cap {n_cap}"
        )


@dataclass(frozen=True)
class ConstructionParams:
    epsilon: Fraction
    k_seq: tuple[int, ...]
    n_seq: tuple[int, ...]
    scan: tuple = field(default=(), compare=False)

    def __post_init__(self) -> None:
        eps = Fraction(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "k_seq", tuple(int(k) for k in self.k_seq))
        object.__setattr__(self, "n_seq", tuple(int(n) for n in self.n_seq))
        if not 0 < eps < Fraction(1, 2):
            raise ValueError(f"epsilon must lie in (0, 1/2), got {eps}")
        _check_increasing(self.k_seq, "k_seq", positive=True)
        if self.n_seq:
            _check_increasing(self.n_seq, "n_seq", positive=True)
            if len(self.n_seq) != len(self.k_seq):
                raise ValueError("n_seq and k_seq must have the same length")

    @property
    def m_seq(self) -> tuple[int, ...]:
        return tuple(MARGIN_FACTOR * k for k in self.k_seq)

    @property
    def levels(self) -> int:
        return len(self.k_seq)

    @property
    def scale(self) -> int:
        return self.n_seq[-1]

    @property
    def target(self) -> Fraction:
        return Fraction(1, 2) - self.epsilon

    def chain(self, level: int) -> tuple[tuple[int, int], ...]:
        self._level(level)
        return tuple(zip(self.n_seq[:level], self.m_seq[:level]))

    def lowered_chain(self, level: int) -> tuple[tuple[int, int], ...]:
        """Margins m_j - k_j: the chain of the set containing A + S."""
        self._level(level)
        return tuple((n, m - k) for n, m, k in zip(self.n_seq[:level], self.m_seq[:level], self.k_seq[:level]))

    def niveau(self, level: int, i: int = 1) -> NiveauSpec:
        return NiveauSpec(2, i, self.chain(level))

    def ball(self, j: int) -> HammingBallSpec:
        self._level(j)
        return HammingBallSpec.V(2, self.n_seq[j - 1], self.k_seq[j - 1])

    def _level(self, level: int) -> None:
        if not self.n_seq:
            raise ValueError("scales have not been chosen")
        if not 1 <= level <= self.levels:
            raise ValueError(f"level {level} outside 1..{self.levels}")

    def as_dict(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "k_seq": list(self.k_seq),
            "m_seq": list(self.m_seq),
            "n_seq": list(self.n_seq),
            "levels": self.levels,
            "truncation": f"unions over levels 1..{self.levels}",
        }


def _check_increasing(seq: Sequence[int], name: str, positive: bool) -> None:
    if not seq:
        raise ValueError(f"{name} must be nonempty")
    if positive and seq[0] < 1:
        raise ValueError(f"{name} entries must be positive")
    if any(b <= a for a, b in zip(seq, seq[1:])):
        raise ValueError(f"{name} must be strictly increasing: {tuple(seq)}")


def _level_density(spec: NiveauSpec) -> tuple[Fraction, bool]:
    return density_lower_bound(spec, bit_cap=EXACT_SCAN_BITS)


# exact counts during the scale scan stop here; larger scales use certified bounds
EXACT_SCAN_BITS = 2**14


def choose_scales(epsilon, k_seq: Sequence[int], L: Optional[int] = None,
                  n_cap: int = DEFAULT_SCALE_CAP) -> ConstructionParams:
    """Pick each n_l as the smallest scale whose level-l density reaches 1/2 - epsilon.

    Densities are exact rationals: exact counts while affordable, certified
    lower bounds after that (the ``exact`` flag in the scan says which).
    """
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError(f"epsilon must lie in (0, 1/2), got {eps}")
    k_seq = tuple(int(k) for k in k_seq)
    if L is not None:
        if L > len(k_seq):
            raise ValueError(f"L = {L} exceeds the {len(k_seq)} radii given")
        k_seq = k_seq[:L]
    _check_increasing(k_seq, "k_seq", positive=True)
    target = Fraction(1, 2) - eps
    n_seq: list[int] = []
    scan: list[dict] = []
    for level, k in enumerate(k_seq, start=1):
        chain = tuple(zip(n_seq, (MARGIN_FACTOR * x for x in k_seq)))
        start = n_seq[-1] + 1 if n_seq else 1
        best, best_n = Fraction(0), None
        chosen = None
        for n in range(start, n_cap + 1):
            spec = NiveauSpec(2, 1, chain + ((n, MARGIN_FACTOR * k),))
            dens, exact = _level_density(spec)
            scan.append({"level": level, "n": n, "density": str(dens), "approx": float(dens), "exact": exact})
            if dens > best or best_n is None:
                best, best_n = dens, n
            if dens >= target:
                chosen = n
                break
        if chosen is None:
            raise CapExhaustedError(level, best, best_n, n_cap, scan)
        n_seq.append(chosen)
    return ConstructionParams(eps, k_seq, tuple(n_seq), tuple(scan))


# -- witnesses ------------------------------------------------------------------------

def _block_constant(rows: np.ndarray, n_from: int, n_to: int) -> tuple[np.ndarray, np.ndarray]:
    """(which rows are constant on scale-n_from cylinders, their restriction to scale n_from)."""
    if n_from == n_to:
        return np.ones(rows.shape[0], dtype=bool), rows
    blocks = rows.reshape(rows.shape[0], 2**n_from, 2 ** (n_to - n_from))
    const = np.all(blocks == blocks[:, :, :1], axis=(1, 2))
    return const, np.ascontiguousarray(blocks[:, :, 0])


@dataclass
class _Part:
    pred: SetPredicate
    size: Optional[int]


def union_predicate(parts: Sequence[_Part], n: int, description: str) -> SetPredicate:
    """Union of lower-scale sets, all viewed inside G_2^(n).

    The batch sampler is exactly uniform on the union: pick a part with
    probability proportional to its size, draw from it, and keep the draw with
    probability 1 / (number of parts containing it).
    """
    p = parts[0].pred.p

    def part_rows(part: _Part, rows: np.ndarray) -> np.ndarray:
        const, low = _block_constant(rows, part.pred.n, n)
        out = np.zeros(rows.shape[0], dtype=bool)
        if const.any():
            out[const] = part.pred.rows_fn(low[const])
        return out

    def rows_fn(rows: np.ndarray) -> np.ndarray:
        out = np.zeros(rows.shape[0], dtype=bool)
        for part in parts:
            out |= part_rows(part, rows)
        return out

    def fn(g: GroupElement) -> bool:
        return any(_contains_lifted(part.pred, g) for part in parts)

    def mask_fn() -> np.ndarray:
        out = np.zeros(group_order(p, n), dtype=bool)
        for part in parts:
            out |= materialize(part.pred, n).mask
        return out

    batch_sampler = None
    sizes = [part.size for part in parts]
    if all(s is not None for s in sizes) and all(part.pred.batch_sampler for part in parts):
        weights = np.array([float(s) for s in sizes])
        if weights.sum() > 0:
            weights /= weights.sum()

            def batch_sampler(rng: RandomStream, size: int) -> np.ndarray:
                got: list[np.ndarray] = []
                have = 0
                while have < size:
                    picks = rng.generator.choice(len(parts), size=size, p=weights)
                    rows = np.empty((size, 2**n), dtype=np.uint8)
                    for idx, part in enumerate(parts):
                        sel = np.flatnonzero(picks == idx)
                        if sel.size:
                            drawn = part.pred.batch_sampler(rng, int(sel.size))
                            rows[sel] = np.repeat(drawn, 2 ** (n - part.pred.n), axis=1)
                    mult = np.zeros(size, dtype=np.int64)
                    for part in parts:
                        mult += part_rows(part, rows)
                    keep = rng.generator.random(size) * mult < 1
                    got.append(rows[keep])
                    have += int(keep.sum())
                return np.concatenate(got)[:size]

    return SetPredicate(p, n, fn, description, mask_fn=mask_fn, rows_fn=rows_fn, batch_sampler=batch_sampler)


def _contains_lifted(pred: SetPredicate, g: GroupElement) -> bool:
    if g.n == pred.n:
        return g in pred
    if g.n > pred.n:
        return is_at_scale(g, pred.n) and reduce_scale(g, pred.n) in pred
    return g in pred


def _size_or_none(spec) -> Optional[int]:
    if isinstance(spec, HammingBallSpec):
        return count_hamming(spec)
    if exact_density_feasible(spec):
        return count_niveau(spec)
    return None


def witness_S(params: ConstructionParams) -> SetPredicate:
    """S = V(n_1, k_1) u ... u V(n_L, k_L) inside G_2^(n_L)."""
    parts = [_Part(predicate(params.ball(j)), _size_or_none(params.ball(j))) for j in range(1, params.levels + 1)]
    desc = " u ".join(params.ball(j).describe() for j in range(1, params.levels + 1))
    return union_predicate(parts, params.scale, desc)


def witness_A(params: ConstructionParams, level: Optional[int] = None) -> SetPredicate:
    """A truncated after ``level`` levels: the union of A_1(first l levels) for l <= level."""
    level = params.levels if level is None else level
    return _niveau_union(params, level, lambda l: params.niveau(l), "A")


def superset_A(params: ConstructionParams, level: Optional[int] = None) -> SetPredicate:
    """A' = union of A_0 with margins m_j - k_j: contains A + S."""
    level = params.levels if level is None else level
    return _niveau_union(params, level, lambda l: NiveauSpec(2, 0, params.lowered_chain(l)), "A'")


def _niveau_union(params: ConstructionParams, level: int, spec_at: Callable[[int], NiveauSpec],
                  name: str) -> SetPredicate:
    specs = [spec_at(l) for l in range(1, level + 1)]
    parts = [_Part(predicate(s), _size_or_none(s)) for s in specs]
    desc = f"{name} = " + " u ".join(s.describe() for s in specs)
    return union_predicate(parts, params.n_seq[level - 1], desc)


# -- checks ---------------------------------------------------------------------------

def _enumerable(params: ConstructionParams, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    return enumerable(2, params.scale, cap)


def _samplable(params: ConstructionParams) -> bool:
    return 2**params.scale <= SAMPLE_CELL_CAP


def _resolve_mode(params: ConstructionParams, mode: Optional[str]) -> str:
    if mode is None:
        mode = EXHAUSTIVE if _enumerable(params) else SAMPLED
    mode = mode.upper()
    if mode == EXHAUSTIVE and not _enumerable(params):
        raise ScaleTooLargeError(f"exhaustive checks need n_L <= 4, got n_L = {params.scale}")
    if mode == SAMPLED and not _samplable(params):
        raise ScaleTooLargeError(
            f"sampled checks draw vectors of length 2^{params.scale}; the limit is {SAMPLE_CELL_CAP}"
        )
    if mode not in (EXHAUSTIVE, SAMPLED):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def _empty_levels(params: ConstructionParams) -> list[int]:
    out = []
    for l in range(1, params.levels + 1):
        spec = params.niveau(l)
        if exact_density_feasible(spec) and count_niveau(spec) == 0:
            out.append(l)
    return out


def cayley_independent(A: FiniteSet, S) -> Verdict:
    """A is independent in Cayley(S minus 0): no generator moves a member of A into A.

    Loops over generators rather than pairs, so it is an independent route to
    the same fact as difference_avoids.
    """
    graph = CayleyGraph(A.p, A.n, materialize(S, A.n))
    codes = A.codes()
    params = {"A": A.description, "graph": graph.describe(), "degree": graph.degree}
    for s in graph.generators():
        moved = add_codes(A.p, A.n, codes, np.int64(s))
        hit = A.mask[moved]
        if hit.any():
            j = int(np.argmax(hit))
            return Verdict(REFUTED, params,
                           {"type": "edge", "a": GroupElement(A.p, A.n, int(codes[j])).encode(),
                            "a2": GroupElement(A.p, A.n, int(moved[j])).encode(),
                            "generator": GroupElement(A.p, A.n, int(s)).encode()},
                           "an edge of the Cayley graph inside A", {"generators": graph.degree})
    return Verdict(PROVEN, params, None, f"no edge inside A for any of {graph.degree} generators",
                   {"generators": graph.degree})


def _sumset_mask(A: FiniteSet, S: FiniteSet) -> np.ndarray:
    out = np.zeros_like(A.mask)
    codes = A.codes()
    for s in S.codes():
        out[add_codes(A.p, A.n, codes, np.int64(s))] = True
    return out


def _rng(seed: int) -> RandomStream:
    return RandomStream(seed)


def verify_push(params: ConstructionParams, mode: Optional[str] = None, trials: int = DEFAULT_TRIALS,
                seed: int = 0) -> WitnessReport:
    """S + A lies in the superset A'."""
    mode = _resolve_mode(params, mode)
    report = WitnessReport("push", {"params": params.as_dict(), "mode": mode})
    A, S, target = witness_A(params), witness_S(params), superset_A(params)
    empty = _empty_levels(params)
    if empty:
        report.notes.append(f"degenerate: A is empty at levels {empty}; containment is vacuous there")
    if mode == EXHAUSTIVE:
        a_set, s_set, t_set = materialize(A), materialize(S), materialize(target)
        sums = _sumset_mask(a_set, s_set)
        outside = sums & ~t_set.mask
        if outside.any():
            bad = GroupElement(2, params.scale, int(np.argmax(outside)))
            verdict = Verdict(REFUTED, {"sumset": int(sums.sum())}, {"type": "sum outside target", "sum": bad.encode()},
                              "a + s misses A'")
        else:
            verdict = Verdict(PROVEN, {"A_size": a_set.cardinality, "S_size": s_set.cardinality},
                              None, f"all {a_set.cardinality * s_set.cardinality} sums enumerated",
                              {"pairs": a_set.cardinality * s_set.cardinality})
        report.checks.append(Check("push.sum_in_superset", verdict, f"enumeration at scale {params.scale}", mode,
                                   "S + A lies in A'"))
    else:
        verdict = sampled_sum_containment(A, S, target, trials, _rng(seed))
        report.checks.append(Check("push.sum_in_superset", verdict, "exact samplers for A and S, membership in A'",
                                   mode, "S + A lies in A'"))
    return report


def level_densities(params: ConstructionParams) -> list[dict]:
    rows = []
    for l in range(1, params.levels + 1):
        dens, exact = density_lower_bound(params.niveau(l))
        rows.append({
            "level": l,
            "set": params.niveau(l).describe(),
            "density": str(dens),
            "approx": float(dens),
            "exact": exact,
            "kind": "exact" if exact else "certified lower bound",
            "target": str(params.target),
            "meets_target": dens >= params.target,
        })
    return rows


def _density_checks(params: ConstructionParams, rows: list[dict]) -> list[Check]:
    out = []
    for row in rows:
        ok = row["meets_target"]
        verdict = Verdict(PROVEN if ok else REFUTED, {"level": row["level"], "set": row["set"]},
                          {"density": row["density"], "target": row["target"]},
                          f"{row['kind']} density {'>=' if ok else '<'} 1/2 - epsilon")
        out.append(Check(f"density.level{row['level']}", verdict,
                         "count_niveau" if row["exact"] else "certified binomial-tail lower bound",
                         EXHAUSTIVE, "density of A_1(first l levels) reaches 1/2 - epsilon"))
    return out


def _scan_checks(params: ConstructionParams) -> list[Check]:
    if not params.scan:
        return []
    bad = None
    for a, b in zip(params.scan, params.scan[1:]):
        if a["level"] == b["level"] and Fraction(b["density"]) < Fraction(a["density"]):
            bad = (a, b)
            break
    if bad:
        verdict = Verdict(REFUTED, {}, {"before": bad[0], "after": bad[1]}, "recorded density decreased")
    else:
        verdict = Verdict(PROVEN, {"points": len(params.scan)}, None,
                          "recorded densities are nondecreasing in n at every level")
    return [Check("scales.monotone", verdict, "exact rationals recorded by choose_scales", EXHAUSTIVE,
                  "level densities never decrease as the top scale grows")]


def e_report(params: ConstructionParams) -> tuple[list[Check], list[dict]]:
    """E = A u (A + 1): disjoint halves and |E| = 2|A|.

    Exhaustive at enumerable scales.  Otherwise, for p = 2, A_1 + 1 = A_0
    (adding 1 swaps the two residues) and a count cannot exceed half plus a
    margin for both residues, so |E| = |A_1| + |A_0|; both counts are taken
    independently and compared.
    """
    checks: list[Check] = []
    rows: list[dict] = []
    if _enumerable(params):
        a_set = materialize(witness_A(params))
        shifted = a_set.translate(one(2, params.scale))
        overlap = int(np.count_nonzero(a_set.mask & shifted.mask))
        e_size = int(np.count_nonzero(a_set.mask | shifted.mask))
        ok = overlap == 0 and e_size == 2 * a_set.cardinality
        verdict = Verdict(PROVEN if ok else REFUTED, {"scale": params.scale},
                          {"A": a_set.cardinality, "E": e_size, "overlap": overlap},
                          "|E| = 2|A| and A, A+1 disjoint" if ok else "E is not twice A")
        checks.append(Check("e_report.exhaustive", verdict, f"enumeration at scale {params.scale}", EXHAUSTIVE,
                            "A and A+1 are disjoint and |E| = 2|A|"))
        total = group_order(2, params.scale)
        rows.append({"level": params.levels, "A": a_set.cardinality, "E": e_size,
                     "density_A": str(Fraction(a_set.cardinality, total)),
                     "density_E": str(Fraction(e_size, total))})
        return checks, rows
    for l in range(1, params.levels + 1):
        spec = params.niveau(l)
        if not exact_density_feasible(spec):
            low, _ = density_lower_bound(spec)
            rows.append({"level": l, "density_A_lower": str(low), "density_E_lower": str(2 * low),
                         "note": "count too large; density of E is twice the bound by the residue swap"})
            continue
        a1 = count_niveau(spec)
        a0 = count_niveau(spec.with_residue(0))
        ok = a1 == a0
        total = 2 ** (2**spec.scale)
        verdict = Verdict(PROVEN if ok else REFUTED, {"set": spec.describe()}, {"A_1": str(a1), "A_0": str(a0)},
                          "|A_1 + 1| = |A_0| = |A_1| and the halves are disjoint, so |E| = 2|A|")
        checks.append(Check(f"e_report.level{l}", verdict, "count_niveau for both residues", EXHAUSTIVE,
                            "A + 1 = A_0 is disjoint from A and as large"))
        rows.append({"level": l, "A": str(a1), "E": str(a1 + a0),
                     "density_A": str(Fraction(a1, total)), "density_E": str(Fraction(a1 + a0, total))})
    return checks, rows


def verify_main(params: ConstructionParams, mode: Optional[str] = None, trials: int = DEFAULT_TRIALS,
                seed: int = 0, check_target: Optional[bool] = None) -> WitnessReport:
    """Densities, both disjointness checks, the push containment and the E-report.

    ``mode`` is EXHAUSTIVE (n_L <= 4), SAMPLED (n_L <= 12) or None for the
    best available; at larger scales only densities and the E-report run.
    Densities are compared with 1/2 - epsilon as checks only when
    ``check_target`` holds (by default, when choose_scales picked the scales);
    otherwise the comparison is just recorded.
    """
    if check_target is None:
        check_target = bool(params.scan)
    report = WitnessReport("main", {"params": params.as_dict(), "trials": trials, "seed": seed})
    rows = level_densities(params)
    report.densities.extend(rows)
    report.checks.extend(_scan_checks(params))
    if check_target:
        report.checks.extend(_density_checks(params, rows))
    e_checks, e_rows = e_report(params)
    report.checks.extend(e_checks)
    report.parameters["e_report"] = e_rows
    report.notes.append(
        "E-report uses the union A u (A + 1); the additivity statement it mirrors is read as a union"
    )
    empty = _empty_levels(params)
    if empty:
        report.notes.append(f"degenerate: A is empty at levels {empty}; disjointness there is vacuous")
    if mode is None and not (_enumerable(params) or _samplable(params)):
        report.parameters["mode"] = "densities only"
        report.notes.append(
            f"n_L = {params.scale}: elements have 2^{params.scale} coefficients, too many to enumerate or sample; "
            "pair checks run on analog scales"
        )
        return report
    mode = _resolve_mode(params, mode)
    report.parameters["mode"] = mode
    A, S, Ap = witness_A(params), witness_S(params), superset_A(params)
    if mode == EXHAUSTIVE:
        a_set, s_set, ap_set = materialize(A), materialize(S), materialize(Ap)
        oracle = f"enumeration at scale {params.scale}"
        report.checks.append(Check("eq46.difference_avoids", difference_avoids(a_set, s_set), oracle, mode,
                                   "(A - A) meets S only trivially"))
        report.checks.append(Check("eq46.cayley_independent", cayley_independent(a_set, s_set), oracle, mode,
                                   "A is independent in the Cayley graph of S"))
        report.checks.append(Check("eq47.superset_avoids", difference_avoids(ap_set, s_set), oracle, mode,
                                   "(A' - A') avoids S, with A' containing A + S"))
        sums = FiniteSet(2, params.scale, _sumset_mask(a_set, s_set), "A + S")
        report.checks.append(Check("eq47.sumset_avoids", difference_avoids(sums, s_set), oracle, mode,
                                   "(A + S) - (A + S) avoids S, sumset built directly"))
    else:
        rng = _rng(seed)
        report.checks.append(Check("eq46.sampled", sampled_difference_check(A, S, trials, rng),
                                   "exact samplers; a in A, s in S, test a - s in A", mode,
                                   "(A - A) avoids S on sampled pairs"))
        report.checks.append(Check("eq47.sampled", sampled_difference_check(Ap, S, trials, rng),
                                   "exact samplers; a in A', s in S, test a - s in A'", mode,
                                   "(A' - A') avoids S on sampled pairs"))
    push = verify_push(params, mode, trials, seed + 1)
    report.checks.extend(push.checks)
    report.notes.extend(push.notes)
    return report


def construct(epsilon, k_seq: Sequence[int], L: Optional[int] = None, n_cap: int = DEFAULT_SCALE_CAP,
              trials: int = DEFAULT_TRIALS, seed: int = 0,
              analog_scales: Sequence[int] = ANALOG_SCALES, mode: Optional[str] = None,
              n_seq: Optional[Sequence[int]] = None) -> WitnessReport:
    """Full pipeline: choose scales, certify densities, then run the pair checks on analogs.

    The sampled analog uses the same radii with the given small scales; the
    exhaustive analog is the single level (n, k) = (4, 1).  ``mode`` None runs
    both analogs, SAMPLED or EXHAUSTIVE only that one.  Explicit ``n_seq``
    skips the scale search; the densities are still held to 1/2 - epsilon.
    """
    mode = mode.upper() if mode else None
    if mode not in (None, SAMPLED, EXHAUSTIVE):
        raise ValueError(f"unknown mode {mode!r}")
    if n_seq is not None:
        ks = tuple(k_seq)[:L] if L is not None else tuple(k_seq)
        params = ConstructionParams(epsilon, ks, tuple(n_seq))
    else:
        params = choose_scales(epsilon, k_seq, L, n_cap)
    report = WitnessReport("construction", {
        "params": params.as_dict(),
        "trials": trials,
        "seed": seed,
        "mode": mode or "auto",
        "scan": list(params.scan),
    })
    main_mode = mode if mode and (_samplable(params) if mode == SAMPLED else _enumerable(params)) else None
    main = verify_main(params, main_mode, trials, seed, check_target=True)
    _merge(report, main, "")
    if mode in (None, SAMPLED):
        ks = params.k_seq[:len(analog_scales)]
        analog = ConstructionParams(params.epsilon, ks, tuple(analog_scales[:len(ks)]))
        report.parameters["sampled_analog"] = analog.as_dict()
        sampled = verify_main(analog, SAMPLED, trials, seed)
        _merge(report, sampled, "analog.sampled.")
    if mode in (None, EXHAUSTIVE):
        exhaustive = ConstructionParams(params.epsilon, EXHAUSTIVE_ANALOG[0], EXHAUSTIVE_ANALOG[1])
        report.parameters["exhaustive_analog"] = exhaustive.as_dict()
        full = verify_main(exhaustive, EXHAUSTIVE)
        _merge(report, full, "analog.exhaustive.")
    return report


def _merge(report: WitnessReport, part: WitnessReport, prefix: str) -> None:
    for check in part.checks:
        report.checks.append(Check(prefix + check.name, check.verdict, check.oracle, check.mode, check.description))
    label = prefix.rstrip(".")
    report.densities.extend({**row, "analog": label} if label else row for row in part.densities)
    for note in part.notes:
        if note in report.notes:
            continue
        note = f"[{label}] {note}" if label else note
        if note not in report.notes:
            report.notes.append(note)
    if "e_report" in part.parameters:
        report.parameters[(prefix or "") + "e_report"] = part.parameters["e_report"]


__all__ = [
    "ConstructionParams",
    "CapExhaustedError",
    "choose_scales",
    "witness_S",
    "witness_A",
    "superset_A",
    "union_predicate",
    "verify_push",
    "verify_main",
    "level_densities",
    "e_report",
    "cayley_independent",
    "construct",
    "lemma_suite",
]
