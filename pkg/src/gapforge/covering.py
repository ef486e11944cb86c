"""Staged construction and verification of covering systems of (0, y].

Pipeline (desk-scale Erdos-Rankin): residue-zero stages, then a greedy stage,
then a weak stage in which every prime removes at least one survivor.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .primes import primes_below

STAGE_ZERO_SMALL = 1
STAGE_ZERO_LARGE = 2
STAGE_GREEDY = 3
STAGE_WEAK = 4


class DuplicateModulusError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CongruenceClass:
    modulus: int
    residue: int
    stage: int = 0

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} out of range mod {self.modulus}")

    def contains(self, v: int) -> bool:
        return v % self.modulus == self.residue


@dataclass(frozen=True)
class ResidualSet:
    y: int
    remaining: np.ndarray  # sorted int64 array, subset of (0, y]

    @classmethod
    def full(cls, y: int) -> "ResidualSet":
        return cls(y, np.arange(1, y + 1, dtype=np.int64))

    @classmethod
    def of(cls, y: int, elements) -> "ResidualSet":
        arr = np.unique(np.asarray(sorted(elements), dtype=np.int64))
        if len(arr) and (arr[0] < 1 or arr[-1] > y):
            raise ValueError("residual elements must lie in (0, y]")
        return cls(y, arr)

    def __len__(self):
        return len(self.remaining)

    def as_set(self) -> set[int]:
        return set(self.remaining.tolist())

    def without(self, cls_: CongruenceClass) -> "ResidualSet":
        r = self.remaining
        return ResidualSet(self.y, r[r % cls_.modulus != cls_.residue])


@dataclass
class CoveringSystem:
    y: int
    classes: list[CongruenceClass]
    complete: bool = False
    x: int | None = None
    residual: list[int] = field(default_factory=list)

    def __post_init__(self):
        mods = [c.modulus for c in self.classes]
        if len(set(mods)) != len(mods):
            dup = sorted(m for m in set(mods) if mods.count(m) > 1)
            raise DuplicateModulusError(f"repeated moduli {dup}")

    @property
    def moduli(self) -> list[int]:
        return [c.modulus for c in self.classes]


@dataclass(frozen=True)
class StagePlan:
    """Partition of the primes < x into the pipeline's stages.

    Defaults: primes <= x**small_exp and primes in (y', x) with
    y' = min(y, large_frac * x) get residue 0; of the remaining middle primes the
    largest ``weak_frac`` share (by count) go to the weak stage, the rest greedy.
    With these defaults the largest completable y never drops as x grows
    (checked for every x <= 200).
    """

    x: int
    y: int
    zero_small: tuple[int, ...]
    zero_large: tuple[int, ...]
    greedy: tuple[int, ...]
    weak: tuple[int, ...]

    @classmethod
    def default(cls, x: int, y: int, small_exp: float = 0.2, large_frac: float = 1.0,
                weak_frac: float = 0.1) -> "StagePlan":
        ps = primes_below(x)
        cut_small = x ** small_exp
        cut_large = min(y, large_frac * x)
        small = tuple(p for p in ps if p <= cut_small)
        large = tuple(p for p in ps if p > cut_large and p > cut_small)
        middle = [p for p in ps if cut_small < p <= cut_large]
        n_weak = int(round(weak_frac * len(middle)))
        split = len(middle) - n_weak
        return cls(x, y, small, large, tuple(middle[:split]), tuple(middle[split:]))

    def stages(self):
        return [
            (STAGE_ZERO_SMALL, self.zero_small),
            (STAGE_ZERO_LARGE, self.zero_large),
            (STAGE_GREEDY, self.greedy),
            (STAGE_WEAK, self.weak),
        ]


def _check_fresh(primes, used: set[int] | None):
    seen = set() if used is None else set(used)
    for p in primes:
        if p in seen:
            raise DuplicateModulusError(f"modulus {p} already used")
        seen.add(p)


def stage_residue_zero(R: ResidualSet, primes, stage: int = STAGE_ZERO_SMALL,
                       used: set[int] | None = None):
    """Residue 0 for every prime; drops all their multiples from R."""
    _check_fresh(primes, used)
    classes = [CongruenceClass(p, 0, stage) for p in primes]
    r = R.remaining
    if len(r) and classes:
        keep = np.ones(len(r), dtype=bool)
        for p in primes:
            keep &= r % p != 0
        r = r[keep]
    return classes, ResidualSet(R.y, r)


def stage_greedy(R: ResidualSet, primes, stage: int = STAGE_GREEDY,
                 used: set[int] | None = None):
    """Ascending primes; each takes the class holding most survivors (ties: smallest)."""
    _check_fresh(primes, used)
    classes = []
    r = R.remaining
    for p in sorted(primes):
        res = r % p
        h = int(np.argmax(np.bincount(res, minlength=p))) if len(r) else 0
        classes.append(CongruenceClass(p, h, stage))
        r = r[res != h]
    return classes, ResidualSet(R.y, r)


def stage_weak(R: ResidualSet, primes, stage: int = STAGE_WEAK,
               used: set[int] | None = None):
    """Pair the smallest survivor with each prime in ascending order.

    Returns ``(classes, R', hits)``; primes left over once R is empty get residue 0.
    """
    _check_fresh(primes, used)
    classes, hits = [], {}
    r = R.remaining
    for p in sorted(primes):
        if len(r):
            h = int(r[0]) % p
            mask = r % p == h
            hits[p] = int(mask.sum())
            r = r[~mask]
        else:
            h = 0
            hits[p] = 0
        classes.append(CongruenceClass(p, h, stage))
    return classes, ResidualSet(R.y, r), hits


@dataclass
class CoveringTrace:
    """Residual set entering each stage, kept for exactness checks."""

    system: CoveringSystem
    plan: StagePlan
    residuals: list[tuple[int, ResidualSet]]
    weak_hits: dict[int, int]


def build_erdos_covering(x: int, y: int, plan: StagePlan | None = None,
                         trace: bool = False):
    """Run zero -> zero -> greedy -> weak over the primes < x on (0, y]."""
    plan = plan or StagePlan.default(x, y)
    R = ResidualSet.full(y)
    classes: list[CongruenceClass] = []
    used: set[int] = set()
    residuals = [(0, R)]
    hits: dict[int, int] = {}
    for stage, primes in plan.stages():
        if stage == STAGE_WEAK:
            new, R, hits = stage_weak(R, primes, stage, used)
        elif stage == STAGE_GREEDY:
            new, R = stage_greedy(R, primes, stage, used)
        else:
            new, R = stage_residue_zero(R, primes, stage, used)
        classes += new
        used.update(primes)
        residuals.append((stage, R))
    cs = CoveringSystem(y, sorted(classes), len(R) == 0, x, R.remaining.tolist())
    if trace:
        return CoveringTrace(cs, plan, residuals, hits)
    return cs


def random_covering(x: int, y: int, rng: np.random.Generator, attempts: int = 200):
    """Randomised greedy covering: random prime order, random tie-breaking.

    Returns a complete CoveringSystem or None after ``attempts`` failures.
    """
    ps = primes_below(x)
    base = np.arange(1, y + 1, dtype=np.int64)
    for _ in range(attempts):
        order = list(rng.permutation(ps))
        r = base
        classes = []
        for p in order:
            p = int(p)
            if len(r):
                counts = np.bincount(r % p, minlength=p)
                best = np.flatnonzero(counts == counts.max())
                h = int(rng.choice(best))
                r = r[r % p != h]
            else:
                h = int(rng.integers(p))
            classes.append(CongruenceClass(p, h, STAGE_GREEDY))
        if not len(r):
            return CoveringSystem(y, sorted(classes), True, x, [])
    return None


def verify_covering(cs: CoveringSystem) -> tuple[bool, int | None]:
    """(True, None) if every integer of (0, y] lies in some class, else (False, first gap)."""
    if cs.y <= 0:
        return True, None
    covered = np.zeros(cs.y + 1, dtype=bool)
    for c in cs.classes:
        start = c.residue if c.residue > 0 else c.modulus
        covered[start :: c.modulus] = True
    missing = np.flatnonzero(~covered[1:])
    if len(missing):
        return False, int(missing[0]) + 1
    return True, None


def hitting_numbers(cs: CoveringSystem, R_before: ResidualSet) -> dict[int, int]:
    r = R_before.remaining
    return {c.modulus: int(np.count_nonzero(r % c.modulus == c.residue)) for c in cs.classes}


def exhaustive_cover_exists(primes, y: int) -> bool:
    """Brute force over all residue assignments (tiny instances only)."""
    if y <= 0:
        return True
    target = set(range(1, y + 1))
    for hs in itertools.product(*(range(p) for p in primes)):
        if all(any(u % p == h for p, h in zip(primes, hs)) for u in target):
            return True
    return False


def max_complete_y(x: int, y_max: int | None = None, **plan_kw) -> int:
    """Largest y <= y_max for which the default pipeline completes."""
    y_max = y_max if y_max is not None else 4 * x + 10
    best = 0
    for y in range(1, y_max + 1):
        cs = build_erdos_covering(x, y, StagePlan.default(x, y, **plan_kw))
        if cs.complete:
            best = y
    return best
