"""Admissible tuples, linear-form systems, local root counts and singular series."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .primes import is_prime, primes_upto


@dataclass(frozen=True)
class AdmissibleTuple:
    offsets: tuple[int, ...]

    def __post_init__(self):
        offs = tuple(sorted(self.offsets))
        if len(set(offs)) != len(offs):
            raise ValueError("offsets must be distinct")
        object.__setattr__(self, "offsets", offs)
        if not is_admissible(offs):
            raise ValueError(f"{offs} is not admissible")

    def __len__(self):
        return len(self.offsets)

    def __iter__(self):
        return iter(self.offsets)


def occupied_residues(offsets, p: int) -> int:
    return len({h % p for h in offsets})


def is_admissible(offsets) -> bool:
    """No prime p <= len(offsets) sees every residue class occupied."""
    offsets = list(offsets)
    if len(set(offsets)) != len(offsets):
        raise ValueError("offsets must be distinct")
    return all(occupied_residues(offsets, p) < p for p in primes_upto(len(offsets)))


def first_primes_tuple(r: int) -> AdmissibleTuple:
    """The r smallest primes exceeding r."""
    if r < 1:
        raise ValueError("r must be positive")
    out, n = [], r + 1
    while len(out) < r:
        if is_prime(n):
            out.append(n)
        n += 1
    return AdmissibleTuple(tuple(out))


@dataclass(frozen=True)
class LinearFormSet:
    """Forms L_i(n) = a_i n + b_i."""

    coeffs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if any(a == 0 for a, _ in self.coeffs):
            raise ValueError("leading coefficients must be nonzero")

    @classmethod
    def from_tuple(cls, offsets, scale: int = 1) -> "LinearFormSet":
        """n -> n + h_i * scale."""
        return cls(tuple((1, h * scale) for h in offsets))

    @classmethod
    def parse(cls, text: str) -> "LinearFormSet":
        """'1:0,1:2' -> {n, n+2}."""
        forms = []
        for part in text.split(","):
            a, b = part.split(":")
            forms.append((int(a), int(b)))
        return cls(tuple(forms))

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def values(self, n: int) -> list[int]:
        return [a * n + b for a, b in self.coeffs]


@dataclass(frozen=True)
class LocalRoots:
    p: int
    omega: int
    roots: tuple[int, ...]
    least_index: tuple[int, ...]  # 0-based index of the first form vanishing at each root


def omega_count(p: int, L: LinearFormSet) -> LocalRoots:
    """Roots of prod L_i mod p, each tagged with the least form index vanishing there."""
    first: dict[int, int] = {}
    for j, (a, b) in enumerate(L.coeffs):
        if a % p:
            root = (-b * pow(a, -1, p)) % p
            first.setdefault(root, j)
        elif b % p == 0:
            for n in range(p):
                first.setdefault(n, j)
    roots = tuple(sorted(first))
    return LocalRoots(p, len(roots), roots, tuple(first[r] for r in roots))


def omega_bruteforce(p: int, L: LinearFormSet) -> int:
    return sum(1 for n in range(p) if math.prod(L.values(n)) % p == 0)


def singular_series(L: LinearFormSet, B: int = 1, cutoff: int = 10_000,
                    exclude: int = 1) -> float:
    """prod over p <= cutoff, p not dividing B*exclude, of (1 - w(p)/p)(1 - 1/p)^-k."""
    k = L.k
    acc = 0.0
    for p in primes_upto(cutoff):
        if B % p == 0 or exclude % p == 0:
            continue
        w = omega_count(p, L).omega
        if w >= p:
            return 0.0
        acc += math.log1p(-w / p) - k * math.log1p(-1 / p)
    return math.exp(acc)


def singular_series_tail_log(k: int, cutoff: int) -> float:
    """Rough size of log of the omitted tail: sum_{p>cutoff} k^2/p^2 ~ k^2/(cutoff log cutoff)."""
    return k * k / (cutoff * math.log(cutoff))
