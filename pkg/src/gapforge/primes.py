"""Prime tables, primality, primorials, gap scanning and smooth-number bounds."""
from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SEGMENT_ODDS = 1 << 20

# Deterministic for n < 3.3e24 (Sorenson & Webster); covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_U64 = 1 << 64
PROBABLE_ROUNDS = 64


class DomainError(ValueError):
    """An iterated logarithm left the positive reals."""


class RankinWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# Sieving


def _small_sieve(limit: int) -> np.ndarray:
    """All primes <= limit (plain Eratosthenes, used for base primes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    mark = np.ones(limit + 1, dtype=bool)
    mark[:2] = False
    mark[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if mark[p]:
            mark[p * p :: 2 * p] = False
    return np.flatnonzero(mark).astype(np.int64)


def sieve_segment(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi), ascending.

    Odd-only segmented sieve; each segment holds ``SEGMENT_ODDS`` odd numbers.
    """
    return sieve_array(lo, hi).tolist()


def sieve_array(lo: int, hi: int) -> np.ndarray:
    lo = max(lo, 0)
    if hi <= lo or hi <= 2:
        return np.zeros(0, dtype=np.int64)
    base = _small_sieve(math.isqrt(hi - 1) + 1)[1:]  # odd base primes
    chunks = []
    if lo <= 2 < hi:
        chunks.append(np.array([2], dtype=np.int64))
    start = max(lo, 3) | 1
    while start < hi:
        stop = min(start + 2 * SEGMENT_ODDS, hi)
        n_odd = (stop - start + 1) // 2
        mark = np.ones(n_odd, dtype=bool)
        for p in base:
            p = int(p)
            pp = p * p
            if pp >= stop:
                break
            first = max(pp, (start + p - 1) // p * p)
            if first % 2 == 0:
                first += p
            if first < stop:
                mark[(first - start) // 2 :: p] = False
        if start == 1:
            mark[0] = False
        chunks.append(start + 2 * np.flatnonzero(mark).astype(np.int64))
        start = stop if stop % 2 else stop + 1
    if not chunks:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(chunks)


@dataclass(frozen=True)
class PrimeTable:
    """Immutable table of the primes <= limit."""

    limit: int
    primes: tuple[int, ...]

    @classmethod
    def build(cls, limit: int) -> "PrimeTable":
        return cls(limit, tuple(sieve_segment(0, limit + 1)))

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def below(self, x: float) -> list[int]:
        import bisect

        return list(self.primes[: bisect.bisect_left(self.primes, x)])


@lru_cache(maxsize=32)
def primes_upto(limit: int) -> tuple[int, ...]:
    return tuple(sieve_segment(0, int(limit) + 1))


def primes_below(x: float) -> list[int]:
    """Primes p < x."""
    if x <= 2:
        return []
    return sieve_segment(0, math.ceil(x))


# ---------------------------------------------------------------------------
# Primality


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(n: int) -> tuple[bool, bool]:
    """Return ``(is_prime, proven)``.

    ``proven`` is False only for inputs of 64 bits or more, where the answer
    comes from random-base Miller-Rabin and is "probable prime".
    """
    if n < 2:
        return False, True
    for p in _MR_BASES:
        if n % p == 0:
            return n == p, True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _U64:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES), True
    # seeded by n so repeated calls agree
    rng = random.Random(n)
    for _ in range(PROBABLE_ROUNDS):
        if not _mr_round(n, d, s, rng.randrange(2, n - 1)):
            return False, True
    return True, False


def is_prime(n: int) -> bool:
    return primality(n)[0]


def next_prime(n: int) -> int:
    """Smallest prime > n."""
    m = max(n + 1, 2)
    while not is_prime(m):
        m += 1
    return m


def prev_prime(n: int) -> int | None:
    """Largest prime <= n, or None."""
    m = n
    while m >= 2:
        if is_prime(m):
            return m
        m -= 1
    return None


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (small inputs only)."""
    out: dict[int, int] = {}
    n = abs(n)
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    r = n
    for p in factorize(n):
        r -= r // p
    return r


def primorial(x: float) -> int:
    """Product of the primes strictly below x."""
    return math.prod(primes_below(x))


# ---------------------------------------------------------------------------
# Logs and gap normalisation


def iterated_log(x: float, k: int) -> float:
    """log applied k times; raises DomainError if an intermediate value is <= 0."""
    if k < 1:
        raise ValueError("k must be positive")
    v = x
    for _ in range(k):
        if v <= 0:
            raise DomainError(f"log of non-positive value {v}")
        v = math.log(v)
    return v


def rankin_normalization(log_x: float) -> float:
    """log X log2 X log4 X / (log3 X)^2 given log X (lets huge X stay finite)."""
    l2 = iterated_log(log_x, 1)
    l3 = iterated_log(l2, 1)
    l4 = iterated_log(l3, 1)
    if l4 <= 0:
        raise DomainError("log4 X must be positive")
    return log_x * l2 * l4 / (l3 * l3)


def rankin_lower_bound(X: float) -> float:
    """Rankin's normalisation of G(X), without the unspecified constant."""
    if X <= 1:
        raise DomainError("X must exceed 1")
    return rankin_normalization(math.log(X))


@dataclass(frozen=True)
class GapRecord:
    p_lo: int
    p_hi: int
    gap: int
    merit: float
    rankin_merit: float  # nan when p_lo is below the log4 domain

    @classmethod
    def from_pair(cls, p_lo: int, p_hi: int) -> "GapRecord":
        gap = p_hi - p_lo
        merit = gap / math.log(p_lo) if p_lo > 1 else math.inf
        try:
            rm = gap / rankin_lower_bound(p_lo)
        except DomainError:
            rm = math.nan
        return cls(p_lo, p_hi, gap, merit, rm)


def max_gap(X: int) -> GapRecord:
    """Largest gap between consecutive primes with p_hi <= X (ties: smallest p_lo)."""
    ps = sieve_array(0, X + 1)
    if len(ps) < 2:
        raise ValueError(f"fewer than two primes <= {X}")
    gaps = np.diff(ps)
    i = int(np.argmax(gaps))
    return GapRecord.from_pair(int(ps[i]), int(ps[i + 1]))


def record_gaps(limit: int) -> list[GapRecord]:
    """Maximal gaps (first occurrences) among primes <= limit."""
    ps = sieve_array(0, limit + 1)
    out = []
    if len(ps) < 2:
        return out
    gaps = np.diff(ps)
    running = np.maximum.accumulate(gaps)
    prev = np.concatenate(([0], running[:-1]))
    for i in np.flatnonzero(gaps > prev):
        out.append(GapRecord.from_pair(int(ps[i]), int(ps[i + 1])))
    return out


def all_gaps(limit: int) -> list[GapRecord]:
    ps = sieve_array(0, limit + 1).tolist()
    return [GapRecord.from_pair(a, b) for a, b in zip(ps, ps[1:])]


# ---------------------------------------------------------------------------
# Smooth numbers and Rankin's trick


def largest_prime_factor_table(x: int) -> np.ndarray:
    """lpf[n] for 0 <= n <= x, with lpf[0] = lpf[1] = 1."""
    lpf = np.ones(x + 1, dtype=np.int64)
    for p in sieve_array(0, x + 1):
        lpf[p::p] = p
    return lpf


def psi_exact(x: int, y: int) -> int:
    """Number of n in [1, x] whose largest prime factor is <= y."""
    if x < 1:
        return 0
    if y >= x:
        return x
    if x <= 10**7:
        return int(np.count_nonzero(largest_prime_factor_table(x)[1:] <= y))
    return psi_recursive(x, y)


def psi_recursive(x: int, y: int) -> int:
    """Same count via psi(x, y) = 1 + sum_{p<=y} psi(x/p, p)."""
    ps = primes_upto(min(y, x))

    @lru_cache(maxsize=None)
    def rec(n: int, i: int) -> int:
        # smooth numbers <= n using primes ps[0..i]
        if n < 1:
            return 0
        total = 1
        for j in range(i + 1):
            p = ps[j]
            if p > n:
                break
            total += rec(n // p, j)
        return total

    return rec(x, len(ps) - 1)


def log_rankin_upper_bound(x: float, y: int, eta: float) -> float:
    if eta <= 0:
        raise ValueError("eta must be positive: product diverges")
    acc = eta * math.log(x)
    for p in primes_upto(y):
        f = -math.expm1(-eta * math.log(p))  # 1 - p^-eta
        if f <= 0:
            raise ValueError(f"non-positive factor at p={p}")
        acc -= math.log(f)
    return acc


def rankin_upper_bound(x: float, y: int, eta: float) -> float:
    """x^eta * prod_{p<=y} (1 - p^-eta)^-1, an upper bound for psi(x, y)."""
    if eta <= 1:
        warnings.warn(f"eta={eta} <= 1 is outside the classical range", RankinWarning)
    return math.exp(log_rankin_upper_bound(x, y, eta))


def golden_section_min(f, a: float, b: float, tol: float = 1e-6) -> float:
    invphi = (math.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2


def optimize_eta(x: int, y: int, lo: float = 1.0, hi: float = 8.0) -> tuple[float, float]:
    """Minimise Rankin's bound over eta in (lo, hi]; returns (eta*, bound)."""
    f = lambda e: log_rankin_upper_bound(x, y, e)
    eta = golden_section_min(f, lo + 1e-9, hi)
    return eta, math.exp(f(eta))


# ---------------------------------------------------------------------------
# Small analytic diagnostics


def twin_pair_sum(x: int, n: int) -> float:
    """Z(2n): sum of log p log p' over primes p < p' <= x with p' - p = 2n."""
    ps = primes_upto(x)
    pset = set(ps)
    h = 2 * n
    return math.fsum(math.log(p) * math.log(p + h) for p in ps if p + h in pset)


def prime_log_square_sum(x: int) -> float:
    """Z(0) = sum (log p)^2."""
    return math.fsum(math.log(p) ** 2 for p in primes_upto(x))


def circle_identity_check(x: int, L: int) -> tuple[float, float]:
    """Both sides of the orthogonality identity for the integral of |S|^2 T.

    lhs integrates |S(a)|^2 T(a) over [0, 1) with an exact equispaced rule
    (both factors are trigonometric polynomials); rhs is the Z-sum expansion.
    """
    ps = np.array(primes_upto(x), dtype=np.int64)
    n_pts = x + 4 * L + 1
    coeff = np.zeros(n_pts)
    coeff[ps] = np.log(ps)
    S = np.fft.ifft(coeff) * n_pts  # S(k/n) = sum log p e(pk/n)
    j = np.arange(-2 * L, 2 * L + 1)
    t = 2 * L + 1 - np.abs(j)
    alpha = np.arange(n_pts) / n_pts
    T = (t[None, :] * np.cos(2 * np.pi * 2 * j[None, :] * alpha[:, None])).sum(axis=1)
    lhs = float(np.mean(np.abs(S) ** 2 * T))
    rhs = (2 * L + 1) * prime_log_square_sum(x) + 2 * math.fsum(
        (2 * L + 1 - m) * twin_pair_sum(x, m) for m in range(1, 2 * L + 1)
    )
    return lhs, rhs


def theta_discrepancy(x: int, Q: int) -> float:
    """sum_{q<=Q} max_{(a,q)=1} |theta(x;q,a) - x/phi(q)|."""
    ps = np.array(primes_upto(x), dtype=np.int64)
    logs = np.log(ps) if len(ps) else np.zeros(0)
    total = 0.0
    for q in range(1, Q + 1):
        theta = np.bincount(ps % q, weights=logs, minlength=q) if len(ps) else np.zeros(q)
        units = [a for a in range(q) if math.gcd(a, q) == 1]
        expect = x / euler_phi(q)
        total += max(abs(theta[a] - expect) for a in units)
    return total


def twin_constant(limit: int) -> float:
    """Partial product 2 prod_{2<p<=limit} p(p-2)/(p-1)^2."""
    ps = sieve_array(3, limit + 1).astype(np.float64)
    return 2.0 * math.exp(math.fsum(np.log1p(-1.0 / (ps - 1.0) ** 2)))
