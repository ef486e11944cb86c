"""K-th power residues, sifted sets and the row scan of Maier's matrix.

Solvability of n = 1 - c^K (mod p) with p not dividing c reduces to
D | ind(1 - n), D = gcd(p - 1, K), via a discrete log to a primitive root.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .certificates import crt_assemble
from .primes import factorize, is_prime, next_prime, prev_prime, primality, primes_below, sieve_segment

MATRIX_BUDGET = 10**7


class BudgetError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Discrete logs


@lru_cache(maxsize=4096)
def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"{p} is not prime")


def discrete_log(a: int, g: int, p: int) -> int:
    """Baby-step giant-step: s in [0, p-2] with g^s = a (mod p)."""
    a %= p
    if a == 0:
        raise ValueError("0 has no index")
    n = p - 1
    m = math.isqrt(n) + 1
    table = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * g % p
    step = pow(g, -m, p) if p > 2 else 1
    gamma = a
    for i in range(m + 1):
        if gamma in table:
            return (i * m + table[gamma]) % n if n else 0
        gamma = gamma * step % p
    raise ValueError(f"no log of {a} base {g} mod {p}")


@dataclass(frozen=True)
class KPowerContext:
    p: int
    K: int
    D: int
    generator: int

    @classmethod
    def make(cls, p: int, K: int) -> "KPowerContext":
        if K < 1:
            raise ValueError("K must be >= 1")
        return cls(p, K, math.gcd(p - 1, K), primitive_root(p))

    def index(self, a: int) -> int:
        return discrete_log(a, self.generator, self.p)


@lru_cache(maxsize=4096)
def context(p: int, K: int) -> KPowerContext:
    return KPowerContext.make(p, K)


def kpower_solvable(n: int, ctx: KPowerContext) -> bool:
    """Is n = 1 - c^K (mod p) solvable with p not dividing c?"""
    t = (1 - n) % ctx.p
    if t == 0:
        return False
    return ctx.index(t) % ctx.D == 0


def kpower_solvable_naive(n: int, p: int, K: int) -> bool:
    t = (1 - n) % p
    return any(pow(c, K, p) == t for c in range(1, p))


def character_indicator(n: int, ctx: KPowerContext) -> float:
    """(1/D) sum_l chi_l(1 - n) with chi_l(g^s) = e(ls/D); 0 when p | 1 - n."""
    t = (1 - n) % ctx.p
    if t == 0:
        return 0.0
    s = ctx.index(t)
    total = sum(cmath.exp(2j * math.pi * l * s / ctx.D) for l in range(ctx.D))
    return (total / ctx.D).real


# ---------------------------------------------------------------------------
# Residue vectors and sifted sets


@dataclass(frozen=True)
class ResidueVectorK:
    """Classes a_s = 1 - (c_s + 1)^K (mod s) with c_s != -1 (mod s)."""

    K: int
    entries: tuple[tuple[int, int, int], ...]  # (s, a_s, c_s)

    def __post_init__(self):
        for s, a, c in self.entries:
            if (c + 1) % s == 0 or a != (1 - pow(c + 1, self.K, s)) % s:
                raise ValueError(f"invalid entry at modulus {s}")

    def classes(self) -> list[tuple[int, int]]:
        """(a_s, s) pairs."""
        return [(a, s) for s, a, _ in self.entries]

    def origin_classes(self) -> list[tuple[int, int]]:
        """(c_s, s): the residues of the matrix origin m0."""
        return [(c, s) for s, _, c in self.entries]


def residue_from_c(c: int, s: int, K: int) -> int:
    return (1 - pow(c + 1, K, s)) % s


def select_residues_K(primes, K: int, seed: int) -> ResidueVectorK:
    """Draw c_s uniformly from [0, s-2] and derive a_s."""
    if any(s % 2 == 0 for s in primes):
        raise ValueError("primes must be odd")
    rng = np.random.default_rng(seed)
    out = []
    for s in primes:
        c = int(rng.integers(0, s - 1))
        out.append((s, residue_from_c(c, s, K), c))
    return ResidueVectorK(K, tuple(out))


def sifted_set(interval: tuple[int, int], classes) -> list[int]:
    """Integers n in (lo, hi] with n != a (mod s) for every (a, s)."""
    lo, hi = interval
    n = np.arange(lo + 1, hi + 1, dtype=np.int64)
    keep = np.ones(len(n), dtype=bool)
    for a, s in classes:
        keep &= n % s != a % s
    return n[keep].tolist()


def tilde_primes(x: int, C0: float, K: int, even_modulus: str = "2K") -> list[int]:
    """Primes in (x, C0 x]: = 2 mod 3 for odd K; = 3 mod 2K (or 3K) for even K."""
    if K < 2:
        raise ValueError("K must be >= 2")
    ps = sieve_segment(x + 1, math.floor(C0 * x) + 1)
    if K % 2:
        return [p for p in ps if p % 3 == 2]
    m = 2 * K if even_modulus == "2K" else 3 * K
    return [p for p in ps if p % m == 3 % m]


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def exceptional_U(y: int, tilde_P, delta: float) -> list[int]:
    """u in [0, y] with (-u/p) = 1 for at most floor(delta |P~|) primes p."""
    bound = math.floor(delta * len(tilde_P))
    return [u for u in range(y + 1)
            if sum(legendre(-u, p) == 1 for p in tilde_P) <= bound]


# ---------------------------------------------------------------------------
# The good set


@dataclass(frozen=True)
class GoodSetParams:
    K: int
    families: dict[int, tuple[int, ...]]  # u -> primes s = u (mod K)
    eps: float = 0.05

    @classmethod
    def build(cls, lo: int, hi: int, K: int, eps: float = 0.05) -> "GoodSetParams":
        """Partition primes in (lo, hi] by residue u mod K with (u, K) = 1."""
        fam: dict[int, list[int]] = {u: [] for u in range(K) if math.gcd(u, K) == 1}
        for s in sieve_segment(lo + 1, hi + 1):
            if s % K in fam and s % 2:
                fam[s % K].append(s)
        return cls(K, {u: tuple(v) for u, v in fam.items()}, eps)

    def d(self, u: int) -> int:
        return math.gcd(u - 1, self.K)

    def r_star(self, u: int) -> float:
        return math.fsum(1 / s for s in self.families[u]) / self.d(u)


@dataclass(frozen=True)
class GoodSetReport:
    r: dict[int, float]
    r_star: dict[int, float]
    in_G: bool


def good_set_membership(n: int, params: GoodSetParams) -> GoodSetReport:
    r, rs = {}, {}
    for u, fam in params.families.items():
        r[u] = math.fsum(1 / s for s in fam if kpower_solvable(n, context(s, params.K)))
        rs[u] = params.r_star(u)
    ok = all(abs(r[u] - rs[u]) <= params.eps for u in r)
    return GoodSetReport(r, rs, ok)


# ---------------------------------------------------------------------------
# Maier matrix


@dataclass(frozen=True)
class MaierMatrix:
    """a_{r,u} = (m0 + 1 + r Px)^K + u - 1 for 1 <= r <= rows, 1 <= u <= y."""

    m0: int
    Px: int
    K: int
    rows: int
    y: int
    moduli: tuple[int, ...]  # the primes dividing Px

    def base(self, r: int) -> int:
        return self.m0 + 1 + r * self.Px

    def entry(self, r: int, u: int) -> int:
        return self.base(r) ** self.K + u - 1

    def row(self, r: int) -> list[int]:
        b = self.base(r) ** self.K
        return [b + u - 1 for u in range(1, self.y + 1)]


def _prime_divisors_of_primorial(Px: int) -> tuple[int, ...]:
    out = []
    rest = Px
    for p in sieve_segment(0, 10**6):
        if rest == 1:
            break
        if rest % p == 0:
            out.append(p)
            rest //= p
            if rest % p == 0:
                raise ValueError("Px must be squarefree")
    if rest != 1:
        raise ValueError("Px has a prime factor above 10^6")
    return tuple(out)


def build_matrix(m0: int, Px: int, K: int, rows: int, y: int, moduli=None,
                 budget: int = MATRIX_BUDGET) -> MaierMatrix:
    if rows * y > budget:
        raise BudgetError(f"rows*y = {rows * y} exceeds budget {budget}")
    mods = tuple(moduli) if moduli is not None else _prime_divisors_of_primorial(Px)
    return MaierMatrix(m0, Px, K, rows, y, mods)


def column_witnesses(M: MaierMatrix) -> dict[int, int]:
    """u -> smallest s | Px dividing every entry of column u (2 <= u <= y).

    a_{r,u} = (m0 + 1)^K + u - 1 (mod s) whenever s | Px, so one check per column.
    """
    out = {}
    lead = {s: pow(M.m0 + 1, M.K, s) for s in M.moduli}
    for u in range(2, M.y + 1):
        for s in M.moduli:
            if (lead[s] + u - 1) % s == 0:
                out[u] = s
                break
    return out


@dataclass
class RowScan:
    R0: list[int]
    R1: list[int]
    winners: list[int]
    witnesses: dict[int, int]
    exceptional: list[int]
    probable: bool = False  # some primality answer was probabilistic


def scan_rows(M: MaierMatrix, exceptional_offsets=()) -> RowScan:
    """R0: rows with prime base; R1: those whose exceptional columns hold a prime."""
    wit = column_witnesses(M)
    exc = sorted(set(exceptional_offsets) | {u for u in range(2, M.y + 1) if u not in wit})
    for u in exc:
        wit.pop(u, None)
    R0, R1 = [], []
    probable = False
    for r in range(1, M.rows + 1):
        ok, proven = primality(M.base(r))
        probable |= not proven
        if not ok:
            continue
        R0.append(r)
        bK = M.base(r) ** M.K
        for u in exc:
            ok_u, proven_u = primality(bK + u - 1)
            probable |= not proven_u
            if ok_u:
                R1.append(r)
                break
    r1 = set(R1)
    return RowScan(R0, R1, [r for r in R0 if r not in r1], wit, exc, probable)


def kpower_covering(x: int, y: int, K: int, primes=None):
    """Greedy choice of classes a_s = 1 - (c_s + 1)^K for primes s < x over offsets 2..y.

    Returns ``(vector, m0, Px, uncovered)`` with m0 = c_s (mod s), so every covered
    column of the matrix built from (m0, Px) is divisible by its class modulus.
    """
    ps = sorted(primes) if primes is not None else primes_below(x)
    r = np.arange(2, y + 1, dtype=np.int64)
    entries = []
    for s in ps:
        best_c, best_hits = 0, -1
        for c in range(s - 1):
            a = residue_from_c(c, s, K)
            hits = int(np.count_nonzero(r % s == a)) if len(r) else 0
            if hits > best_hits:
                best_c, best_hits = c, hits
        a = residue_from_c(best_c, s, K)
        entries.append((s, a, best_c))
        r = r[r % s != a]
    vec = ResidueVectorK(K, tuple(entries))
    m0, Px = crt_assemble(vec.origin_classes())
    return vec, m0, Px, r.tolist()


# ---------------------------------------------------------------------------
# K-th powers inside gaps


def kth_power_in_interval(lo: int, hi: int, K: int) -> int | None:
    """Smallest prime q with lo < q^K < hi."""
    q = max(2, _iroot(lo, K))
    while q ** K <= lo:
        q += 1
    while q ** K < hi:
        if is_prime(q):
            return q
        q += 1
    return None


def _iroot(n: int, K: int) -> int:
    if n < 1:
        return 0
    r = int(round(n ** (1.0 / K))) if n < 1 << 1000 else 1 << (n.bit_length() // K)
    while r ** K > n:
        r -= 1
    while (r + 1) ** K <= n:
        r += 1
    return r


@dataclass(frozen=True)
class KPowerHit:
    q: int
    K: int
    row: int | None
    p_lo: int
    p_hi: int

    @property
    def gap(self) -> int:
        return self.p_hi - self.p_lo


def find_kth_power_in_matrix(m0: int, Px: int, y: int, K: int, search_rows: int,
                            exceptional_offsets=(), moduli=None) -> KPowerHit | None:
    """First winner row of the matrix; q = its base, gap found by direct search around q^K."""
    if K < 2:
        return None  # q^1 = q would be a bounding prime, never interior
    M = build_matrix(m0, Px, K, search_rows, y, moduli)
    scan = scan_rows(M, exceptional_offsets)
    for r in scan.winners:
        q = M.base(r)
        qK = q ** K
        p_lo, p_hi = prev_prime(qK), next_prime(qK)
        if p_lo is not None and p_lo < qK < p_hi:
            return KPowerHit(q, K, r, p_lo, p_hi)
    return None


def find_kth_power_in_gap(cert, K: int, search_rows: int, exceptional_offsets=()) -> KPowerHit | None:
    """Search for a prime K-th power inside a gap of length >= cert.y.

    A plain certificate always has some p | m0 + 1 (offset 1 is covered), so no
    row base could be prime. The origin is therefore re-chosen with K-adapted
    classes over the certificate's own moduli, and uncovered offsets become
    exceptional columns.
    """
    moduli = sorted(cert.stages) or sorted(factorize(cert.modulus))
    _, m0, Px, uncovered = kpower_covering(0, cert.y, K, moduli)
    exc = set(exceptional_offsets) | set(uncovered)
    return find_kth_power_in_matrix(m0, Px, cert.y, K, search_rows, exc, moduli)
