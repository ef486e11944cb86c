"""Selberg-type sieve weights: GPY one-dimensional and Maynard tuple-indexed.

Also the simplex integrals I_k, J_k used to normalise Maynard's weights.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .primes import euler_phi, factorize, is_prime, mobius, primes_upto
from .tuples import AdmissibleTuple, LinearFormSet, omega_count, singular_series


# ---------------------------------------------------------------------------
# GPY


@dataclass(frozen=True)
class GPYConfig:
    k: int
    R: float
    l: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.R <= 1:
            raise ValueError("R must exceed 1")

    @property
    def exponent(self) -> int:
        return self.k + self.l


def gpy_lambda(d: int, cfg: GPYConfig) -> float:
    """mu(d) (log R/d)^(k+l) for d < R, else 0."""
    if d < 1 or d >= cfg.R:
        return 0.0
    mu = mobius(d)
    if mu == 0:
        return 0.0
    return mu * math.log(cfg.R / d) ** cfg.exponent


def squarefree_divisors_below(primes, bound: float) -> list[int]:
    out = [1]
    for p in sorted(primes):
        out += [d * p for d in out if d * p < bound]
    return out


def gpy_weight(n: int, t: AdmissibleTuple, cfg: GPYConfig) -> float:
    """(sum of lambda_d over d | prod(n + h_i), d < R)^2."""
    primes = set()
    for h in t:
        v = n + h
        if v < 1:
            raise ValueError("n + h_i must be positive")
        primes.update(factorize(v))
    s = sum(gpy_lambda(d, cfg) for d in squarefree_divisors_below(primes, cfg.R))
    return s * s


@dataclass(frozen=True)
class SResult:
    value: float
    witness: int | None  # n with > floor(rho) prime translates, when value > 0


def s_statistic(N: int, rho: float, t: AdmissibleTuple, cfg: GPYConfig) -> SResult:
    """S(N, rho) = sum_{N<=n<=2N} (#{i: n+h_i prime} - rho) w_n."""
    total = 0.0
    need = math.floor(rho) + 1
    witness = None
    for n in range(N, 2 * N + 1):
        count = sum(is_prime(n + h) for h in t)
        w = gpy_weight(n, t, cfg)
        total += (count - rho) * w
        if witness is None and count >= need and w > 0:
            witness = n
    if total > 0 and witness is None:
        raise AssertionError("positive S without a witness")  # cannot happen
    return SResult(total, witness if total > 0 else None)


# ---------------------------------------------------------------------------
# Simplex functions and I_k / J_k


@dataclass(frozen=True)
class SimplexFunction:
    """F on R^k, forced to vanish off the simplex {t_i >= 0, sum t_i <= 1}."""

    func: Callable[[np.ndarray], np.ndarray]
    name: str = "F"

    @classmethod
    def power(cls, a: float) -> "SimplexFunction":
        return cls(lambda t: (1.0 - t.sum(axis=-1)) ** a, f"(1-sum t)^{a}")

    @classmethod
    def constant(cls, c: float = 1.0) -> "SimplexFunction":
        return cls(lambda t: np.full(t.shape[:-1], float(c)), f"{c}")

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        inside = (t >= 0).all(axis=-1) & (t.sum(axis=-1) <= 1.0)
        vals = np.asarray(self.func(np.clip(t, 0.0, None)), dtype=float)
        return np.where(inside, vals, 0.0)


def default_F(k: int) -> SimplexFunction:
    return SimplexFunction.power(k)


@dataclass(frozen=True)
class IkJk:
    I: float
    J: float
    I_se: float
    J_se: float
    samples: int


def _simplex_points(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """Uniform points in the solid simplex of dimension ``dim``."""
    if dim == 0:
        return np.zeros((n, 0))
    e = rng.exponential(size=(n, dim + 1))
    return e[:, :dim] / e.sum(axis=1, keepdims=True)


def ik_jk(F: SimplexFunction, k: int, samples: int = 1_000_000, seed: int = 0,
          nodes: int = 32) -> IkJk:
    """Monte Carlo I_k = int F^2 over R_k and J_k = int (int F dt_k)^2 over R_{k-1}.

    The inner t_k integral of J_k uses Gauss-Legendre on [0, 1 - sum t].
    """
    if k < 1 or k > 12:
        raise ValueError("k must be in 1..12")
    ss = np.random.SeedSequence(seed)
    rng_i, rng_j = (np.random.default_rng(s) for s in ss.spawn(2))
    vol_k = 1.0 / math.factorial(k)
    vol_k1 = 1.0 / math.factorial(k - 1)
    x, wts = np.polynomial.legendre.leggauss(nodes)
    chunk = 200_000
    fi, fj = [], []
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        t = _simplex_points(rng_i, m, k)
        fi.append(F(t) ** 2)
        s = _simplex_points(rng_j, m, k - 1)
        rem = 1.0 - s.sum(axis=1)
        tk = (x[None, :] + 1.0) / 2.0 * rem[:, None]  # (m, nodes)
        pts = np.concatenate([np.repeat(s[:, None, :], nodes, axis=1), tk[:, :, None]], axis=2)
        inner = (F(pts) * wts[None, :]).sum(axis=1) * rem / 2.0
        fj.append(inner ** 2)
        done += m
    fi = np.concatenate(fi)
    fj = np.concatenate(fj)
    n = len(fi)
    return IkJk(vol_k * fi.mean(), vol_k1 * fj.mean(),
                vol_k * fi.std(ddof=1) / math.sqrt(n), vol_k1 * fj.std(ddof=1) / math.sqrt(n), n)


def power_F_exact(k: int, a: float) -> tuple[float, float]:
    """Closed forms of I_k, J_k for F = (1 - sum t)^a."""
    g = math.gamma
    I = g(2 * a + 1) / g(2 * a + k + 1)
    J = g(2 * a + 3) / g(2 * a + k + 2) / (a + 1) ** 2
    return I, J


# ---------------------------------------------------------------------------
# Maynard weights


def w_factor(k: int, B: int = 1) -> int:
    """Product of the primes p <= 2k^2 not dividing B."""
    return math.prod(p for p in primes_upto(2 * k * k) if B % p)


@dataclass
class MaynardWeightState:
    k: int
    W: int
    B: int
    R: float
    F: SimplexFunction
    forms: LinearFormSet
    series: float  # truncated singular series over p not dividing WB
    prefactor: float  # W^k B^k / phi(WB)^k * series
    omega: dict[int, int]
    allowed: dict[int, frozenset[int]]  # prime -> coordinates it may divide
    lam: dict[tuple[int, ...], float] = field(default_factory=dict)

    def phi_omega(self, m: int) -> int:
        out = 1
        for p in factorize(m):
            out *= p - self.omega[p]
        return out

    def in_Dk(self, d: tuple[int, ...]) -> bool:
        prod = math.prod(d)
        if mobius(prod) == 0 or math.gcd(prod, self.W * self.B) != 1:
            return False
        for j, dj in enumerate(d):
            for p in factorize(dj):
                if j not in self.allowed.get(p, ()):
                    return False
        return True

    def Y(self, r: tuple[int, ...]) -> float:
        if not self.in_Dk(r):
            return 0.0
        logR = math.log(self.R)
        t = np.array([math.log(ri) / logR for ri in r])
        return self.prefactor * float(self.F(t))


def _tuples_in_Dk(k: int, primes, allowed, R: float):
    """Depth-first enumeration of squarefree tuples with prod <= R, primes per allowed coords."""
    out = []

    def rec(i: int, d: list[int], prod: int):
        if i == len(primes):
            out.append(tuple(d))
            return
        rec(i + 1, d, prod)
        p = primes[i]
        if prod * p > R:
            return
        for j in sorted(allowed[p]):
            d[j] *= p
            rec(i + 1, d, prod * p)
            d[j] //= p

    rec(0, [1] * k, 1)
    return out


def build_maynard_state(forms: LinearFormSet, R: float, B: int = 1,
                        F: SimplexFunction | None = None, cutoff: int = 10_000) -> MaynardWeightState:
    """Tabulate lambda_(d_1..d_k) exactly over D_k with prod d_i <= R."""
    k = forms.k
    F = F or default_F(k)
    W = w_factor(k, B)
    WB = W * B
    series = singular_series(forms, B, cutoff, exclude=W)
    prefactor = (WB / euler_phi(WB)) ** k * series
    primes = [p for p in primes_upto(int(R)) if WB % p]
    omega, allowed = {}, {}
    for p in primes:
        lr = omega_count(p, forms)
        omega[p] = lr.omega
        allowed[p] = frozenset(lr.least_index)
    state = MaynardWeightState(k, W, B, R, F, forms, series, prefactor, omega, allowed)
    if any(omega[p] >= p for p in primes):
        return state  # fixed prime divisor: every weight vanishes
    support = _tuples_in_Dk(k, primes, allowed, R)
    ys = {r: state.Y(r) / state.phi_omega(math.prod(r)) for r in support}
    for d in support:
        acc = math.fsum(v for r, v in ys.items() if all(ri % di == 0 for ri, di in zip(r, d)))
        pd = math.prod(d)
        state.lam[d] = mobius(pd) * pd * acc
    return state


def maynard_lambda(d: tuple[int, ...], state: MaynardWeightState) -> float:
    return state.lam.get(tuple(d), 0.0)


def maynard_weight(n: int, state: MaynardWeightState, forms: LinearFormSet | None = None) -> float:
    """(sum of lambda_d over tuples with d_i | L_i(n))^2."""
    forms = forms or state.forms
    vals = forms.values(n)
    s = math.fsum(lam for d, lam in state.lam.items()
                  if all(v % di == 0 for v, di in zip(vals, d)))
    return s * s
