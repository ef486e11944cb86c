"""Beatty and Piatetski-Shapiro sequences, continued fractions, irrationality type.

Every floor of an irrational quantity is taken from an mpmath interval whose
endpoints share the same floor; precision doubles until they do.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import iv, mpf
from mpmath.libmp import to_int

from .primes import is_prime

DPS_START = 30
DPS_MAX = 960


class UndecidableFloorError(ArithmeticError):
    pass


class RationalDetectedError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Real parameters


_NAMED = {
    "pi": lambda: iv.pi,
    "e": lambda: iv.e,
    "golden": lambda: (1 + iv.sqrt(5)) / 2,
    "phi": lambda: (1 + iv.sqrt(5)) / 2,
}


@dataclass(frozen=True)
class RealParam:
    """A real number given by text: an exact rational/decimal, sqrtN, sqrt(N), pi, e, golden."""

    text: str

    @property
    def exact(self) -> Fraction | None:
        try:
            return Fraction(self.text)
        except (ValueError, ZeroDivisionError):
            return None

    def interval(self, dps: int):
        """Enclosure at the given decimal precision (caller sets iv.dps)."""
        q = self.exact
        if q is not None:
            return iv.mpf(q.numerator) / q.denominator
        t = self.text.strip().lower()
        m = re.fullmatch(r"sqrt\(?(\d+)\)?", t)
        if m:
            return iv.sqrt(int(m.group(1)))
        if t in _NAMED:
            return _NAMED[t]()
        raise ValueError(f"cannot parse real parameter {self.text!r}")

    def __float__(self):
        old = iv.dps
        try:
            iv.dps = 30
            return float(mpf(self.interval(30).mid))
        finally:
            iv.dps = old


def _as_param(v) -> RealParam:
    return v if isinstance(v, RealParam) else RealParam(str(v))


def _floors(x) -> tuple[int, int]:
    """Exact floors of both endpoints of an mpmath interval."""
    a, b = x._mpi_
    return to_int(a, "f"), to_int(b, "f")


def interval_floor(build, margin: float = 1e-30) -> int:
    """floor of the number enclosed by build() as precision increases."""
    dps = DPS_START
    old = iv.dps
    try:
        while dps <= DPS_MAX:
            iv.dps = dps
            x = build()
            lo, hi = _floors(x)
            if lo == hi:
                return int(lo)
            dps *= 2
        iv.dps = DPS_MAX
        x = build()
        raise UndecidableFloorError(f"value within {float(mpf(x.delta)):.1e} of an integer at {DPS_MAX} digits"
                                    if mpf(x.delta) < margin else "floor undecidable")
    finally:
        iv.dps = old


def _float_floors(x: np.ndarray, rel: float = 1e-13, absolute: float = 1e-9):
    """Floors of float estimates plus a mask of those that are certain."""
    f = np.floor(x)
    frac = x - f
    tol = absolute + rel * np.abs(x)
    safe = (frac > tol) & (frac < 1 - tol)
    return f.astype(np.int64), safe


# ---------------------------------------------------------------------------
# Beatty sequences


@dataclass(frozen=True)
class BeattyParams:
    alpha: RealParam
    beta: RealParam = RealParam("0")
    depth: int = 30

    @classmethod
    def of(cls, alpha, beta=0, depth: int = 30) -> "BeattyParams":
        a = _as_param(alpha)
        if float(a) <= 0:
            raise ValueError("alpha must be positive")
        return cls(a, _as_param(beta), depth)

    def convergents(self) -> list[tuple[int, int]]:
        return convergents(continued_fraction(self.alpha, self.depth, allow_rational=True))


def beatty(n: int, params: BeattyParams) -> int:
    """floor(alpha n + beta)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b = params.alpha.exact, params.beta.exact
    if a is not None and b is not None:
        return math.floor(a * n + b)
    return interval_floor(lambda: params.alpha.interval(iv.dps) * n + params.beta.interval(iv.dps))


def beatty_values(n_max: int, params: BeattyParams) -> list[int]:
    """beatty(n) for n = 1..n_max, float fast path with interval fallback."""
    n = np.arange(1, n_max + 1, dtype=np.int64)
    a, b = params.alpha.exact, params.beta.exact
    if a is not None and b is not None:
        return [math.floor(a * k + b) for k in range(1, n_max + 1)]
    x = float(params.alpha) * n.astype(float) + float(params.beta)
    f, safe = _float_floors(x)
    out = f.tolist()
    for i in np.flatnonzero(~safe):
        out[i] = beatty(int(n[i]), params)
    return out


def is_beatty_value(v: int, params: BeattyParams) -> int | None:
    """Witness n with beatty(n) = v, or None. Checks n near (v - beta)/alpha."""
    guess = math.ceil((v - float(params.beta)) / float(params.alpha))
    for n in range(max(1, guess - 2), guess + 3):
        if beatty(n, params) == v:
            return n
    return None


def beatty_primes(limit: int, params: BeattyParams) -> list[tuple[int, int]]:
    """(prime, n) with beatty(n) = prime <= limit, first witness per prime."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if float(params.alpha) < 1e-6:
        raise ValueError("alpha too small")
    n_max = math.ceil((limit - float(params.beta) + 2) / float(params.alpha)) + 2
    seen, out = set(), []
    for n, v in enumerate(beatty_values(n_max, params), start=1):
        if 2 <= v <= limit and v not in seen and is_prime(v):
            seen.add(v)
            out.append((v, n))
    return sorted(out)


# ---------------------------------------------------------------------------
# Continued fractions and irrationality type


def continued_fraction(alpha, depth: int, allow_rational: bool = False) -> list[int]:
    """First depth + 1 partial quotients [a0; a1, ..., a_depth]."""
    alpha = _as_param(alpha)
    q = alpha.exact
    if q is not None:
        out = []
        while len(out) <= depth:
            a = math.floor(q)
            out.append(a)
            if q == a:
                if allow_rational:
                    return out
                raise RationalDetectedError(f"{alpha.text} is rational: {out}")
            q = 1 / (q - a)
        return out
    dps = max(DPS_START, 4 * depth)
    old = iv.dps
    try:
        while dps <= DPS_MAX:
            iv.dps = dps
            x = alpha.interval(dps)
            out = []
            ok = True
            while len(out) <= depth:
                lo, hi = _floors(x)
                if lo != hi:
                    ok = False
                    break
                out.append(int(lo))
                x = 1 / (x - lo)
            if ok:
                return out
            dps *= 2
    finally:
        iv.dps = old
    raise UndecidableFloorError("continued fraction undecidable at max precision")


def convergents(cf) -> list[tuple[int, int]]:
    p0, q0, p1, q1 = 1, 0, cf[0], 1
    out = [(p1, q1)]
    for a in cf[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


def irrationality_type_estimate(alpha, depth: int = 30) -> float:
    """max of log(a_{k+1} q_k) / log q_k over the tail k >= depth/2 with q_k > 1.

    An estimate from finite data; bounded partial quotients drive it to 1.
    """
    if depth < 3:
        raise ValueError("depth must be >= 3")
    if isinstance(alpha, BeattyParams):
        alpha = alpha.alpha
    cf = continued_fraction(alpha, depth)
    conv = convergents(cf)
    best = 1.0
    for k in range(depth // 2, depth):
        q = conv[k][1]
        if q > 1:
            best = max(best, math.log(cf[k + 1] * q) / math.log(q))
    return best


# ---------------------------------------------------------------------------
# Piatetski-Shapiro sequences


@dataclass(frozen=True)
class PSParams:
    c: RealParam

    @classmethod
    def of(cls, c) -> "PSParams":
        p = _as_param(c)
        if float(p) < 1:
            raise ValueError("c must be >= 1")
        return cls(p)

    @property
    def in_known_range(self) -> bool:
        return 1 < float(self.c) < 18 / 17


def _iroot(n: int, k: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def ps_value(l: int, params: PSParams) -> int:
    """floor(l^c)."""
    if l < 1:
        raise ValueError("l must be >= 1")
    try:
        return interval_floor(lambda: iv.mpf(l) ** params.c.interval(iv.dps))
    except UndecidableFloorError:
        q = params.c.exact
        if q is None:
            raise
        return _iroot(l ** q.numerator, q.denominator)  # l^c may be an exact integer


def ps_values(l_max: int, params: PSParams) -> list[int]:
    l = np.arange(1, l_max + 1, dtype=float)
    f, safe = _float_floors(np.power(l, float(params.c)))
    out = f.tolist()
    for i in np.flatnonzero(~safe):
        out[i] = ps_value(int(i) + 1, params)
    return out


def is_ps_value(v: int, params: PSParams) -> int | None:
    """Witness l with floor(l^c) = v, or None."""
    guess = int(round(v ** (1 / float(params.c))))
    for l in range(max(1, guess - 2), guess + 3):
        if ps_value(l, params) == v:
            return l
    return None


def ps_primes(limit: int, params: PSParams) -> list[tuple[int, int]]:
    """(prime, l) with floor(l^c) = prime <= limit."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    l_max = int((limit + 1) ** (1 / float(params.c))) + 2
    out, seen = [], set()
    for l, v in enumerate(ps_values(l_max, params), start=1):
        if 2 <= v <= limit and v not in seen and is_prime(v):
            seen.add(v)
            out.append((v, l))
    return sorted(out)


def ps_count_upto(N: int, params: PSParams) -> int:
    """#{l >= 1 : floor(l^c) <= N}."""
    l_max = int((N + 1) ** (1 / float(params.c))) + 3
    return sum(1 for v in ps_values(l_max, params) if v <= N)


# ---------------------------------------------------------------------------
# Restricting matrix winners


def family_witness(v: int, family: str, params) -> int | None:
    if family == "beatty":
        return is_beatty_value(v, params)
    if family == "ps":
        return is_ps_value(v, params)
    raise ValueError(f"unknown family {family!r}")


def restricted_column_scan(M, family: str, params, exceptional_offsets=()) -> list[tuple[int, int]]:
    """(row, witness) for matrix winners whose base prime lies in the family."""
    from .kpower import scan_rows

    scan = scan_rows(M, exceptional_offsets)
    out = []
    for r in scan.winners:
        w = family_witness(M.base(r), family, params)
        if w is not None:
            out.append((r, w))
    return out
