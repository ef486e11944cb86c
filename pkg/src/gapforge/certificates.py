"""CRT assembly of gap origins and self-contained compositeness certificates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .covering import CoveringSystem, verify_covering
from .primes import GapRecord, is_prime, next_prime, prev_prime

BRUTE_LIMIT = 1 << 64  # deterministic primality throughout the scan


class NonCoprimeModuliError(ValueError):
    def __init__(self, m1: int, m2: int):
        super().__init__(f"moduli {m1} and {m2} are not coprime")
        self.pair = (m1, m2)


class IncompleteCoveringError(ValueError):
    pass


class ScaleError(ValueError):
    pass


def crt_assemble(classes) -> tuple[int, int]:
    """Solve v = r_i (mod m_i) for pairwise coprime m_i; returns (v, prod m_i).

    Garner-style incremental combination in ascending modulus order.
    """
    items = sorted(((int(m), int(r) % int(m)) for r, m in classes), key=lambda t: t[0])
    for i, (mi, _) in enumerate(items):
        for mj, _ in items[i + 1 :]:
            if math.gcd(mi, mj) != 1:
                raise NonCoprimeModuliError(mi, mj)
    value, modulus = 0, 1
    for m, r in items:
        # value + modulus * t = r (mod m)
        t = (r - value) * pow(modulus, -1, m) % m if m > 1 else 0
        value += modulus * t
        modulus *= m
    return value, modulus


@dataclass
class GapCertificate:
    """Every u in (0, y] has a prime witness dividing m0 + u."""

    m0: int
    modulus: int
    y: int
    witnesses: dict[int, int]
    x: int | None = None
    stages: dict[int, int] = field(default_factory=dict)  # modulus -> stage label

    def degenerate_offsets(self) -> list[int]:
        """Offsets where the witness equals m0 + u (m0 + u is that prime itself)."""
        return [u for u, p in sorted(self.witnesses.items()) if p >= self.m0 + u]

    @property
    def interval(self) -> tuple[int, int]:
        return self.m0 + 1, self.m0 + self.y


@dataclass(frozen=True)
class Verdict:
    ok: bool
    offset: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def certify_gap(cs: CoveringSystem) -> GapCertificate:
    """m0 = -h_p (mod p) for every class; witnesses are covering moduli."""
    ok, first = verify_covering(cs)
    if not ok:
        raise IncompleteCoveringError(f"offset {first} is not covered")
    m0, modulus = crt_assemble([(-c.residue, c.modulus) for c in cs.classes])
    by_mod = sorted(cs.classes, key=lambda c: c.modulus)
    witnesses = {}
    for u in range(1, cs.y + 1):
        for c in by_mod:
            if u % c.modulus == c.residue:
                witnesses[u] = c.modulus
                break
    return GapCertificate(m0, modulus, cs.y, witnesses, cs.x,
                          {c.modulus: c.stage for c in cs.classes})


def lift_certificate(cert: GapCertificate, t: int) -> GapCertificate:
    """Shift the origin by t moduli; all witnesses stay valid divisors."""
    return GapCertificate(cert.m0 + t * cert.modulus, cert.modulus, cert.y,
                          dict(cert.witnesses), cert.x, dict(cert.stages))


def verify_certificate(cert: GapCertificate) -> Verdict:
    """Check 1 < w < m0 + u and w | m0 + u for every offset u in (0, y]."""
    for u in range(1, cert.y + 1):
        w = cert.witnesses.get(u)
        n = cert.m0 + u
        if w is None:
            return Verdict(False, u, "missing witness")
        if w <= 1:
            return Verdict(False, u, "trivial witness")
        if n % w:
            return Verdict(False, u, f"{w} does not divide m0+{u}")
        if w >= n:
            return Verdict(False, u, f"m0+{u} equals its witness (prime)")
    return Verdict(True)


def brute_gap_check(cert: GapCertificate, limit: int = BRUTE_LIMIT) -> GapRecord:
    """Locate the primes around (m0, m0+y] by primality testing; gap must be >= y."""
    if cert.m0 + cert.y >= limit:
        raise ScaleError(f"m0 + y exceeds brute-force scale {limit}")
    p_lo = prev_prime(cert.m0)
    if p_lo is None:
        raise ScaleError("no prime <= m0")
    p_hi = next_prime(p_lo)
    rec = GapRecord.from_pair(p_lo, p_hi)
    if rec.gap < cert.y:
        raise IncompleteCoveringError(
            f"gap {rec.gap} at {p_lo} is shorter than certified length {cert.y}")
    return rec


def interval_is_composite(lo: int, hi: int) -> bool:
    return not any(is_prime(n) for n in range(lo, hi + 1))
