"""Randomised coverings -> CRT certificates -> verification and a brute-force gap check."""
import argparse
import time
from dataclasses import dataclass

import numpy as np

from gapforge import certificates as ct
from gapforge import covering as cv


@dataclass
class Config:
    count: int = 20
    x_max: int = 50
    y_max: int = 60
    seed: int = 0
    lift: int = 1


def run(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    rows = []
    while len(rows) < cfg.count:
        x = int(rng.integers(15, cfg.x_max + 1))
        y = int(rng.integers(x // 2, cfg.y_max + 1))
        cs = cv.random_covering(x, y, rng, attempts=50)
        if cs is None:
            continue
        t0 = time.perf_counter()
        cert = ct.lift_certificate(ct.certify_gap(cs), cfg.lift)
        ok = bool(ct.verify_certificate(cert))
        rec = ct.brute_gap_check(cert)
        rows.append((x, y, ok, rec.p_lo, rec.gap, time.perf_counter() - t0))
    print(f"{'x':>3} {'y':>3} {'ok':>3} {'p_lo':>22} {'gap':>5} {'sec':>6}")
    for x, y, ok, p, g, dt in rows:
        print(f"{x:>3} {y:>3} {'yes' if ok else 'NO':>3} {p:>22} {g:>5} {dt:6.3f}")
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=Config.count)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--lift", type=int, default=Config.lift)
    a = ap.parse_args()
    run(Config(count=a.count, seed=a.seed, lift=a.lift))
