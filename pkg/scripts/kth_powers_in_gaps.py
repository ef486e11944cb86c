"""Prime K-th powers inside certified composite stretches, optionally restricted to Beatty primes."""
import argparse
from dataclasses import dataclass

from gapforge import certificates as ct
from gapforge import covering as cv
from gapforge import kpower as kp
from gapforge import special as sp


@dataclass
class Config:
    x: int = 20
    y: int = 20
    K: tuple = (2, 3)
    rows: int = 2000
    alpha: str = "sqrt2"


def run(cfg: Config):
    cert = ct.certify_gap(cv.build_erdos_covering(cfg.x, cfg.y))
    for K in cfg.K:
        hit = kp.find_kth_power_in_gap(cert, K, cfg.rows)
        if hit is None:
            print(f"K={K}: none in {cfg.rows} rows")
            continue
        print(f"K={K}: q={hit.q}  {hit.p_lo} < q^K < {hit.p_hi}  gap {hit.gap}")
        _, m0, Px, unc = kp.kpower_covering(0, cfg.y, K, sorted(cert.stages))
        M = kp.build_matrix(m0, Px, K, cfg.rows, cfg.y)
        winners = kp.scan_rows(M, unc).winners
        beatty = sp.restricted_column_scan(M, "beatty", sp.BeattyParams.of(cfg.alpha), unc)
        print(f"     winners {len(winners)}, with Beatty({cfg.alpha}) base {len(beatty)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", type=int, default=Config.x)
    ap.add_argument("--y", type=int, default=Config.y)
    ap.add_argument("--rows", type=int, default=Config.rows)
    ap.add_argument("--alpha", default=Config.alpha)
    a = ap.parse_args()
    run(Config(a.x, a.y, (2, 3), a.rows, a.alpha))
