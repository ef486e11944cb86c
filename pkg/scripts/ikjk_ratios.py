"""Monte Carlo I_k, J_k for F = (1 - sum t)^a and the normalised ratio J_k k / (I_k log k)."""
import argparse
import math
from dataclasses import dataclass

from gapforge import weights as wt


@dataclass
class Config:
    k_max: int = 8
    samples: int = 200_000
    seed: int = 0
    a: float | None = None  # default exponent is k


def run(cfg: Config):
    rows = []
    for k in range(2, cfg.k_max + 1):
        a = k if cfg.a is None else cfg.a
        r = wt.ik_jk(wt.SimplexFunction.power(a), k, cfg.samples, cfg.seed)
        I, J = wt.power_F_exact(k, a)
        ratio = r.J * k / (r.I * math.log(k))
        rows.append((k, r.I, I, r.J, J, ratio))
        print(f"k={k}  I={r.I:.4e} (exact {I:.4e})  J={r.J:.4e} (exact {J:.4e})  ratio={ratio:.3f}")
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=Config.k_max)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--a", type=float)
    a = ap.parse_args()
    run(Config(a.k_max, a.samples, a.seed, a.a))
