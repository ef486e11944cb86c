"""Largest y the deterministic pipeline covers, as a function of x."""
import argparse
import math
from dataclasses import dataclass

from gapforge import covering as cv


@dataclass
class Config:
    x_from: int = 10
    x_to: int = 200
    step: int = 10


def run(cfg: Config):
    out = []
    for x in range(cfg.x_from, cfg.x_to + 1, cfg.step):
        y = cv.max_complete_y(x)
        out.append((x, y))
        print(f"x={x:>4}  y={y:>5}  y/x={y / x:5.2f}  y/(x log x)={y / (x * math.log(x)):5.3f}")
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x-from", type=int, default=Config.x_from)
    ap.add_argument("--x-to", type=int, default=Config.x_to)
    ap.add_argument("--step", type=int, default=Config.step)
    a = ap.parse_args()
    run(Config(a.x_from, a.x_to, a.step))
