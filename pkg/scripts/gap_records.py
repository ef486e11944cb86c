"""Record prime gaps up to a bound, with merit and the Rankin-normalised merit."""
import argparse
import sys
from dataclasses import dataclass

from gapforge import io as gio
from gapforge import primes as pr


@dataclass
class Config:
    limit: int = 10**7
    csv: str | None = None


def run(cfg: Config):
    recs = pr.record_gaps(cfg.limit)
    for r in recs:
        print(f"{r.p_lo:>12} {r.gap:>5}  merit {r.merit:6.3f}  rankin {r.rankin_merit:8.3f}")
    if cfg.csv:
        gio.write_text(cfg.csv, gio.emit_plotdata(recs, "gap_curve"), sys.stdout)
    return recs


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=Config.limit)
    ap.add_argument("--csv")
    a = ap.parse_args()
    run(Config(a.limit, a.csv))
