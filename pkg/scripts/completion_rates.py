"""Empirical success rate of one random completion draw vs. the lower bound.

    python scripts/completion_rates.py --primes 2 3 7 --draws 2000
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import numpy as np

from polyforms import PrimeField
from polyforms.normalforms import completion_success_probability_bound, random_completion_popov
from polyforms.testkit import random_full_rank


@dataclass
class Config:
    primes: tuple = (2, 3, 7)
    m: int = 2
    n: int = 4
    max_deg: int = 3
    draws: int = 2000
    seed: int = 0


def run(cfg: Config) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for p in cfg.primes:
        field = PrimeField(p)
        for d in range(cfg.max_deg + 1):
            F = random_full_rank(field, cfg.m, cfg.n, d, rng)
            t0 = time.perf_counter()
            ok = sum(random_completion_popov(F, rng).success for _ in range(cfg.draws))
            rows.append(
                dict(
                    p=p,
                    d=d,
                    rate=ok / cfg.draws,
                    bound=float(completion_success_probability_bound(p, cfg.m, cfg.n)),
                    secs=time.perf_counter() - t0,
                )
            )
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(Config.primes))
    ap.add_argument("--m", type=int, default=Config.m)
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--max-deg", type=int, default=Config.max_deg)
    ap.add_argument("--draws", type=int, default=Config.draws)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args(argv)
    cfg = Config(tuple(a.primes), a.m, a.n, a.max_deg, a.draws, a.seed)
    print(f"{'p':>4} {'d':>2} {'rate':>7} {'bound':>7} {'secs':>6}")
    for r in run(cfg):
        print(f"{r['p']:>4} {r['d']:>2} {r['rate']:7.4f} {r['bound']:7.4f} {r['secs']:6.2f}")


if __name__ == "__main__":
    main()
