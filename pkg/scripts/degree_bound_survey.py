"""How tight are the degree bounds on shifted Popov forms and their transforms?

For random full rank wide matrices this records, per instance class, the
largest observed ratio ``degree / bound`` for the form ``P`` and for the
transformation ``U`` with ``U*F = P``.  A ratio above 1 would be a violation
and is counted.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from polyforms import PrimeField, mat_quotient_left, popov_form, unimodular_inverse
from polyforms.normalforms import degree_bounds
from polyforms.testkit import random_full_rank


@dataclass
class Config:
    p: int = 97
    sizes: tuple = ((1, 3), (2, 4), (2, 6), (3, 5), (3, 8))
    max_deg: int = 4
    shift_bound: int = 3
    samples: int = 20
    seed: int = 1


def _ratio(a, b):
    return a / b if b > 0 else float(a <= 0)


def survey(cfg: Config):
    field = PrimeField(cfg.p)
    rng = np.random.default_rng(cfg.seed)
    out = []
    for m, n in cfg.sizes:
        for d in range(1, cfg.max_deg + 1):
            worst = dict(shift=0.0, glob=0.0, transform=0.0)
            violations = 0
            for _ in range(cfg.samples):
                F = random_full_rank(field, m, n, d, rng)
                s = tuple(int(v) for v in rng.integers(-cfg.shift_bound, cfg.shift_bound + 1, size=n))
                res = popov_form(F, s)
                P, pi = res.popov, res.pivot_support
                b = degree_bounds(F, s, pi)
                # U with U*F = P is the inverse of the quotient F_pi * P_pi^-1
                U = unimodular_inverse(mat_quotient_left(F.columns(pi), P.columns(pi)))
                dP, dU = max(P.degree, 0), max(U.degree, 0)
                worst["shift"] = max(worst["shift"], _ratio(dP, b.popov_degree_shift))
                worst["glob"] = max(worst["glob"], _ratio(dP, b.popov_degree_global))
                worst["transform"] = max(worst["transform"], _ratio(dU, b.transform_degree))
                violations += not (b.check_popov(P) and b.check_transform(U))
            out.append((m, n, d, worst, violations))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description="degree bound tightness survey")
    ap.add_argument("--p", type=int, default=Config.p)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--max-deg", type=int, default=Config.max_deg)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args(argv)
    cfg = Config(p=a.p, samples=a.samples, max_deg=a.max_deg, seed=a.seed)
    print(f"{'m':>2} {'n':>2} {'d':>2} {'P/shift':>8} {'P/glob':>8} {'U/cdeg':>8} viol")
    for m, n, d, w, v in survey(cfg):
        print(f"{m:>2} {n:>2} {d:>2} {w['shift']:8.3f} {w['glob']:8.3f} {w['transform']:8.3f} {v:>4}")


if __name__ == "__main__":
    main()
