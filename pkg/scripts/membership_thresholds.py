"""Bisection thresholds for f_nu = nu z/(nu - z) across classes and profiles.

    python3 scripts/membership_thresholds.py
"""

import argparse
import math
from dataclasses import dataclass

from biunivalent import phi as phimod
from biunivalent.bounds import ClassSpec
from biunivalent.errors import InvalidBracket
from biunivalent.membership import membership_threshold


@dataclass
class ThresholdConfig:
    lo: float = 1.0001
    hi: float = 20.0
    tol: float = 1e-9


CASES = [
    ("r_sigma", 1.0, "beta:beta=0", math.sqrt(2)),
    ("r_sigma", 0.0, "sqrt", math.sqrt(2) * (math.sqrt(2) + 1)),
    ("r_sigma", 0.0, "beta:beta=0", None),
    ("r_sigma", 2.5, "beta:beta=0.5", None),
    ("r_sigma", 1.0, "power:alpha=0.5", None),
    ("bi_starlike", 0.0, "beta:beta=0", 1.0),
    ("bi_starlike", 0.0, "sqrt", None),
    ("bi_starlike", 0.0, "power:alpha=0.5", None),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=ThresholdConfig.tol)
    args = ap.parse_args()
    cfg = ThresholdConfig(tol=args.tol)
    print(f"{'class':50s} {'threshold':>14s} {'reference':>14s}")
    for family, lam, text, ref in CASES:
        phi = phimod.parse_profile(text)
        spec = ClassSpec(family, phi, lam) if family == "r_sigma" else ClassSpec(family, phi)
        try:
            th = f"{membership_threshold(spec, cfg.lo, cfg.hi, tol=cfg.tol):.9f}"
        except InvalidBracket:
            th = f"> {cfg.hi}"
        print(f"{spec.label():50s} {th:>14s} {'' if ref is None else f'{ref:.9f}':>14s}")


if __name__ == "__main__":
    main()
