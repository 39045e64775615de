"""Monte Carlo stress sweep of both coefficient theorems over lambda and phi.

    python3 scripts/stress_sweep.py --n 100000 --seed 42
"""

import argparse
import json
import time
from dataclasses import dataclass, field

from biunivalent import phi as phimod
from biunivalent.bounds import ClassSpec
from biunivalent.stochastic import max_modulus_summary, stress_test


@dataclass
class StressConfig:
    n: int = 100_000
    seed: int = 42
    lambdas: tuple = (0.0, 1.0, 2.5)
    profiles: list = field(
        default_factory=lambda: ["beta:beta=0", "beta:beta=0.5", "power:alpha=0.5", "power:alpha=1", "sqrt"]
    )


def specs(cfg: StressConfig):
    for text in cfg.profiles:
        phi = phimod.parse_profile(text)
        for lam in cfg.lambdas:
            yield ClassSpec("r_sigma", phi, lam)
        yield ClassSpec("bi_starlike", phi)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=StressConfig.n)
    ap.add_argument("--seed", type=int, default=StressConfig.seed)
    ap.add_argument("--json", action="store_true", help="one JSON report per line")
    args = ap.parse_args()
    cfg = StressConfig(n=args.n, seed=args.seed)
    start = time.perf_counter()
    total = 0
    for spec in specs(cfg):
        rep = stress_test(spec, cfg.n, cfg.seed)
        total += rep.violation_count
        if args.json:
            print(json.dumps(rep.as_dict()))
        else:
            s = max_modulus_summary(rep)
            print(f"{spec.label():55s} adm={rep.admissibility_rate:.3f} "
                  f"|a2| {rep.max_a2:.4f}/{rep.bound_a2:.4f} ({s['a2_ratio']:.3f}) "
                  f"|a3| {rep.max_a3:.4f}/{rep.bound_a3:.4f} ({s['a3_ratio']:.3f}) "
                  f"violations={rep.violation_count}")
    print(f"total violations {total}, elapsed {time.perf_counter() - start:.1f} s")
    raise SystemExit(2 if total else 0)


if __name__ == "__main__":
    main()
