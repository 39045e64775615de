"""Compare the closed-form infima with the brute-force oracle on random (xi, eta).

    python3 scripts/lemma_oracle_sweep.py --n 200 --seed 2024 --out lemma_sweep.csv
"""

import argparse
import csv
import sys
import time
from dataclasses import dataclass

import numpy as np

from biunivalent.infimum import LEMMAS, PiecewiseProblem, closed_form, oracle_infimum


@dataclass
class SweepConfig:
    n: int = 200
    seed: int = 2024
    xi_range: tuple = (-6.0, 6.0)
    eta_range: tuple = (0.1, 5.0)
    box: float = 100.0
    levels: int = 4


def run(cfg: SweepConfig, out):
    rng = np.random.default_rng(cfg.seed)
    xi = rng.uniform(*cfg.xi_range, cfg.n)
    eta = rng.uniform(*cfg.eta_range, cfg.n)
    w = csv.writer(out)
    w.writerow(["lemma", "xi", "eta", "branch", "closed_form", "oracle", "rel_error", "argmin"])
    worst = {}
    for lemma in LEMMAS:
        for x, e in zip(xi, eta):
            p = PiecewiseProblem(lemma, float(x), float(e))
            cf = closed_form(p)
            o = oracle_infimum(p, box=cfg.box, levels=cfg.levels)
            rel = abs(o.value - cf.value) / cf.value
            worst[lemma] = max(worst.get(lemma, 0.0), rel)
            w.writerow([lemma, f"{x:.9g}", f"{e:.9g}", cf.branch, f"{cf.value:.9g}", f"{o.value:.9g}",
                        f"{rel:.3e}", o.argmin])
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=SweepConfig.n)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    cfg = SweepConfig(n=args.n, seed=args.seed)
    start = time.perf_counter()
    with open(args.out, "w", newline="") if args.out else open(1, "w", closefd=False) as out:
        worst = run(cfg, out)
    for lemma, rel in worst.items():
        print(f"{lemma}: max relative error {rel:.2e}", file=sys.stderr)
    print(f"elapsed {time.perf_counter() - start:.1f} s", file=sys.stderr)


if __name__ == "__main__":
    main()
