#!/usr/bin/env python3
"""Reference win probabilities for the three-outcome referee game.

Computes the benchmarks every optimization run is judged against:

- the classical bound 3/4, by exhausting the 16 deterministic strategies;
- the rotation-only bound cos^2(pi/8) at the standard measurement angles
  (Alice at 0 and pi/4, Bob at +/- pi/8), evaluated both through the graded
  algebra and through a plain complex-matrix reference that shares no code
  with it;
- optionally, a short rotation-only optimization to confirm the search
  converges onto the same bound from random starts.

Exits nonzero if the two independent evaluation routes disagree.

    python3 scripts/compute_baselines.py
    python3 scripts/compute_baselines.py --optimize --restarts 12 --max-iters 1500
"""

import argparse
import math
import sys

from superqubit import chsh


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        description="classical and rotation-only reference values for the game"
    )
    ap.add_argument("--optimize", action="store_true",
                    help="also run a rotation-only optimization")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=12)
    ap.add_argument("--max-iters", type=int, default=1500)
    args = ap.parse_args(argv)

    classical = chsh.best_classical_win_prob()
    target = math.cos(math.pi / 8.0) ** 2
    strat = chsh.Strategy.tsirelson()
    graded = chsh.win_prob(strat)
    reference = chsh.oracle_win_prob(strat)

    print(f"classical (exhaustive):            {classical:.15f}")
    print(f"rotation-only, graded evaluation:  {graded:.15f}")
    print(f"rotation-only, complex reference:  {reference:.15f}")
    print(f"cos^2(pi/8):                       {target:.15f}")
    print(f"route disagreement:                {abs(graded - reference):.3e}")
    print(f"distance from cos^2(pi/8):         {abs(graded - target):.3e}")

    ok = abs(graded - reference) < 1e-10 and abs(graded - target) < 1e-12

    if args.optimize:
        config = chsh.OptimizeConfig(
            seed=args.seed,
            restarts=args.restarts,
            max_iters=args.max_iters,
            quantum_only=True,
        )
        print(f"rotation-only search: seed={config.seed} "
              f"restarts={config.restarts} max_iters={config.max_iters}")
        result = chsh.optimize(config)
        gap = target - result.p_win
        print(f"  best p_win = {result.p_win:.15f}  (gap to bound {gap:+.3e})")
        ok = ok and result.feasible and abs(gap) < 1e-6

    print("ok" if ok else "MISMATCH")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
