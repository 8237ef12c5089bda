#!/usr/bin/env python3
"""Randomized search for counterexamples to the normalized-index cap
beta_i <= 2 w_max / w_total on single-quota games."""

import argparse

from banzhaf import conjecture_scan
from banzhaf.data import RandomGameSpec


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1000, help="number of random games (default 1000)")
    parser.add_argument("--seed", type=int, default=0, help="stream seed (default 0)")
    parser.add_argument("--max-players", type=int, default=12, help="largest game size drawn (default 12)")
    parser.add_argument("--max-weight", type=int, default=20, help="largest player weight drawn (default 20)")
    args = parser.parse_args()

    spec = RandomGameSpec(max_players=args.max_players, max_weight=args.max_weight)
    report = conjecture_scan(args.trials, seed=args.seed, spec=spec)
    print(f"games scanned: {report.games_scanned} (seed {report.seed})")
    print(f"min slack (cap - normalized index): {report.min_slack:.6f}")
    print(f"counterexamples: {len(report.counterexamples)}")
    for desc, pid, value, cap in report.counterexamples:
        print(f"  {desc}: player {pid} has normalized index {value:.6f} > cap {cap:.6f}")


if __name__ == "__main__":
    main()
