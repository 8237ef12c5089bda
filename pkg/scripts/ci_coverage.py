#!/usr/bin/env python3
"""Empirical confidence-interval coverage: repeat the Monte Carlo estimator
on a game with known exact indices and count how often each player's
interval captures the truth."""

import argparse

from banzhaf import (
    CI_METHODS,
    confidence_interval,
    estimate_indices,
    exact_indices,
    load_game_file,
    single_quota_game,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--game", metavar="JSON", help="game file (default: 12 players, weights 12..1, quota 39)")
    parser.add_argument("--method", choices=CI_METHODS, default="hoeffding")
    parser.add_argument("--delta", type=float, default=0.05, help="miss probability per interval (default 0.05)")
    parser.add_argument("--samples", type=int, default=1000, help="Monte Carlo samples per trial (default 1000)")
    parser.add_argument("--trials", type=int, default=200, help="independent repetitions (default 200)")
    parser.add_argument("--seed", type=int, default=0, help="base seed; trial t uses seed + t")
    args = parser.parse_args()

    game = load_game_file(args.game) if args.game else single_quota_game(list(range(12, 0, -1)), 39)
    exact = exact_indices(game).absolute
    m = game.num_players

    hits = [0] * m
    width = [0.0] * m
    for t in range(args.trials):
        report = estimate_indices(game, samples=args.samples, seed=args.seed + t)
        for i in range(m):
            ci = confidence_interval(report, i, delta=args.delta, method=args.method, game=game)
            if ci.lower <= exact[i] <= ci.upper:
                hits[i] += 1
            width[i] += ci.upper - ci.lower

    print(
        f"{args.method} intervals, delta={args.delta}, n={args.samples}, "
        f"{args.trials} trials (nominal coverage {1 - args.delta:.3f})"
    )
    print(f"{'player':>8} {'exact':>8} {'coverage':>9} {'mean width':>11}")
    for i, pid in enumerate(game.player_ids):
        print(
            f"{pid:>8} {exact[i]:>8.5f} {hits[i] / args.trials:>9.3f}"
            f" {width[i] / args.trials:>11.5f}"
        )


if __name__ == "__main__":
    main()
