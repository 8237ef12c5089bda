#!/usr/bin/env python3
"""EU-18 Council case study: classical power table, plus optional
association-aware variants from a migration table or random matrices."""

import argparse

import numpy as np

from banzhaf import (
    AssociationMatrix,
    build_migration_association,
    eu_game,
    exact_indices,
    random_association,
)
from banzhaf.data import load_migration_csv_file


def print_table(title, game, result):
    print(title)
    print(f"{'country':>8} {'weight':>7} {'swings':>7} {'absolute':>9} {'normalized':>11}")
    for i, pid in enumerate(result.player_ids):
        print(
            f"{pid:>8} {game.weights[i][0]:>7.0f} {result.swing_counts[i]:>7}"
            f" {result.absolute[i]:>9.5f} {result.normalized[i]:>11.5f}"
        )
    print(f"total swings: {result.total_swings}")


def migration_phi(game, path):
    table = load_migration_csv_file(path)
    missing = [pid for pid in game.player_ids if pid not in table.labels]
    if missing:
        raise SystemExit(
            f"{path}: no rows for {', '.join(missing)}; the table must cover all {game.num_players} countries"
        )
    phi = build_migration_association(table)
    order = [table.labels.index(pid) for pid in game.player_ids]
    rows = tuple(tuple(phi.entries[i][j] for j in order) for i in order)
    return AssociationMatrix(rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--migration", metavar="CSV", help="18x18 migration table to derive an association matrix from")
    parser.add_argument("--random-association", action="store_true", help="average indices over random association matrices")
    parser.add_argument("--runs", type=int, default=100, help="number of random matrices (default 100)")
    parser.add_argument("--seed", type=int, default=0, help="seed for the random matrices")
    args = parser.parse_args()

    game = eu_game()
    classical = exact_indices(game)
    print_table("classical indices (quotas 215 / 291.3566 / 10)", game, classical)

    if args.migration:
        result = exact_indices(game, migration_phi(game, args.migration))
        print()
        print_table(f"association indices from {args.migration}", game, result)

    if args.random_association:
        m = game.num_players
        acc = np.zeros(m)
        for run in range(args.runs):
            phi = random_association(m, seed=args.seed + run)
            acc += exact_indices(game, phi).normalized
        acc /= args.runs
        print()
        print(f"mean normalized index over {args.runs} random association matrices (seed {args.seed}):")
        for pid, value, base in zip(game.player_ids, acc, classical.normalized):
            print(f"{pid:>8} {value:>11.5f}  (classical {base:.5f}, shift {value - base:+.5f})")


if __name__ == "__main__":
    main()
