"""Independent reference implementations the engine tests compare against.

Everything here is deliberately naive: per-pair predicate loops and
arbitrary-precision arithmetic, no shared code with the vectorized engines
beyond the game-core predicates themselves.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from banzhaf.games import (
    AssociationMatrix,
    VotingGame,
    coalition_members,
    is_critical_assoc,
    is_critical_classical,
)
from banzhaf.data import RandomGameSpec, random_game


def naive_swing_counts(game: VotingGame, phi: AssociationMatrix | None = None) -> list[int]:
    """Count swings by testing every (player, coalition) pair one at a time."""
    m = game.num_players
    counts = [0] * m
    for c in range(1, 1 << m):
        for i in coalition_members(c):
            if phi is None:
                crit = is_critical_classical(game, i, c)
            else:
                crit = is_critical_assoc(game, phi, i, c)
            if crit:
                counts[i] += 1
    return counts


def naive_absolute(game: VotingGame, phi: AssociationMatrix | None = None) -> list[float]:
    denom = 1 << (game.num_players - 1)
    return [c / denom for c in naive_swing_counts(game, phi)]


def fraction_global_bounds(n: int, m_low: int, top: int) -> tuple[Fraction, Fraction]:
    """The two game-level bounds as exact rationals, built from a Pascal
    triangle rather than math.comb."""
    pascal = [[1]]
    for r in range(1, n + 1):
        prev = pascal[-1]
        pascal.append([1] + [prev[j - 1] + prev[j] for j in range(1, r)] + [1])
    comb = pascal[n]
    csum = sum(comb[i] for i in range(m_low + 1, top + 1))
    isum = sum(i * comb[i] for i in range(m_low + 1, top + 1))
    total = 2**n
    bound1 = Fraction(csum - 2 ** (n - 1), total)
    bound2 = Fraction(isum, n * total) - Fraction(1, 2)
    return bound1, bound2


def corpus(
    count: int,
    seed: int,
    max_players: int = 10,
    with_phi: bool = False,
) -> list[tuple[VotingGame, AssociationMatrix | None]]:
    """Deterministic list of random games, optionally each with a random
    association matrix drawn from the same stream."""
    spec = RandomGameSpec(max_players=max_players)
    out = []
    for trial in range(count):
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))
        )
        game = random_game(rng, spec)
        phi = None
        if with_phi:
            m = game.num_players
            a = rng.uniform(-1.0, 1.0, size=(m, m))
            np.fill_diagonal(a, 1.0)
            phi = AssociationMatrix(tuple(tuple(float(v) for v in row) for row in a))
        out.append((game, phi))
    return out
