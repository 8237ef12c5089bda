"""Combinatorial bounds on Banzhaf indices, with violation flagging.

These are diagnostic computations for single-quota games.  The per-player
bound excludes two coalition families that provably contain no swings (small
coalitions that cannot win even with the player, and large ones that stay
winning without it).  The two global bounds and the max-weight conjecture
are reported as computed, flagged when the exact indices contradict them;
several fail on small instances, and the point of this module is to say so
rather than to hide it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .games import (
    InvalidGameError,
    VotingGame,
    coalition_members,
    coalition_size,
    is_critical_classical,
    is_winning,
)
from .exact import IndexReport, exact_indices
from .data import RandomGameSpec, random_game

__all__ = [
    "BoundsReport",
    "GlobalBounds",
    "ConjectureReport",
    "ht_profile",
    "ht_bound",
    "size_window",
    "global_bounds",
    "bounds_report",
    "all_critical_weight_check",
    "scan_all_critical_coalitions",
    "conjecture_check",
    "conjecture_scan",
]


def _require_single_quota(game: VotingGame, what: str) -> None:
    if game.num_dimensions != 1:
        raise InvalidGameError(f"{what} requires a single-quota game")


def _weights(game: VotingGame) -> list[float]:
    return [row[0] for row in game.weights]


def ht_profile(game: VotingGame, player: int | str) -> tuple[int, int | None]:
    """The exclusion sizes (t, h) behind the per-player bound.

    t is the largest count such that the t smallest weights, with the player
    forced in, still sum below the quota (0 when even the player alone meets
    it).  h is the smallest count such that the h largest other weights sum
    strictly above the quota (None when no such count exists).
    """
    _require_single_quota(game, "ht_profile")
    i = game.player_index(player)
    w = _weights(game)
    q = game.quotas[0]
    others = sorted(w[:i] + w[i + 1 :])
    t = 0
    acc = w[i]
    if acc < q:
        t = 1
        for v in others:
            if acc + v < q:
                acc += v
                t += 1
            else:
                break
    h: int | None = None
    acc = 0.0
    for count, v in enumerate(reversed(others), start=1):
        acc += v
        if acc > q:
            h = count
            break
    return t, h


def ht_bound(game: VotingGame, player: int | str) -> float:
    """Upper bound on the player's absolute index from the (t, h) profile.

    Value is (2^n - 2^t - 2^(n-h)) / 2^n.  A term drops to 0 when its
    exclusion family is empty: the 2^(n-h) term when no h exists, and the
    2^t term when t = 0 (the player meets the quota alone, so no coalition
    is excluded and subtracting 2^0 would falsely shave the bound below an
    attainable index of 1).
    """
    t, h = ht_profile(game, player)
    n = game.num_players
    total = 1 << n
    excluded = 0
    if t >= 1:
        excluded += 1 << t
    if h is not None:
        excluded += 1 << (n - h)
    return (total - excluded) / total


def size_window(game: VotingGame) -> tuple[int, int | float]:
    """Coalition-size window (m_low, M_high) outside of which no swings live.

    m_low is the largest size at which even all-max-weight coalitions stay
    below the quota; M_high is the smallest size at which all-min-weight
    coalitions stay winning after losing a max-weight member (inf when the
    minimum weight is 0).  Read as: sizes <= m_low cannot win, sizes >=
    M_high cannot produce a swing.
    """
    _require_single_quota(game, "size_window")
    w = _weights(game)
    q = game.quotas[0]
    w_max = max(w)
    w_min = min(w)
    n = game.num_players
    if w_max == 0.0:
        m_low = n
    else:
        m_low = max(0, math.ceil(q / w_max) - 1)
        while (m_low + 1) * w_max < q:
            m_low += 1
        while m_low > 0 and not m_low * w_max < q:
            m_low -= 1
    if w_min == 0.0:
        m_high: int | float = math.inf
    else:
        m_high = math.floor((q + w_max) / w_min) + 1
        while not (m_high * w_min - w_max > q):
            m_high += 1
        while m_high > 1 and (m_high - 1) * w_min - w_max > q:
            m_high -= 1
    return m_low, m_high


@dataclass(frozen=True)
class GlobalBounds:
    """The two game-level index bounds, with the window they derive from."""

    m_low: int
    M_high: float
    bound1: float
    bound2: float
    bound1_violated: bool | None
    bound2_violated: bool | None


def global_bounds(game: VotingGame, exact: IndexReport | None = None) -> GlobalBounds:
    """Evaluate both game-level bounds over the size window.

    bound1 = (sum_{i=m_low+1}^{min(M_high, n)} C(n, i) - 2^(n-1)) / 2^n and
    bound2 = (sum i*C(n, i)) / (n 2^n) - 1/2, computed in exact rational
    arithmetic.  Negative values are reported as-is.  When an exact index
    report is supplied, each bound is flagged violated if the max absolute
    index exceeds it.
    """
    _require_single_quota(game, "global_bounds")
    n = game.num_players
    m_low, m_high = size_window(game)
    top = n if math.isinf(m_high) else min(int(m_high), n)
    total = 1 << n
    csum = sum(math.comb(n, i) for i in range(m_low + 1, top + 1))
    isum = sum(i * math.comb(n, i) for i in range(m_low + 1, top + 1))
    bound1 = float(Fraction(csum - (1 << (n - 1)), total))
    bound2 = float(Fraction(isum, n * total) - Fraction(1, 2))
    b1v = b2v = None
    if exact is not None:
        peak = max(exact.absolute)
        b1v = peak > bound1
        b2v = peak > bound2
    return GlobalBounds(
        m_low=m_low,
        M_high=m_high,
        bound1=bound1,
        bound2=bound2,
        bound1_violated=b1v,
        bound2_violated=b2v,
    )


@dataclass(frozen=True)
class BoundsReport:
    """Per-player and game-level bound diagnostics for one game."""

    player_ids: tuple[str, ...]
    ht_bounds: tuple[float, ...]
    t_values: tuple[int, ...]
    h_values: tuple[int | None, ...]
    m_low: int
    M_high: float
    bound1: float
    bound2: float
    ht_violations: tuple[bool, ...] | None
    bound1_violated: bool | None
    bound2_violated: bool | None
    size_window_reading: str = "m_low read as largest size that cannot win; M_high literal"


def bounds_report(game: VotingGame, exact: IndexReport | None = None) -> BoundsReport:
    """Assemble every bound for the game, flagged against ``exact`` when given."""
    _require_single_quota(game, "bounds_report")
    profiles = [ht_profile(game, i) for i in range(game.num_players)]
    hts = tuple(ht_bound(game, i) for i in range(game.num_players))
    gb = global_bounds(game, exact)
    ht_violations = None
    if exact is not None:
        ht_violations = tuple(a > b for a, b in zip(exact.absolute, hts))
    return BoundsReport(
        player_ids=game.player_ids,
        ht_bounds=hts,
        t_values=tuple(p[0] for p in profiles),
        h_values=tuple(p[1] for p in profiles),
        m_low=gb.m_low,
        M_high=gb.M_high,
        bound1=gb.bound1,
        bound2=gb.bound2,
        ht_violations=ht_violations,
        bound1_violated=gb.bound1_violated,
        bound2_violated=gb.bound2_violated,
    )


def all_critical_weight_check(game: VotingGame, coalition: int) -> str:
    """Check the weight cap on winning coalitions whose members are all
    critical: w(C) < |C| q / (|C| - 1).

    Returns "holds" or "violated" when the cap applies (all members
    critical, at least two of them), "not-applicable" otherwise.  Losing
    coalitions are rejected.
    """
    _require_single_quota(game, "all_critical_weight_check")
    if not is_winning(game, coalition):
        raise InvalidGameError("all_critical_weight_check needs a winning coalition")
    size = coalition_size(coalition)
    if size < 2:
        return "not-applicable"
    if not all(is_critical_classical(game, i, coalition) for i in coalition_members(coalition)):
        return "not-applicable"
    weight = sum(game.weights[i][0] for i in coalition_members(coalition))
    q = game.quotas[0]
    return "holds" if weight < size * q / (size - 1) else "violated"


def scan_all_critical_coalitions(game: VotingGame) -> tuple[int, list[int]]:
    """Apply the all-critical weight cap to every winning coalition.

    Returns the number of coalitions where the cap applied and the list of
    coalitions (as bitmasks) that violated it.
    """
    _require_single_quota(game, "scan_all_critical_coalitions")
    checked = 0
    violations = []
    for c in range(1, 1 << game.num_players):
        if not is_winning(game, c):
            continue
        verdict = all_critical_weight_check(game, c)
        if verdict == "not-applicable":
            continue
        checked += 1
        if verdict == "violated":
            violations.append(c)
    return checked, violations


@dataclass(frozen=True)
class ConjectureReport:
    """Evidence from random games for the max-weight index cap.

    For each game the normalized index of every player is checked against
    2 w_max / w_total.  This reports evidence only; it asserts nothing.
    """

    games_scanned: int
    counterexamples: tuple[tuple[str, str, float, float], ...]
    min_slack: float
    seed: int


def conjecture_check(
    game: VotingGame, report: IndexReport | None = None
) -> tuple[list[tuple[str, str, float, float]], float]:
    """Test every player's normalized index against the 2 w_max / w_total
    cap on one game.

    Returns the counterexamples, each as (game description, player id,
    normalized index, cap), and the min slack cap - index over players.
    """
    _require_single_quota(game, "conjecture_check")
    if report is None:
        report = exact_indices(game)
    w = _weights(game)
    cap = 2.0 * max(w) / sum(w)
    counterexamples = []
    min_slack = math.inf
    for i, norm in enumerate(report.normalized):
        min_slack = min(min_slack, cap - norm)
        if norm > cap:
            desc = f"weights={w} q={game.quotas[0]}"
            counterexamples.append((desc, game.player_ids[i], norm, cap))
    return counterexamples, min_slack


def conjecture_scan(
    trials: int,
    seed: int,
    spec: RandomGameSpec = RandomGameSpec(),
) -> ConjectureReport:
    """Exactly evaluate ``trials`` random games and test every player's
    normalized index against the 2 w_max / w_total cap.

    Each trial derives its own stream from (seed, trial index), so the
    report is identical for identical arguments regardless of evaluation
    order.  Never asserts the cap; it reports the evidence.
    """
    if trials <= 0:
        raise InvalidGameError(f"trials must be positive, got {trials}")
    counterexamples: list[tuple[str, str, float, float]] = []
    min_slack = math.inf
    for trial in range(trials):
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))
        )
        game = random_game(rng, spec)
        found, slack = conjecture_check(game)
        counterexamples.extend(found)
        min_slack = min(min_slack, slack)
    return ConjectureReport(
        games_scanned=trials,
        counterexamples=tuple(counterexamples),
        min_slack=min_slack,
        seed=seed,
    )
