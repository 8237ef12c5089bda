"""Monte Carlo estimation of Banzhaf indices with distribution-free and
variance-adaptive confidence intervals.

Each player gets its own counter-based random stream (Philox keyed by the
master seed and the player index), so estimates are reproducible bit for bit
regardless of evaluation order and the per-player streams stay independent.
A sample for player ``i`` is a uniform coalition containing ``i``: the other
``m - 1`` membership bits are fair coin flips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

from .games import (
    AssociationMatrix,
    InvalidGameError,
    VotingGame,
    persuasion_loads,
)

__all__ = [
    "EstimateReport",
    "ConfidenceInterval",
    "estimate_indices",
    "confidence_interval",
    "required_samples",
    "student_t_quantile",
]

CI_METHODS = ("hoeffding", "student", "selfbounding")

_SAMPLE_CHUNK = 1 << 16


@dataclass(frozen=True)
class EstimateReport:
    """Monte Carlo estimates of the absolute indices of every player."""

    player_ids: tuple[str, ...]
    mode: str  # "classical" or "association"
    estimates: tuple[float, ...]
    swing_counts: tuple[int, ...]
    samples: int
    sample_variances: tuple[float | None, ...]
    seed: int

    @property
    def normalized(self) -> tuple[float, ...]:
        total = sum(self.estimates)
        if total == 0.0:
            return (0.0,) * len(self.estimates)
        return tuple(e / total for e in self.estimates)


@dataclass(frozen=True)
class ConfidenceInterval:
    """Two-sided interval around one player's estimate.

    ``halfwidth`` is the raw analytic halfwidth; ``lower``/``upper`` are
    clipped to [0, 1] since the estimand is a probability.
    """

    player: str
    estimate: float
    lower: float
    upper: float
    halfwidth: float
    method: str
    delta: float
    samples: int
    B: float | None = None


def _player_rng(seed: int, player_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(player_index,))
    return np.random.Generator(np.random.Philox(ss))


def _swing_count_for_player(
    game: VotingGame,
    i: int,
    load_row: np.ndarray,
    n: int,
    seed: int,
) -> int:
    m = game.num_players
    W = game.weight_matrix
    thresholds = game.winning_thresholds
    rng = _player_rng(seed, i)
    words = (m + 63) // 64
    swings = 0
    done = 0
    while done < n:
        chunk = min(_SAMPLE_CHUNK, n - done)
        raw = rng.integers(0, 2**64, size=(chunk, words), dtype=np.uint64)
        members = np.empty((chunk, m), dtype=np.float64)
        for j in range(m):
            members[:, j] = (raw[:, j // 64] >> np.uint64(j % 64)) & np.uint64(1)
        members[:, i] = 1.0
        sums = members @ W
        win = sums[:, 0] >= thresholds[0]
        for d in range(1, game.num_dimensions):
            win &= sums[:, d] >= thresholds[d]
        breaks = sums[:, 0] - load_row[0] < thresholds[0]
        for d in range(1, game.num_dimensions):
            breaks |= sums[:, d] - load_row[d] < thresholds[d]
        swings += int(np.count_nonzero(win & breaks))
        done += chunk
    return swings


def estimate_indices(
    game: VotingGame,
    phi: AssociationMatrix | None = None,
    samples: int = 10_000,
    seed: int = 0,
) -> EstimateReport:
    """Estimate every player's absolute index from ``samples`` coalitions
    drawn uniformly among those containing the player.

    Each sampled swing indicator is an unbiased Bernoulli draw of the
    absolute index, so the mean is unbiased.  The per-player sample variance
    is the exact unbiased variance of the 0/1 draws, ``s(n-s)/(n(n-1))``
    computed from the integer swing count ``s`` (``None`` when ``n < 2``).
    """
    if samples <= 0:
        raise InvalidGameError(f"samples must be positive, got {samples}")
    m = game.num_players
    if phi is None:
        loads = game.weight_matrix
        mode = "classical"
    else:
        loads = np.array(persuasion_loads(game, phi), dtype=np.float64)
        mode = "association"
    counts = [
        _swing_count_for_player(game, i, loads[i], samples, seed) for i in range(m)
    ]
    n = samples
    estimates = tuple(c / n for c in counts)
    if n >= 2:
        variances: tuple[float | None, ...] = tuple(
            (c * (n - c)) / (n * (n - 1)) for c in counts
        )
    else:
        variances = (None,) * m
    return EstimateReport(
        player_ids=game.player_ids,
        mode=mode,
        estimates=estimates,
        swing_counts=tuple(counts),
        samples=n,
        sample_variances=variances,
        seed=seed,
    )


def student_t_quantile(tail: float, df: int) -> float:
    """Upper-tail Student t quantile: the ``t`` with ``P(T > t) = tail``.

    Solved by bisecting the regularised incomplete beta form of the t tail
    probability to an absolute tolerance of 1e-9.
    """
    if not 0.0 < tail < 1.0:
        raise ValueError(f"tail probability must be in (0, 1), got {tail}")
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    if tail == 0.5:
        return 0.0
    if tail > 0.5:
        return -student_t_quantile(1.0 - tail, df)

    def upper_tail(t: float) -> float:
        return 0.5 * float(special.betainc(df / 2.0, 0.5, df / (df + t * t)))

    lo, hi = 0.0, 1.0
    while upper_tail(hi) > tail:
        hi *= 2.0
        if hi > 1e18:
            raise ValueError(f"t quantile diverged for tail={tail}, df={df}")
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if upper_tail(mid) > tail:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _default_self_bound(
    game: VotingGame | None, player: int, n: int, delta: float
) -> tuple[float, float]:
    """Closed-form halfwidth and matching B for the self-bounding method
    when no explicit B is given.

    B defaults to ``2u + hw`` where ``u`` caps the player's index (the
    combinatorial upper bound when a single-quota game is supplied, else 1)
    and ``hw`` is the halfwidth itself; substituting into
    ``hw = sqrt(B ln(2/delta) / n)`` gives a quadratic whose positive root
    is taken, so the returned pair is exactly self-consistent.  The result
    always lands inside the admissible clamp ``[hw, 2 + hw]``.
    """
    u = 1.0
    if game is not None and game.num_dimensions == 1:
        from .bounds import ht_bound  # local import, bounds depends on games only

        u = min(1.0, ht_bound(game, player))
    c = math.log(2.0 / delta) / n
    hw = 0.5 * (c + math.sqrt(c * c + 8.0 * u * c))
    return hw, 2.0 * u + hw


def confidence_interval(
    report: EstimateReport,
    player: int | str,
    delta: float,
    method: str = "hoeffding",
    B: float | None = None,
    game: VotingGame | None = None,
) -> ConfidenceInterval:
    """Two-sided level ``1 - delta`` interval for one player's estimate.

    Methods: ``hoeffding`` (distribution free), ``student`` (variance
    adaptive, needs ``n >= 2``), ``selfbounding`` (Bernstein-style bound
    driven by the scale cap ``B``; when ``B`` is omitted it is derived from
    the game's combinatorial index bound, or 1 when no game is given).
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    if method not in CI_METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {CI_METHODS}")
    if isinstance(player, str):
        try:
            i = report.player_ids.index(player)
        except ValueError:
            raise InvalidGameError(f"unknown player id {player!r}") from None
    else:
        i = player
    n = report.samples
    est = report.estimates[i]
    used_b: float | None = None
    if method == "hoeffding":
        hw = math.sqrt(math.log(2.0 / delta) / (2.0 * n))
    elif method == "student":
        if n < 2:
            raise ValueError("student intervals need at least 2 samples")
        s2 = report.sample_variances[i]
        assert s2 is not None
        t = student_t_quantile(delta / 2.0, n - 1)
        hw = t * math.sqrt(s2 / n)
    else:
        if B is None:
            hw, used_b = _default_self_bound(game, i, n, delta)
        else:
            if B <= 0:
                raise ValueError(f"B must be positive, got {B}")
            used_b = float(B)
            hw = math.sqrt(used_b * math.log(2.0 / delta) / n)
    return ConfidenceInterval(
        player=report.player_ids[i],
        estimate=est,
        lower=max(0.0, est - hw),
        upper=min(1.0, est + hw),
        halfwidth=hw,
        method=method,
        delta=delta,
        samples=n,
        B=used_b,
    )


def required_samples(
    epsilon: float,
    delta: float,
    method: str = "hoeffding",
    s2: float | None = None,
    B: float | None = None,
) -> int:
    """Samples needed for a two-sided halfwidth of ``epsilon`` at level
    ``1 - delta``.

    ``student`` sizes by the normal late-stage approximation and needs a
    variance estimate ``s2``; ``selfbounding`` needs the scale cap ``B``.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    if method == "hoeffding":
        return math.ceil(math.log(2.0 / delta) / (2.0 * epsilon * epsilon))
    if method == "student":
        if s2 is None:
            raise ValueError("student sizing needs a variance estimate s2")
        if s2 < 0:
            raise ValueError(f"s2 must be non-negative, got {s2}")
        z = float(special.ndtri(1.0 - delta / 2.0))
        return math.ceil(s2 * z * z / (epsilon * epsilon))
    if method == "selfbounding":
        if B is None:
            raise ValueError("selfbounding sizing needs the scale cap B")
        if B <= 0:
            raise ValueError(f"B must be positive, got {B}")
        return math.ceil(B * math.log(2.0 / delta) / (epsilon * epsilon))
    raise ValueError(f"unknown method {method!r}, expected one of {CI_METHODS}")
