"""Exact swing counting by full enumeration of the coalition space.

The enumerator materialises per-dimension subset sums for the low ``b`` bits
of the coalition mask once (``2^b`` floats per dimension) and streams over
the ``2^(m-b)`` high-bit blocks, so memory stays bounded while every one of
the ``2^m`` coalitions is visited exactly once.  Swing counts are integers,
accumulated per block; any split of the high-bit range yields the same
totals, which is what makes worker partitioning safe.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .games import (
    AssociationMatrix,
    InvalidGameError,
    VotingGame,
    persuasion_loads,
)

__all__ = [
    "HARD_PLAYER_CAP",
    "SOFT_PLAYER_WARNING",
    "IndexReport",
    "DeltaReport",
    "CoalitionTable",
    "exact_indices",
    "association_delta",
]

HARD_PLAYER_CAP = 32
SOFT_PLAYER_WARNING = 26
_DEFAULT_BLOCK_BITS = 16


def _check_size(game: VotingGame) -> None:
    m = game.num_players
    if m > HARD_PLAYER_CAP:
        raise InvalidGameError(
            f"exact enumeration is capped at {HARD_PLAYER_CAP} players, got {m}"
        )
    if m >= SOFT_PLAYER_WARNING:
        warnings.warn(
            f"enumerating 2^{m} coalitions; expect a long run",
            RuntimeWarning,
            stacklevel=3,
        )


@dataclass(frozen=True)
class IndexReport:
    """Exact power indices for one game and one criticality mode."""

    player_ids: tuple[str, ...]
    mode: str  # "classical" or "association"
    swing_counts: tuple[int, ...]
    absolute: tuple[float, ...]
    normalized: tuple[float, ...]
    total_swings: int
    coalitions_per_player: int


@dataclass(frozen=True)
class DeltaReport:
    """Change in one player's absolute index when association kicks in."""

    player: str
    delta: float
    gain_count: int
    loss_count: int
    window: tuple[float, float]
    surplus: float


class CoalitionTable:
    """Blocked subset-sum table over a game's full coalition space.

    Building the table costs the one-off sum arrays; `swing_counts` can then
    be called repeatedly with different load matrices (for instance one call
    per sampled association matrix) without re-enumerating.
    """

    def __init__(self, game: VotingGame, block_bits: int | None = None):
        _check_size(game)
        self.game = game
        m = game.num_players
        b = min(m, _DEFAULT_BLOCK_BITS if block_bits is None else block_bits)
        if b < 1:
            raise InvalidGameError("block_bits must be at least 1")
        self.low_bits = b
        self.high_bits = m - b
        W = game.weight_matrix
        k = game.num_dimensions
        self.low_sums = [self._subset_sums(W[:b, d], b) for d in range(k)]
        self.high_sums = [self._subset_sums(W[b:, d], m - b) for d in range(k)]
        # membership masks over the low block, one bool row per low player
        n_low = 1 << b
        idx = np.arange(n_low, dtype=np.uint32)
        self.low_member = [((idx >> i) & 1).astype(bool) for i in range(b)]

    @staticmethod
    def _subset_sums(weights: np.ndarray, bits: int) -> np.ndarray:
        sums = np.zeros(1 << bits, dtype=np.float64)
        for i in range(bits):
            lo = 1 << i
            sums[lo : lo << 1] = sums[:lo] + weights[i]
        return sums

    def high_range(self) -> range:
        return range(1 << self.high_bits)

    def _block_sums(self, h: int) -> list[np.ndarray]:
        return [hs[h] + ls for hs, ls in zip(self.high_sums, self.low_sums)]

    def _winning(self, sums: Sequence[np.ndarray], strict: bool) -> np.ndarray:
        thresholds = self.game.strict_thresholds if strict else self.game.winning_thresholds
        win = (sums[0] > thresholds[0]) if strict else (sums[0] >= thresholds[0])
        for s, t in zip(sums[1:], thresholds[1:]):
            win &= (s > t) if strict else (s >= t)
        return win

    def _removal_breaks(
        self, sums: Sequence[np.ndarray], loads: np.ndarray, strict: bool
    ) -> np.ndarray:
        thresholds = self.game.strict_thresholds if strict else self.game.winning_thresholds
        if strict:
            out = sums[0] - loads[0] <= thresholds[0]
            for s, l, t in zip(sums[1:], loads[1:], thresholds[1:]):
                out |= s - l <= t
        else:
            out = sums[0] - loads[0] < thresholds[0]
            for s, l, t in zip(sums[1:], loads[1:], thresholds[1:]):
                out |= s - l < t
        return out

    def swing_counts(
        self,
        loads: np.ndarray,
        strict: bool = False,
        high_range: range | None = None,
    ) -> np.ndarray:
        """Count, per player, the coalitions the player swings.

        ``loads`` is the (m, k) matrix of removal loads.  ``high_range``
        restricts the scan to a slice of high-bit blocks; summing the counts
        from any partition of the full range reproduces the full counts
        exactly.
        """
        m = self.game.num_players
        b = self.low_bits
        counts = np.zeros(m, dtype=np.int64)
        for h in high_range if high_range is not None else self.high_range():
            sums = self._block_sums(h)
            win = self._winning(sums, strict)
            if not win.any():
                continue
            for i in range(m):
                if i >= b:
                    if not (h >> (i - b)) & 1:
                        continue
                    member = win
                else:
                    member = win & self.low_member[i]
                breaks = self._removal_breaks(sums, loads[i], strict)
                counts[i] += int(np.count_nonzero(member & breaks))
        return counts

    def criticality_gain_loss(
        self,
        player: int,
        base_loads: np.ndarray,
        alt_loads: np.ndarray,
    ) -> tuple[int, int]:
        """Coalitions where ``alt`` loads make the player critical but
        ``base`` loads do not (gain), and vice versa (loss)."""
        b = self.low_bits
        gain = loss = 0
        for h in self.high_range():
            if player >= b and not (h >> (player - b)) & 1:
                continue
            sums = self._block_sums(h)
            win = self._winning(sums, strict=False)
            if player < b:
                win = win & self.low_member[player]
            if not win.any():
                continue
            base = win & self._removal_breaks(sums, base_loads, strict=False)
            alt = win & self._removal_breaks(sums, alt_loads, strict=False)
            gain += int(np.count_nonzero(alt & ~base))
            loss += int(np.count_nonzero(base & ~alt))
        return gain, loss


def _make_report(game: VotingGame, mode: str, counts: np.ndarray) -> IndexReport:
    m = game.num_players
    denom = 1 << (m - 1)
    total = int(counts.sum())
    absolute = tuple(int(c) / denom for c in counts)
    if total:
        normalized = tuple(int(c) / total for c in counts)
    else:
        normalized = (0.0,) * m
    return IndexReport(
        player_ids=game.player_ids,
        mode=mode,
        swing_counts=tuple(int(c) for c in counts),
        absolute=absolute,
        normalized=normalized,
        total_swings=total,
        coalitions_per_player=denom,
    )


def exact_indices(
    game: VotingGame,
    phi: AssociationMatrix | None = None,
    strict: bool = False,
    table: CoalitionTable | None = None,
) -> IndexReport:
    """Exact Banzhaf indices, classical or association-aware.

    With ``phi`` the removal load of player ``i`` is its persuasion load;
    without, its own weight.  ``strict`` switches the quota comparison to the
    alternate strictly-above convention (a sensitivity knob; the default
    non-strict convention is the one every stated result uses).  Passing a
    prebuilt ``table`` recycles the enumeration arrays across calls.
    """
    if table is None:
        table = CoalitionTable(game)
    elif table.game is not game:
        raise InvalidGameError("table was built for a different game")
    if phi is None:
        loads = game.weight_matrix
        mode = "classical"
    else:
        loads = np.array(persuasion_loads(game, phi), dtype=np.float64)
        mode = "association"
    counts = table.swing_counts(loads, strict=strict)
    return _make_report(game, mode, counts)


def association_delta(
    game: VotingGame,
    phi: AssociationMatrix,
    player: int | str,
    table: CoalitionTable | None = None,
) -> DeltaReport:
    """How association shifts one player's absolute index, with the swing
    window that explains the shift.

    Only defined for single-dimension games.  The player's surplus
    ``d = load - weight`` widens (``d > 0``) or narrows (``d < 0``) the band
    of coalition weights where the player swings; the report carries the
    resulting half-open window ``[lo, hi)`` plus the counts of coalitions
    gained and lost relative to the classical index.
    """
    if game.num_dimensions != 1:
        raise InvalidGameError("association_delta requires a single-quota game")
    i = game.player_index(player)
    if table is None:
        table = CoalitionTable(game)
    elif table.game is not game:
        raise InvalidGameError("table was built for a different game")
    loads = np.array(persuasion_loads(game, phi), dtype=np.float64)
    gain, loss = table.criticality_gain_loss(i, game.weight_matrix[i], loads[i])
    q = game.quotas[0]
    w = game.weights[i][0]
    surplus = float(loads[i][0] - w)
    top = q + w + surplus
    if surplus >= 0:
        window = (q + w, top)
    else:
        window = (max(q, top), q + w)
    denom = 1 << (game.num_players - 1)
    return DeltaReport(
        player=game.player_ids[i],
        delta=(gain - loss) / denom,
        gain_count=gain,
        loss_count=loss,
        window=window,
        surplus=surplus,
    )
