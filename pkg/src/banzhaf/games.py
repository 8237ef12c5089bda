"""Weighted voting games with optional inter-player association.

A game has ``m`` players and ``k`` weight dimensions, each with its own
quota.  A coalition is a bitmask over player indices ``0..m-1``.  The
coalition wins when its summed weight meets every quota (non-strict
comparison, so a coalition sitting exactly on a quota wins).

A member of a winning coalition is critical when subtracting the member's
removal load from the coalition weight breaks at least one quota.  For the
classical index the removal load is the member's own weight.  Under an
association matrix the load becomes the persuasion load: the weight the
member can pull out of the coalition via its influence over every player.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "InvalidGameError",
    "AssociationMatrix",
    "VotingGame",
    "PersuasionLoad",
    "single_quota_game",
    "coalition_of",
    "coalition_members",
    "coalition_size",
    "full_coalition",
    "validate_coalition",
    "coalition_weight",
    "is_winning",
    "is_critical_classical",
    "is_critical_assoc",
    "persuasion_loads",
    "persuasion_load",
]

# Relative tolerance applied at quota boundaries for games whose weights or
# quotas are not integer valued.  Integer games compare exactly.
BOUNDARY_REL_TOL = 1e-12


class InvalidGameError(ValueError):
    """Game or matrix data violates a structural invariant."""


def _float_row(values: Sequence[float], what: str) -> tuple[float, ...]:
    try:
        row = tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise InvalidGameError(f"{what}: not numeric") from exc
    for pos, v in enumerate(row):
        if not math.isfinite(v):
            raise InvalidGameError(f"{what}[{pos}]: not finite")
    return row


@dataclass(frozen=True)
class AssociationMatrix:
    """Square matrix of persuasion coefficients.

    ``entries[i][j]`` quantifies player ``i``'s pull on player ``j``.
    Every entry must satisfy ``|a_ij| <= 1`` and the diagonal is fixed at
    ``a_ii = 1`` (full pull on oneself).
    """

    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(_float_row(r, f"association row {i}") for i, r in enumerate(self.entries))
        object.__setattr__(self, "entries", rows)
        m = len(rows)
        if m == 0:
            raise InvalidGameError("association matrix is empty")
        for i, row in enumerate(rows):
            if len(row) != m:
                raise InvalidGameError(f"association row {i}: expected {m} entries, got {len(row)}")
            if row[i] != 1.0:
                raise InvalidGameError(f"association diagonal a[{i}][{i}] must be 1, got {row[i]!r}")
            for j, a in enumerate(row):
                if abs(a) > 1.0:
                    raise InvalidGameError(f"association a[{i}][{j}]={a!r} outside [-1, 1]")

    @property
    def size(self) -> int:
        return len(self.entries)

    @cached_property
    def matrix(self) -> np.ndarray:
        out = np.array(self.entries, dtype=np.float64)
        out.flags.writeable = False
        return out

    def row(self, i: int) -> tuple[float, ...]:
        return self.entries[i]

    @classmethod
    def identity(cls, m: int) -> "AssociationMatrix":
        return cls(tuple(tuple(1.0 if i == j else 0.0 for j in range(m)) for i in range(m)))


def _default_ids(m: int) -> tuple[str, ...]:
    return tuple(f"p{i + 1}" for i in range(m))


@dataclass(frozen=True)
class VotingGame:
    """An ``m``-player voting game with ``k`` weighted quota dimensions.

    ``weights`` holds one row per player with ``k`` non-negative entries;
    ``quotas`` holds the ``k`` positive thresholds.  ``association`` is
    optional and, when present, must be an ``m x m`` matrix.
    """

    player_ids: tuple[str, ...]
    weights: tuple[tuple[float, ...], ...]
    quotas: tuple[float, ...]
    association: AssociationMatrix | None = None
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids = tuple(str(p) for p in self.player_ids)
        if not ids:
            raise InvalidGameError("game needs at least one player")
        if len(set(ids)) != len(ids):
            raise InvalidGameError("player ids must be unique")
        rows = tuple(
            _float_row(r, f"weights for player {ids[i]}") for i, r in enumerate(self.weights)
        )
        if len(rows) != len(ids):
            raise InvalidGameError(f"{len(ids)} players but {len(rows)} weight rows")
        quotas = _float_row(self.quotas, "quotas")
        if not quotas:
            raise InvalidGameError("game needs at least one quota dimension")
        k = len(quotas)
        for i, row in enumerate(rows):
            if len(row) != k:
                raise InvalidGameError(
                    f"weights for player {ids[i]}: expected {k} entries, got {len(row)}"
                )
            for d, w in enumerate(row):
                if w < 0:
                    raise InvalidGameError(f"weights for player {ids[i]}[{d}]: negative weight {w!r}")
        for d, q in enumerate(quotas):
            if q <= 0:
                raise InvalidGameError(f"quotas[{d}]: must be positive, got {q!r}")
        if self.association is not None and self.association.size != len(ids):
            raise InvalidGameError(
                f"association matrix is {self.association.size}x{self.association.size} "
                f"but the game has {len(ids)} players"
            )
        object.__setattr__(self, "player_ids", ids)
        object.__setattr__(self, "weights", rows)
        object.__setattr__(self, "quotas", quotas)
        object.__setattr__(self, "metadata", dict(self.metadata))

    # eq on the metadata dict is fine: loaders produce plain str/float values.

    @property
    def num_players(self) -> int:
        return len(self.player_ids)

    @property
    def num_dimensions(self) -> int:
        return len(self.quotas)

    def player_index(self, player: int | str) -> int:
        if isinstance(player, str):
            try:
                return self.player_ids.index(player)
            except ValueError:
                raise InvalidGameError(f"unknown player id {player!r}") from None
        if not 0 <= player < self.num_players:
            raise InvalidGameError(f"player index {player} out of range")
        return player

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        out = np.array(self.weights, dtype=np.float64)
        out.flags.writeable = False
        return out

    @cached_property
    def quota_vector(self) -> np.ndarray:
        out = np.array(self.quotas, dtype=np.float64)
        out.flags.writeable = False
        return out

    @cached_property
    def dimension_totals(self) -> tuple[float, ...]:
        return tuple(sum(row[d] for row in self.weights) for d in range(self.num_dimensions))

    @cached_property
    def quota_tolerances(self) -> tuple[float, ...]:
        """Per-dimension absolute tolerance at the quota boundary.

        Zero for dimensions where every weight and the quota are integer
        valued (sums are then exact in float64), a small relative slack
        otherwise.
        """
        tols = []
        for d, q in enumerate(self.quotas):
            integral = q.is_integer() and all(row[d].is_integer() for row in self.weights)
            if integral:
                tols.append(0.0)
            else:
                scale = max(1.0, abs(q), abs(self.dimension_totals[d]))
                tols.append(BOUNDARY_REL_TOL * scale)
        return tuple(tols)

    @cached_property
    def winning_thresholds(self) -> tuple[float, ...]:
        """Effective per-dimension thresholds: a sum wins iff sum >= threshold."""
        return tuple(q - t for q, t in zip(self.quotas, self.quota_tolerances))

    @cached_property
    def strict_thresholds(self) -> tuple[float, ...]:
        """Thresholds for the alternate strict convention: wins iff sum > threshold."""
        return tuple(q + t for q, t in zip(self.quotas, self.quota_tolerances))


def single_quota_game(
    weights: Sequence[float],
    quota: float,
    player_ids: Sequence[str] | None = None,
    association: AssociationMatrix | None = None,
    metadata: Mapping[str, object] | None = None,
) -> VotingGame:
    """Build a one-dimensional game from a flat weight list."""
    ids = tuple(player_ids) if player_ids is not None else _default_ids(len(weights))
    return VotingGame(
        player_ids=ids,
        weights=tuple((float(w),) for w in weights),
        quotas=(float(quota),),
        association=association,
        metadata=dict(metadata or {}),
    )


# ---------------------------------------------------------------------------
# Coalitions as bitmasks


def coalition_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def coalition_members(coalition: int) -> Iterator[int]:
    i = 0
    c = coalition
    while c:
        if c & 1:
            yield i
        c >>= 1
        i += 1


def coalition_size(coalition: int) -> int:
    return coalition.bit_count()


def full_coalition(m: int) -> int:
    return (1 << m) - 1


def validate_coalition(game: VotingGame, coalition: int) -> None:
    if coalition < 0 or coalition >> game.num_players:
        raise InvalidGameError(
            f"coalition {coalition:#x} has bits outside 0..{game.num_players - 1}"
        )


# ---------------------------------------------------------------------------
# Predicates


def coalition_weight(game: VotingGame, coalition: int) -> tuple[float, ...]:
    """Summed weight of the coalition in every dimension."""
    validate_coalition(game, coalition)
    totals = [0.0] * game.num_dimensions
    for i in coalition_members(coalition):
        row = game.weights[i]
        for d in range(game.num_dimensions):
            totals[d] += row[d]
    return tuple(totals)


def is_winning(game: VotingGame, coalition: int, strict: bool = False) -> bool:
    """Whether the coalition meets every quota.

    The default convention is non-strict: a sum exactly on the quota wins.
    ``strict=True`` switches to the alternate strictly-above convention.
    """
    sums = coalition_weight(game, coalition)
    if strict:
        return all(s > t for s, t in zip(sums, game.strict_thresholds))
    return all(s >= t for s, t in zip(sums, game.winning_thresholds))


def _removal_breaks(game: VotingGame, sums: Sequence[float], loads: Sequence[float]) -> bool:
    return any(s - l < t for s, l, t in zip(sums, loads, game.winning_thresholds))


def is_critical_classical(game: VotingGame, player: int, coalition: int) -> bool:
    """Player swings the coalition: it wins, and removing the player's
    weight breaks at least one quota."""
    i = game.player_index(player)
    validate_coalition(game, coalition)
    if not (coalition >> i) & 1:
        raise InvalidGameError(f"player {game.player_ids[i]} is not in the coalition")
    sums = coalition_weight(game, coalition)
    if not all(s >= t for s, t in zip(sums, game.winning_thresholds)):
        return False
    return _removal_breaks(game, sums, game.weights[i])


def persuasion_loads(game: VotingGame, phi: AssociationMatrix) -> tuple[tuple[float, ...], ...]:
    """Per-player persuasion load in every dimension.

    Row ``i`` holds ``sum_k a_ik * w_kd`` over all ``m`` players, the weight
    player ``i`` can move by leaving and pulling along (or pushing back)
    everyone it influences.
    """
    if phi.size != game.num_players:
        raise InvalidGameError(
            f"association matrix is {phi.size}x{phi.size} "
            f"but the game has {game.num_players} players"
        )
    k = game.num_dimensions
    out = []
    for arow in phi.entries:
        load = [0.0] * k
        for a, wrow in zip(arow, game.weights):
            for d in range(k):
                load[d] += a * wrow[d]
        out.append(tuple(load))
    return tuple(out)


@dataclass(frozen=True)
class PersuasionLoad:
    """A player's pull, and how far it overshoots the player's own weight."""

    player: str
    load: tuple[float, ...]
    surplus: tuple[float, ...]


def persuasion_load(game: VotingGame, phi: AssociationMatrix, player: int | str) -> PersuasionLoad:
    i = game.player_index(player)
    load = persuasion_loads(game, phi)[i]
    surplus = tuple(l - w for l, w in zip(load, game.weights[i]))
    return PersuasionLoad(player=game.player_ids[i], load=load, surplus=surplus)


def is_critical_assoc(
    game: VotingGame,
    phi: AssociationMatrix,
    player: int | str,
    coalition: int,
    members_only: bool = False,
) -> bool:
    """Association-aware criticality.

    The coalition must win, and subtracting the player's persuasion load
    from the coalition weight must break at least one quota.  By default the
    load runs over all players, inside the coalition or not; pass
    ``members_only=True`` to restrict the pull to coalition members.
    """
    i = game.player_index(player)
    validate_coalition(game, coalition)
    if not (coalition >> i) & 1:
        raise InvalidGameError(f"player {game.player_ids[i]} is not in the coalition")
    sums = coalition_weight(game, coalition)
    if not all(s >= t for s, t in zip(sums, game.winning_thresholds)):
        return False
    if members_only:
        k = game.num_dimensions
        arow = phi.entries[i]
        load = [0.0] * k
        for j in coalition_members(coalition):
            for d in range(k):
                load[d] += arow[j] * game.weights[j][d]
        return _removal_breaks(game, sums, load)
    return _removal_breaks(game, sums, persuasion_loads(game, phi)[i])
