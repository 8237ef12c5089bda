"""Game construction and ingestion.

Covers the JSON game-file format (see docs/game-format.md), migration-flow
CSV tables and the association matrices they induce, random association
matrices and random test games, and the embedded 18-country EU Council
dataset.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .games import (
    AssociationMatrix,
    InvalidGameError,
    VotingGame,
    single_quota_game,
)

__all__ = [
    "MigrationTable",
    "build_migration_association",
    "random_association",
    "RandomGameSpec",
    "random_game",
    "eu_game",
    "EU_COUNTRIES",
    "load_game",
    "load_game_file",
    "parse_game",
    "game_to_dict",
    "dump_game",
    "load_migration_csv",
    "load_migration_csv_file",
]


# ---------------------------------------------------------------------------
# Migration flows -> association matrix


@dataclass(frozen=True)
class MigrationTable:
    """Directed migration counts between countries.

    ``flows[i][j]`` is the number of migrants moving from country i to
    country j.  The diagonal is ignored by every consumer.
    """

    labels: tuple[str, ...]
    flows: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        labels = tuple(str(l) for l in self.labels)
        m = len(labels)
        if m == 0:
            raise InvalidGameError("migration table is empty")
        if len(set(labels)) != m:
            raise InvalidGameError("migration labels must be unique")
        rows = []
        for i, row in enumerate(self.flows):
            vals = tuple(float(v) for v in row)
            if len(vals) != m:
                raise InvalidGameError(
                    f"migration row {labels[i] if i < m else i}: expected {m} entries, got {len(vals)}"
                )
            for j, v in enumerate(vals):
                if not math.isfinite(v) or v < 0:
                    raise InvalidGameError(
                        f"migration flow [{labels[i]}][{labels[j]}]: must be a non-negative number, got {v!r}"
                    )
            rows.append(vals)
        if len(rows) != m:
            raise InvalidGameError(f"{m} labels but {len(rows)} flow rows")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "flows", tuple(rows))

    @property
    def size(self) -> int:
        return len(self.labels)


def build_migration_association(table: MigrationTable) -> AssociationMatrix:
    """Turn net migration imbalances into an association matrix.

    The normaliser is the largest absolute net flow M = max |M_ij - M_ji|;
    entries are the net flow toward the row player divided by M, so the
    matrix is antisymmetric off the unit diagonal and hits 1 in magnitude at
    the maximising pair.  Scaling all flows by a positive constant leaves
    the result unchanged.  A fully symmetric table has no direction to
    normalise and is rejected.
    """
    m = table.size
    flows = table.flows
    biggest = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            biggest = max(biggest, abs(flows[i][j] - flows[j][i]))
    if biggest == 0.0:
        raise InvalidGameError(
            "all migration flows are symmetric; the association matrix is undefined"
        )
    entries = [[1.0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i):
            val = (flows[j][i] - flows[i][j]) / biggest
            entries[i][j] = val
            entries[j][i] = -val
    return AssociationMatrix(tuple(tuple(row) for row in entries))


def random_association(m: int, seed: int) -> AssociationMatrix:
    """Association matrix with unit diagonal and independent off-diagonal
    entries uniform on [-1, 1]; deterministic for a given (m, seed)."""
    if m < 1:
        raise InvalidGameError(f"need at least one player, got m={m}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed)))
    a = rng.uniform(-1.0, 1.0, size=(m, m))
    np.fill_diagonal(a, 1.0)
    return AssociationMatrix(tuple(tuple(float(v) for v in row) for row in a))


@dataclass(frozen=True)
class RandomGameSpec:
    """Shape of the random single-quota games used by scans and tests.

    Weights are integers drawn uniformly from [min_weight, max_weight], the
    player count uniformly from [min_players, max_players], and the quota is
    quota_fraction times the total weight.
    """

    min_players: int = 3
    max_players: int = 12
    min_weight: int = 1
    max_weight: int = 20
    quota_fraction: float = 0.5


def random_game(rng: np.random.Generator, spec: RandomGameSpec) -> VotingGame:
    """Random single-quota game shaped by a RandomGameSpec.

    Integer weights uniform in [min_weight, max_weight], player count
    uniform in [min_players, max_players], quota at quota_fraction of the
    total weight.
    """
    m = int(rng.integers(spec.min_players, spec.max_players + 1))
    weights = [int(v) for v in rng.integers(spec.min_weight, spec.max_weight + 1, size=m)]
    quota = spec.quota_fraction * sum(weights)
    return single_quota_game(weights, quota)


# ---------------------------------------------------------------------------
# The 18-country EU Council game

# (country, voting weight, population in millions); one country per row, so
# the third dimension is the all-ones country count.
EU_COUNTRIES: tuple[tuple[str, int, float], ...] = (
    ("AUT", 10, 8.58),
    ("BEL", 12, 11.25),
    ("CZE", 12, 10.53),
    ("DEU", 29, 82.30),
    ("DNK", 7, 5.66),
    ("ESP", 27, 46.46),
    ("FIN", 7, 5.47),
    ("FRA", 29, 66.99),
    ("GBR", 29, 65.11),
    ("GRC", 12, 10.81),
    ("HUN", 12, 9.85),
    ("IRL", 7, 4.63),
    ("ITA", 29, 60.79),
    ("NLD", 13, 17.10),
    ("POL", 27, 38.56),
    ("PRT", 12, 10.37),
    ("SVK", 7, 5.42),
    ("SWE", 10, 10.01),
)

# Nominal quota rules: 74% of the 291 voting weights, 62% of the published
# 469.93M population, and a strict majority (10) of the 18 countries.  The
# weight quota is the floored 215: the published indices count a coalition
# holding exactly 215 votes as winning, while the raw product 0.74*291 =
# 215.34 does not reproduce them under either boundary convention.
EU_QUOTAS = (215.0, 291.3566, 10.0)


def eu_game() -> VotingGame:
    """The 18-country EU Council game: weight, population and country-count
    dimensions with quotas (215, 291.3566, 10)."""
    meta = {
        "dataset": "eu18-council",
        "countries": [c for c, _, _ in EU_COUNTRIES],
        "quota_rule": {
            "weight": "74% of 291 total votes, floored to 215 (reproduces the published indices; 0.74*291 = 215.34 does not)",
            "population": "62% of 469.93M published total",
            "countries": "strict majority of 18 members",
        },
    }
    return VotingGame(
        player_ids=tuple(c for c, _, _ in EU_COUNTRIES),
        weights=tuple((float(w), p, 1.0) for _, w, p in EU_COUNTRIES),
        quotas=EU_QUOTAS,
        metadata=meta,
    )


# ---------------------------------------------------------------------------
# JSON game files


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidGameError(msg)


def parse_game(doc: Mapping) -> VotingGame:
    """Build a VotingGame from a parsed game-file document.

    Quota entries may be absolute numbers or ``{"fraction": f}`` objects;
    fractions resolve against the matching weight-column total at load time.
    """
    _expect(isinstance(doc, Mapping), "game file: top level must be an object")
    players = doc.get("players")
    _expect(isinstance(players, Sequence) and len(players) > 0, "players: need a non-empty list")
    ids = []
    weight_rows = []
    for pos, entry in enumerate(players):
        _expect(isinstance(entry, Mapping), f"players[{pos}]: must be an object")
        _expect("id" in entry, f"players[{pos}]: missing id")
        _expect("weights" in entry, f"players[{pos}]: missing weights")
        ids.append(str(entry["id"]))
        row = entry["weights"]
        _expect(
            isinstance(row, Sequence) and not isinstance(row, str),
            f"players[{pos}].weights: must be a list",
        )
        vals = []
        for d, v in enumerate(row):
            _expect(
                isinstance(v, (int, float)) and not isinstance(v, bool),
                f"players[{pos}].weights[{d}]: must be a number",
            )
            _expect(float(v) >= 0, f"players[{pos}].weights[{d}]: negative weight")
            vals.append(float(v))
        weight_rows.append(tuple(vals))
    quotas_doc = doc.get("quotas")
    _expect(
        isinstance(quotas_doc, Sequence) and len(quotas_doc) > 0,
        "quotas: need a non-empty list",
    )
    k = len(weight_rows[0])
    _expect(
        len(quotas_doc) == k,
        f"quotas: {len(quotas_doc)} entries for {k} weight dimensions",
    )
    quotas = []
    for d, q in enumerate(quotas_doc):
        if isinstance(q, Mapping):
            _expect("fraction" in q, f"quotas[{d}]: object form needs a 'fraction' key")
            f = q["fraction"]
            _expect(
                isinstance(f, (int, float)) and not isinstance(f, bool),
                f"quotas[{d}].fraction: must be a number",
            )
            total = sum(row[d] for row in weight_rows if len(row) > d)
            quotas.append(float(f) * total)
        else:
            _expect(
                isinstance(q, (int, float)) and not isinstance(q, bool),
                f"quotas[{d}]: must be a number or a fraction object",
            )
            quotas.append(float(q))
    association = None
    if doc.get("association") is not None:
        rows = doc["association"]
        _expect(
            isinstance(rows, Sequence) and not isinstance(rows, str),
            "association: must be a list of rows",
        )
        association = AssociationMatrix(tuple(tuple(row) for row in rows))
    metadata = doc.get("metadata") or {}
    _expect(isinstance(metadata, Mapping), "metadata: must be an object")
    return VotingGame(
        player_ids=tuple(ids),
        weights=tuple(weight_rows),
        quotas=tuple(quotas),
        association=association,
        metadata=dict(metadata),
    )


def load_game(text: str) -> VotingGame:
    """Parse a JSON game document from text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidGameError(f"game file: invalid JSON ({exc})") from exc
    return parse_game(doc)


def load_game_file(path: str | Path) -> VotingGame:
    return load_game(Path(path).read_text(encoding="utf-8"))


def game_to_dict(game: VotingGame) -> dict:
    """Serializable document; load_game(json.dumps(...)) round-trips exactly."""
    doc: dict = {
        "players": [
            {"id": pid, "weights": list(row)}
            for pid, row in zip(game.player_ids, game.weights)
        ],
        "quotas": list(game.quotas),
    }
    if game.association is not None:
        doc["association"] = [list(row) for row in game.association.entries]
    if game.metadata:
        doc["metadata"] = dict(game.metadata)
    return doc


def dump_game(game: VotingGame) -> str:
    return json.dumps(game_to_dict(game), indent=2, sort_keys=False)


# ---------------------------------------------------------------------------
# Migration CSV


def load_migration_csv(text: str) -> MigrationTable:
    """Parse a migration table: a header row of country ids, then one row of
    counts per country, in header order."""
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]
    if not rows:
        raise InvalidGameError("migration csv: empty file")
    labels = tuple(c.strip() for c in rows[0])
    m = len(labels)
    if len(rows) - 1 != m:
        raise InvalidGameError(
            f"migration csv: {m} countries in header but {len(rows) - 1} data rows"
        )
    flows = []
    for i, row in enumerate(rows[1:]):
        if len(row) != m:
            raise InvalidGameError(
                f"migration csv: row {i + 1} has {len(row)} fields, expected {m}"
            )
        try:
            flows.append(tuple(float(c) for c in row))
        except ValueError as exc:
            raise InvalidGameError(f"migration csv: row {i + 1}: {exc}") from exc
    return MigrationTable(labels=labels, flows=tuple(flows))


def load_migration_csv_file(path: str | Path) -> MigrationTable:
    return load_migration_csv(Path(path).read_text(encoding="utf-8"))
