"""Command-line front end.

Subcommands: ``exact`` (full enumeration), ``approx`` (Monte Carlo with
confidence intervals), ``bounds`` (combinatorial diagnostics), ``eu`` (the
18-country EU Council study), ``conjecture`` (random-game scan of the
max-weight cap).  Reports go to stdout or ``--out``; formats are ``table``,
``json`` and ``csv`` and print the same numbers at the same precision.

Exit codes: 0 success, 1 usage error, 2 data or invariant error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .games import AssociationMatrix, InvalidGameError, VotingGame
from .exact import CoalitionTable, exact_indices
from .sampling import confidence_interval, estimate_indices, required_samples
from .bounds import bounds_report, conjecture_scan
from .data import (
    MigrationTable,
    RandomGameSpec,
    build_migration_association,
    eu_game,
    load_game_file,
    load_migration_csv_file,
    random_association,
)

FORMATS = ("table", "json", "csv")


def _load_game_arg(value: str) -> VotingGame:
    if value == "eu":
        return eu_game()
    return load_game_file(value)


def _load_association_arg(path: str, m: int) -> AssociationMatrix:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidGameError(f"association file: invalid JSON ({exc})") from exc
    rows = doc.get("association") if isinstance(doc, dict) else doc
    if not isinstance(rows, list):
        raise InvalidGameError("association file: expected a list of rows")
    phi = AssociationMatrix(tuple(tuple(row) for row in rows))
    if phi.size != m:
        raise InvalidGameError(
            f"association file: {phi.size}x{phi.size} matrix for a {m}-player game"
        )
    return phi


def _fmt(value, precision: int):
    if isinstance(value, float):
        return f"{value:.{precision}f}"
    return str(value)


def _round(value, precision: int):
    if isinstance(value, float):
        return round(value, precision)
    return value


def _render_table(header: list[str], rows: list[list], precision: int) -> str:
    cells = [[_fmt(v, precision) for v in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
    for row in cells:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _render_csv(header: list[str], rows: list[list], precision: int) -> str:
    import csv as _csv
    import io

    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v, precision) for v in row])
    return buf.getvalue()


def _render_json(payload: dict, precision: int) -> str:
    def walk(node):
        if isinstance(node, dict):
            return {k: walk(v) for k, v in node.items()}
        if isinstance(node, (list, tuple)):
            return [walk(v) for v in node]
        if isinstance(node, float):
            return _round(node, precision)
        return node

    return json.dumps(walk(payload), indent=2) + "\n"


def _emit(
    fmt: str,
    precision: int,
    out: str | None,
    header: list[str],
    rows: list[list],
    payload: dict,
) -> None:
    if fmt == "table":
        text = _render_table(header, rows, precision)
    elif fmt == "csv":
        text = _render_csv(header, rows, precision)
    else:
        text = _render_json(payload, precision)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _common_options(f):
    f = click.option("--format", "fmt", type=click.Choice(FORMATS), default="table",
                     show_default=True, help="Report format.")(f)
    f = click.option("--precision", type=int, default=5, show_default=True,
                     help="Decimal places in the report.")(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="Write the report to a file instead of stdout.")(f)
    return f


def _resolve_phi(game: VotingGame, association: str | None, identity: bool) -> AssociationMatrix | None:
    if association and identity:
        raise click.UsageError("--association and --identity are mutually exclusive")
    if identity:
        return AssociationMatrix.identity(game.num_players)
    if association:
        return _load_association_arg(association, game.num_players)
    return game.association


@click.group()
def cli() -> None:
    """Banzhaf power indices for weighted voting games."""


@cli.command("exact")
@click.option("--game", "game_src", required=True,
              help="Game file (JSON), or 'eu' for the built-in EU game.")
@click.option("--association", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Association matrix file (JSON rows).")
@click.option("--identity", is_flag=True, help="Force the identity association matrix.")
@_common_options
def exact_cmd(game_src, association, identity, fmt, precision, out) -> None:
    """Exact indices by full coalition enumeration."""
    game = _load_game_arg(game_src)
    phi = _resolve_phi(game, association, identity)
    report = exact_indices(game, phi)
    header = ["player", "swings", "absolute", "normalized"]
    rows = [
        [pid, sw, ab, no]
        for pid, sw, ab, no in zip(
            report.player_ids, report.swing_counts, report.absolute, report.normalized
        )
    ]
    payload = {
        "mode": report.mode,
        "total_swings": report.total_swings,
        "coalitions_per_player": report.coalitions_per_player,
        "players": [
            {"id": pid, "swings": sw, "absolute": ab, "normalized": no}
            for pid, sw, ab, no in zip(
                report.player_ids, report.swing_counts, report.absolute, report.normalized
            )
        ],
    }
    _emit(fmt, precision, out, header, rows, payload)


@cli.command("approx")
@click.option("--game", "game_src", required=True,
              help="Game file (JSON), or 'eu' for the built-in EU game.")
@click.option("--association", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--identity", is_flag=True)
@click.option("--epsilon", type=float, required=True, help="Target halfwidth.")
@click.option("--delta", type=float, required=True, help="Confidence parameter.")
@click.option("--method", type=click.Choice(["hoeffding", "student", "selfbounding"]),
              default="hoeffding", show_default=True)
@click.option("--samples", type=int, default=None,
              help="Sample count per player; derived from epsilon/delta when absent.")
@click.option("--seed", type=int, required=True)
@_common_options
def approx_cmd(game_src, association, identity, epsilon, delta, method, samples, seed,
               fmt, precision, out) -> None:
    """Monte Carlo estimates with per-player confidence intervals."""
    game = _load_game_arg(game_src)
    phi = _resolve_phi(game, association, identity)
    if samples is None:
        if method == "student":
            # worst-case Bernoulli variance; no pilot run at the CLI
            samples = required_samples(epsilon, delta, "student", s2=0.25)
        elif method == "selfbounding":
            from .bounds import ht_bound

            u = 1.0
            if game.num_dimensions == 1:
                u = min(1.0, max(ht_bound(game, i) for i in range(game.num_players)))
            samples = required_samples(epsilon, delta, "selfbounding", B=2.0 * u + epsilon)
        else:
            samples = required_samples(epsilon, delta, "hoeffding")
    report = estimate_indices(game, phi, samples=samples, seed=seed)
    intervals = [
        confidence_interval(report, i, delta, method, game=game)
        for i in range(game.num_players)
    ]
    normalized = report.normalized
    header = ["player", "estimate", "normalized", "ci_lower", "ci_upper"]
    rows = [
        [pid, est, no, ci.lower, ci.upper]
        for pid, est, no, ci in zip(report.player_ids, report.estimates, normalized, intervals)
    ]
    payload = {
        "mode": report.mode,
        "samples": report.samples,
        "seed": report.seed,
        "method": method,
        "epsilon": epsilon,
        "delta": delta,
        "players": [
            {
                "id": pid,
                "estimate": est,
                "normalized": no,
                "ci_lower": ci.lower,
                "ci_upper": ci.upper,
                "halfwidth": ci.halfwidth,
            }
            for pid, est, no, ci in zip(
                report.player_ids, report.estimates, normalized, intervals
            )
        ],
    }
    _emit(fmt, precision, out, header, rows, payload)


@cli.command("bounds")
@click.option("--game", "game_src", required=True,
              help="Game file (JSON), or 'eu' for the built-in EU game.")
@click.option("--player", default=None, help="Restrict the per-player rows to one player.")
@_common_options
def bounds_cmd(game_src, player, fmt, precision, out) -> None:
    """Combinatorial bound diagnostics (single-quota games)."""
    game = _load_game_arg(game_src)
    exact = exact_indices(game)
    report = bounds_report(game, exact)
    indices = range(game.num_players)
    if player is not None:
        indices = [game.player_index(player)]
    header = ["player", "exact", "ht_bound", "t", "h", "violated"]
    rows = []
    for i in indices:
        h = report.h_values[i]
        rows.append(
            [
                report.player_ids[i],
                exact.absolute[i],
                report.ht_bounds[i],
                report.t_values[i],
                "none" if h is None else h,
                bool(report.ht_violations[i]) if report.ht_violations else False,
            ]
        )
    payload = {
        "players": [
            {
                "id": report.player_ids[i],
                "exact_absolute": exact.absolute[i],
                "ht_bound": report.ht_bounds[i],
                "t": report.t_values[i],
                "h": report.h_values[i],
                "violated": bool(report.ht_violations[i]) if report.ht_violations else False,
            }
            for i in indices
        ],
        "size_window": {
            "m_low": report.m_low,
            "M_high": "inf" if report.M_high == float("inf") else report.M_high,
            "reading": report.size_window_reading,
        },
        "global_bounds": {
            "bound1": report.bound1,
            "bound1_violated": report.bound1_violated,
            "bound2": report.bound2,
            "bound2_violated": report.bound2_violated,
        },
    }
    if fmt == "table":
        extra = (
            f"\nsize window: m_low={report.m_low} "
            f"M_high={'inf' if report.M_high == float('inf') else report.M_high}\n"
            f"bound1={_fmt(report.bound1, precision)} violated={report.bound1_violated}  "
            f"bound2={_fmt(report.bound2, precision)} violated={report.bound2_violated}\n"
        )
        text = _render_table(header, rows, precision) + extra
        if out:
            Path(out).write_text(text, encoding="utf-8")
        else:
            click.echo(text, nl=False)
    else:
        _emit(fmt, precision, out, header, rows, payload)


@cli.command("eu")
@click.option("--migration", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Migration CSV; adds association-aware indices.")
@click.option("--random-association", "random_assoc", is_flag=True,
              help="Average association-aware indices over random matrices.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--runs", type=int, default=100, show_default=True,
              help="Number of random matrices.")
@_common_options
def eu_cmd(migration, random_assoc, seed, runs, fmt, precision, out) -> None:
    """The 18-country EU Council study."""
    if migration and random_assoc:
        raise click.UsageError("--migration and --random-association are mutually exclusive")
    game = eu_game()
    table = CoalitionTable(game)
    classical = exact_indices(game, table=table)
    if random_assoc:
        if runs <= 0:
            raise click.UsageError("--runs must be positive")
        per_run = []
        for r in range(runs):
            phi = random_association(game.num_players, seed + r)
            rep = exact_indices(game, phi, table=table)
            per_run.append(rep.normalized)
        mean = np.mean(np.array(per_run), axis=0)
        header = ["run", *game.player_ids]
        rows = [[str(r), *vals] for r, vals in enumerate(per_run)]
        rows.append(["mean", *(float(v) for v in mean)])
        payload = {
            "protocol": {"runs": runs, "seed": seed},
            "classical_normalized": dict(zip(game.player_ids, classical.normalized)),
            "runs": [dict(zip(game.player_ids, vals)) for vals in per_run],
            "mean": dict(zip(game.player_ids, (float(v) for v in mean))),
        }
        _emit(fmt, precision, out, header, rows, payload)
        return
    if migration:
        mt = load_migration_csv_file(migration)
        if sorted(mt.labels) != sorted(game.player_ids):
            raise InvalidGameError(
                "migration csv: country ids do not match the EU dataset "
                f"({', '.join(game.player_ids)})"
            )
        order = [mt.labels.index(c) for c in game.player_ids]
        reordered = tuple(tuple(mt.flows[i][j] for j in order) for i in order)
        phi = build_migration_association(
            MigrationTable(labels=game.player_ids, flows=reordered)
        )
        assoc = exact_indices(game, phi, table=table)
        header = ["country", "weight", "wta", "wa"]
        rows = [
            [pid, int(game.weights[i][0]), classical.normalized[i], assoc.normalized[i]]
            for i, pid in enumerate(game.player_ids)
        ]
        payload = {
            "quotas": list(game.quotas),
            "players": [
                {
                    "id": pid,
                    "weight": game.weights[i][0],
                    "wta": classical.normalized[i],
                    "wa": assoc.normalized[i],
                }
                for i, pid in enumerate(game.player_ids)
            ],
        }
        _emit(fmt, precision, out, header, rows, payload)
        return
    header = ["country", "weight", "wta"]
    rows = [
        [pid, int(game.weights[i][0]), classical.normalized[i]]
        for i, pid in enumerate(game.player_ids)
    ]
    payload = {
        "quotas": list(game.quotas),
        "quota_rule": game.metadata["quota_rule"],
        "players": [
            {"id": pid, "weight": game.weights[i][0], "wta": classical.normalized[i]}
            for i, pid in enumerate(game.player_ids)
        ],
    }
    _emit(fmt, precision, out, header, rows, payload)


@cli.command("conjecture")
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--max-players", type=int, default=12, show_default=True)
@click.option("--max-weight", type=int, default=20, show_default=True)
@_common_options
def conjecture_cmd(trials, seed, max_players, max_weight, fmt, precision, out) -> None:
    """Scan random games for violations of the max-weight index cap."""
    spec = RandomGameSpec(max_players=max_players, max_weight=max_weight)
    report = conjecture_scan(trials, seed, spec)
    header = ["games_scanned", "counterexamples", "min_slack"]
    rows = [[report.games_scanned, len(report.counterexamples), report.min_slack]]
    payload = {
        "games_scanned": report.games_scanned,
        "seed": report.seed,
        "min_slack": report.min_slack,
        "counterexamples": [
            {"game": g, "player": p, "normalized": b, "cap": cap}
            for g, p, b, cap in report.counterexamples
        ],
    }
    _emit(fmt, precision, out, header, rows, payload)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.Abort:
        return 1
    except (InvalidGameError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
