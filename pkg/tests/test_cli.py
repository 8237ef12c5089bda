import json

import pytest

from banzhaf.cli import main
from banzhaf.data import dump_game, eu_game
from banzhaf.exact import exact_indices
from banzhaf.games import single_quota_game


@pytest.fixture()
def g3(tmp_path):
    path = tmp_path / "g3.json"
    path.write_text(dump_game(single_quota_game([3, 2, 1], 4)), encoding="utf-8")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExact:
    def test_table_output(self, capsys, g3):
        code, out, _ = run(capsys, ["exact", "--game", g3])
        assert code == 0
        assert "p1" in out
        assert "0.60000" in out and "0.20000" in out

    def test_json_output(self, capsys, g3):
        code, out, _ = run(capsys, ["exact", "--game", g3, "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["mode"] == "classical"
        norms = [p["normalized"] for p in doc["players"]]
        assert norms == [0.6, 0.2, 0.2]

    def test_csv_output(self, capsys, g3):
        code, out, _ = run(capsys, ["exact", "--game", g3, "--format", "csv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "player,swings,absolute,normalized"
        assert lines[1] == "p1,3,0.75000,0.60000"

    def test_deterministic_bytes(self, capsys, g3):
        _, out1, _ = run(capsys, ["exact", "--game", g3, "--format", "json"])
        _, out2, _ = run(capsys, ["exact", "--game", g3, "--format", "json"])
        assert out1 == out2

    def test_json_and_table_agree_at_precision(self, capsys, g3):
        _, table, _ = run(capsys, ["exact", "--game", g3])
        _, js, _ = run(capsys, ["exact", "--game", g3, "--format", "json"])
        doc = json.loads(js)
        for p in doc["players"]:
            assert f"{p['normalized']:.5f}" in table

    def test_identity_flag_matches_classical(self, capsys, g3):
        _, classical, _ = run(capsys, ["exact", "--game", g3, "--format", "csv"])
        code, ident, _ = run(capsys, ["exact", "--game", g3, "--identity", "--format", "csv"])
        assert code == 0
        assert classical == ident

    def test_association_file(self, capsys, g3, tmp_path):
        phi_path = tmp_path / "phi.json"
        phi_path.write_text(
            json.dumps([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), encoding="utf-8"
        )
        code, out, _ = run(
            capsys,
            ["exact", "--game", g3, "--association", str(phi_path), "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["mode"] == "association"

    def test_association_size_mismatch(self, capsys, g3, tmp_path):
        phi_path = tmp_path / "phi.json"
        phi_path.write_text(json.dumps([[1, 0], [0, 1]]), encoding="utf-8")
        code, _, err = run(capsys, ["exact", "--game", g3, "--association", str(phi_path)])
        assert code == 2
        assert "player" in err

    def test_out_file(self, capsys, g3, tmp_path):
        target = tmp_path / "report.csv"
        code, out, _ = run(
            capsys, ["exact", "--game", g3, "--format", "csv", "--out", str(target)]
        )
        assert code == 0
        assert out == ""
        assert "p1,3" in target.read_text(encoding="utf-8")

    def test_builtin_eu_name(self, capsys):
        code, out, _ = run(capsys, ["exact", "--game", "eu", "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["players"]) == 18


class TestApprox:
    def test_reports_ci(self, capsys, g3):
        code, out, _ = run(
            capsys,
            ["approx", "--game", g3, "--epsilon", "0.1", "--delta", "0.1",
             "--seed", "5", "--format", "json"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["samples"] == 150  # required_samples(0.1, 0.1, hoeffding)
        for p in doc["players"]:
            assert p["ci_lower"] <= p["estimate"] <= p["ci_upper"]

    def test_explicit_samples_and_determinism(self, capsys, g3):
        args = ["approx", "--game", g3, "--epsilon", "0.1", "--delta", "0.1",
                "--samples", "400", "--seed", "9", "--format", "csv"]
        code, out1, _ = run(capsys, args)
        _, out2, _ = run(capsys, args)
        assert code == 0
        assert out1 == out2
        assert json.loads(run(capsys, args[:-1] + ["json"])[1])["samples"] == 400

    def test_student_method(self, capsys, g3):
        code, out, _ = run(
            capsys,
            ["approx", "--game", g3, "--epsilon", "0.1", "--delta", "0.1",
             "--method", "student", "--samples", "300", "--seed", "2", "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["method"] == "student"

    def test_selfbounding_derives_samples(self, capsys, g3):
        code, out, _ = run(
            capsys,
            ["approx", "--game", g3, "--epsilon", "0.2", "--delta", "0.1",
             "--method", "selfbounding", "--seed", "2", "--format", "json"],
        )
        assert code == 0
        doc = json.loads(out)
        # B = 2 * min(1, max ht bound) + epsilon = 2 * 0.75 + 0.2
        assert doc["samples"] == 128

    def test_missing_epsilon_is_usage_error(self, capsys, g3):
        code, _, err = run(capsys, ["approx", "--game", g3, "--delta", "0.1", "--seed", "1"])
        assert code == 1

    def test_bad_delta_is_data_error(self, capsys, g3):
        code, _, err = run(
            capsys,
            ["approx", "--game", g3, "--epsilon", "0.1", "--delta", "2.0", "--seed", "1"],
        )
        assert code == 2
        assert "delta" in err


class TestBounds:
    def test_table(self, capsys, g3):
        code, out, _ = run(capsys, ["bounds", "--game", g3])
        assert code == 0
        assert "ht_bound" in out
        assert "m_low=1" in out and "M_high=8" in out

    def test_player_filter(self, capsys, g3):
        code, out, _ = run(capsys, ["bounds", "--game", g3, "--player", "p3", "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["players"]) == 1
        assert doc["players"][0]["id"] == "p3"
        assert doc["players"][0]["ht_bound"] == 0.25

    def test_multi_quota_is_data_error(self, capsys, tmp_path):
        path = tmp_path / "mq.json"
        path.write_text(
            json.dumps(
                {
                    "players": [
                        {"id": "a", "weights": [1, 1]},
                        {"id": "b", "weights": [1, 1]},
                    ],
                    "quotas": [1, 1],
                }
            ),
            encoding="utf-8",
        )
        code, _, err = run(capsys, ["bounds", "--game", str(path)])
        assert code == 2
        assert "single-quota" in err


class TestEu:
    def test_wta_table(self, capsys):
        code, out, _ = run(capsys, ["eu"])
        assert code == 0
        assert "FRA" in out
        fra = [l for l in out.splitlines() if l.startswith("FRA")][0]
        assert "0.09560" in fra
        pol = [l for l in out.splitlines() if l.startswith("POL")][0]
        assert "0.08853" in pol

    def test_migration_flag(self, capsys, tmp_path):
        g = eu_game()
        ids = list(reversed(g.player_ids))  # exercise label reordering
        m = len(ids)
        rows = []
        for i in range(m):
            rows.append(",".join(str((i * m + j) % 7) for j in range(m)))
        csv_text = ",".join(ids) + "\n" + "\n".join(rows) + "\n"
        path = tmp_path / "mig.csv"
        path.write_text(csv_text, encoding="utf-8")
        code, out, _ = run(capsys, ["eu", "--migration", str(path), "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert set(doc["players"][0]) == {"id", "weight", "wta", "wa"}

    def test_migration_label_mismatch(self, capsys, tmp_path):
        path = tmp_path / "mig.csv"
        path.write_text("A,B\n0,1\n2,0\n", encoding="utf-8")
        code, _, err = run(capsys, ["eu", "--migration", str(path)])
        assert code == 2
        assert "country ids" in err

    def test_random_association_protocol(self, capsys):
        code, out, _ = run(
            capsys, ["eu", "--random-association", "--runs", "3", "--seed", "1",
                     "--format", "json"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["protocol"] == {"runs": 3, "seed": 1}
        assert len(doc["runs"]) == 3
        assert set(doc["mean"]) == set(eu_game().player_ids)
        # per-run and mean values present in the table form too
        code2, table, _ = run(
            capsys, ["eu", "--random-association", "--runs", "3", "--seed", "1"]
        )
        assert code2 == 0
        assert "mean" in table

    def test_migration_and_random_exclusive(self, capsys, tmp_path):
        path = tmp_path / "mig.csv"
        path.write_text("A,B\n0,1\n2,0\n", encoding="utf-8")
        code, _, _ = run(capsys, ["eu", "--migration", str(path), "--random-association"])
        assert code == 1


class TestConjecture:
    def test_runs(self, capsys):
        code, out, _ = run(
            capsys, ["conjecture", "--trials", "10", "--seed", "3", "--max-players", "6",
                     "--format", "json"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["games_scanned"] == 10
        assert doc["counterexamples"] == []
        assert doc["min_slack"] > 0

    def test_missing_trials_usage_error(self, capsys):
        code, _, _ = run(capsys, ["conjecture", "--seed", "3"])
        assert code == 1


class TestExitCodes:
    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, ["frobnicate"])
        assert code == 1

    def test_unknown_flag(self, capsys, g3):
        code, _, _ = run(capsys, ["exact", "--game", g3, "--frob"])
        assert code == 1

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["exact", "--game", "/no/such/file.json"])
        assert code == 2

    def test_malformed_game_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        code, _, err = run(capsys, ["exact", "--game", str(path)])
        assert code == 2
        assert "JSON" in err
