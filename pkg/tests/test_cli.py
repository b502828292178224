"""Command line behavior: reports, determinism, and exit codes."""

import json

import pytest

from higgs_lab import run


HITCHIN = {
    "ambient": {"n": 1, "genus": 2, "degH": 1},
    "objects": [
        {"type": "chain", "id": "hitchin", "degrees": [1, -1], "arrows": [[1, 2]]},
        {"type": "chain", "id": "split", "degrees": [1, -1]},
    ],
}

UNSTABLE = {
    "ambient": {"n": 1, "genus": 0, "degH": 1},
    "objects": [{"type": "chain", "id": "E", "degrees": [2, 0]}],
}

BAD_SURFACE = {
    "ambient": {"n": 2, "hn": "1/1", "c1X_H": "0/1"},
    "objects": [
        {
            "type": "model",
            "id": "S",
            "data": {"rank": 2, "degH": "0/1", "chi": ["0/1", "0/1", "1/1"]},
            "locally_free": True,
            "surface_chern": {
                "c1H": "0/1",
                "ch2": "1/1",
                "c1c1X": "0/1",
                "c1sq": "2/1",
                "c2int": "0/1",
            },
        }
    ],
}


@pytest.fixture
def hitchin_file(tmp_path):
    path = tmp_path / "hitchin.json"
    path.write_text(json.dumps(HITCHIN))
    return str(path)


@pytest.fixture
def unstable_file(tmp_path):
    path = tmp_path / "unstable.json"
    path.write_text(json.dumps(UNSTABLE))
    return str(path)


class TestAnalyze:
    def test_verdicts(self, hitchin_file, capsys):
        assert run(["analyze", hitchin_file, "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        by_id = {b["id"]: b for b in report["objects"]}
        assert by_id["hitchin"]["gieseker"]["class"] == "stable"
        assert by_id["hitchin"]["slope"]["class"] == "stable"
        assert by_id["split"]["gieseker"]["class"] == "unstable"
        assert by_id["split"]["gieseker"]["witness"] == "{1}"
        assert by_id["split"]["gieseker"]["witness_p"] == ["0/1", "1/1"]

    def test_table_format(self, hitchin_file, capsys):
        assert run(["analyze", hitchin_file]) == 0
        out = capsys.readouterr().out
        assert "hitchin" in out and "stable" in out

    def test_deterministic(self, hitchin_file, capsys):
        run(["analyze", hitchin_file, "--format", "json"])
        first = capsys.readouterr().out
        run(["analyze", hitchin_file, "--format", "json"])
        second = capsys.readouterr().out
        assert first == second

    def test_missing_file(self, capsys):
        assert run(["analyze", "/no/such/file.json"]) == 2


class TestFiltrationCommands:
    def test_hn_of_unstable_object(self, unstable_file, capsys):
        assert run(["hn", unstable_file, "--object", "E", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["filtration"]["steps"] == ["{1}", "E"]
        ranks = [q["rank"] for q in report["filtration"]["quotients"]]
        assert ranks == [1, 1]

    def test_jh_of_semistable_object(self, hitchin_file, capsys):
        assert run(["jh", hitchin_file, "--object", "hitchin", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["filtration"]["steps"] == ["hitchin"]

    def test_jh_of_unstable_object_is_input_error(self, unstable_file):
        assert run(["jh", unstable_file, "--object", "E"]) == 2

    def test_unknown_object(self, hitchin_file):
        assert run(["jh", hitchin_file, "--object", "missing"]) == 2


class TestVerify:
    def test_clean_file_passes(self, hitchin_file, capsys):
        assert run(["verify", hitchin_file, "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["summary"]["failed"] == 0
        checks = {c["check"] for c in report["checks"]}
        assert {
            "stability_ladder",
            "quotient_formulation",
            "torsion_free_formulation",
            "rank_p_residual",
            "dim1_coincidence",
            "jh_grading_invariance",
            "hn_uniqueness",
            "direct_sum",
        } <= checks

    def test_bogomolov_contradiction_fails(self, tmp_path, capsys):
        path = tmp_path / "surface.json"
        path.write_text(json.dumps(BAD_SURFACE))
        assert run(["verify", str(path), "--format", "json"]) == 1
        report = json.loads(capsys.readouterr().out)
        failing = [c for c in report["checks"] if c["status"] == "fail"]
        assert any(c["check"] == "bogomolov" for c in failing)

    def test_nonnegative_discriminant_passes(self, tmp_path, capsys):
        doc = json.loads(json.dumps(BAD_SURFACE))
        doc["objects"][0]["surface_chern"] = {
            "c1H": "0/1",
            "ch2": "-1/1",
            "c1c1X": "0/1",
            "c1sq": "0/1",
            "c2int": "1/1",
        }
        path = tmp_path / "surface.json"
        path.write_text(json.dumps(doc))
        assert run(["verify", str(path)]) == 0

    def test_semistable_pairs_get_morphism_and_extension_checks(self, tmp_path, capsys):
        doc = {
            "ambient": {"n": 1, "genus": 1, "degH": 1},
            "objects": [
                {"type": "chain", "id": "a", "degrees": [0]},
                {"type": "chain", "id": "b", "degrees": [0]},
                {"type": "chain", "id": "c", "degrees": [1]},
            ],
        }
        path = tmp_path / "lines.json"
        path.write_text(json.dumps(doc))
        assert run(["verify", str(path), "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        morphisms = {
            c["subject"]: c for c in report["checks"] if c["check"] == "morphism_table"
        }
        # equal p, both stable: canonical injective verdict plus the surjective note
        assert "(also generically surjective)" in morphisms["a -> b"]["detail"]
        assert "zero_or_injective" in morphisms["a -> b"]["detail"]
        # strictly smaller target polynomial forces the zero map
        assert "must_be_zero" in morphisms["c -> a"]["detail"]
        extensions = [c for c in report["checks"] if c["check"] == "extension_semistable"]
        assert any("a" in c["subject"] and "b" in c["subject"] for c in extensions)
        assert all(c["status"] == "pass" for c in extensions)


class TestFuzz:
    def test_empty_run_passes(self, capsys):
        assert run(["fuzz", "--seed", "1", "--count", "0"]) == 0

    def test_deterministic(self, capsys):
        args = ["fuzz", "--seed", "9", "--count", "30", "--format", "json"]
        run(args)
        first = capsys.readouterr().out
        run(args)
        second = capsys.readouterr().out
        assert first == second

    def test_realized_chains_never_fail(self, capsys):
        assert (
            run(["fuzz", "--seed", "5", "--count", "60", "--max-rank", "5", "--genus", "3"])
            == 0
        )

    def test_seed_changes_report(self, capsys):
        run(["fuzz", "--seed", "1", "--count", "5", "--format", "json"])
        first = capsys.readouterr().out
        run(["fuzz", "--seed", "2", "--count", "5", "--format", "json"])
        second = capsys.readouterr().out
        assert first != second


def test_bad_command_is_input_error(capsys):
    assert run(["frobnicate"]) == 2
