import json

import pytest

from cli.commands import RunConfig
from main import main, parse_args


def write_relation(path, arity, dim, orbits):
    path.write_text(json.dumps({"arity": arity, "dim": dim, "orbits": orbits}))
    return str(path)


@pytest.fixture
def two_orders(tmp_path):
    return write_relation(tmp_path / "two.json", 2, 1, [[0, 1], [1, 0]])


@pytest.fixture
def min_closed(tmp_path):
    return write_relation(tmp_path / "closed.json", 2, 1, [[0, 0], [0, 1], [1, 0]])


class TestOrbits:
    def test_listing(self, capsys):
        assert main(["orbits", "--k", "2"]) == 0
        assert capsys.readouterr().out == "3 orbits of length 2\n0 0\n0 1\n1 0\n"

    def test_zero_length(self):
        assert main(["orbits", "--k", "0"]) == 2

    def test_beyond_bound(self):
        assert main(["orbits", "--k", "20"]) == 4

    def test_log_level_override(self, capsys):
        assert main(["--log-level", "WARNING", "orbits", "--k", "1"]) == 0
        assert capsys.readouterr().out == "1 orbits of length 1\n0\n"


class TestRelationCommands:
    def test_check(self, capsys, two_orders):
        assert main(["check", two_orders]) == 0
        out = capsys.readouterr().out
        assert "smooth" in out and "hypotheses_hold" in out

    def test_classify(self, capsys, two_orders):
        assert main(["classify", two_orders]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["preserved"]["min"] is False
        assert doc["preserved"]["mi"] is True
        assert doc["note"] is None

    def test_closure(self, capsys, two_orders):
        assert main(["closure", two_orders, "--clone", "min"]) == 0
        assert json.loads(capsys.readouterr().out)["orbits"] == [[0, 0], [0, 1], [1, 0]]

    def test_closure_to_file(self, tmp_path, two_orders):
        out = tmp_path / "out" / "closed.json"
        assert main(["closure", two_orders, "--out", str(out)]) == 0
        assert json.loads(out.read_text())["arity"] == 2

    def test_closure_budget(self, two_orders):
        assert main(["closure", two_orders, "--budget-orbits", "2"]) == 4

    def test_pseudoloop(self, capsys, min_closed):
        assert main(["pseudoloop", min_closed, "--clone", "min"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["clone"] == "min"
        assert len(doc["components"]) == 2

    def test_pseudoloop_not_preserved(self, two_orders):
        assert main(["pseudoloop", two_orders, "--clone", "min"]) == 3

    def test_deterministic_output(self, capsys, min_closed):
        main(["pseudoloop", min_closed, "--clone", "mi"])
        first = capsys.readouterr().out
        main(["pseudoloop", min_closed, "--clone", "mi"])
        assert capsys.readouterr().out == first

    def test_missing_file(self, tmp_path):
        assert main(["check", str(tmp_path / "missing.json")]) == 2

    def test_unknown_clone(self, two_orders):
        assert main(["closure", two_orders, "--clone", "median"]) == 2

    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2


class TestLoopcond:
    def test_siggers(self, capsys):
        assert main(["loopcond", "--preset", "siggers4", "--clone", "mi", "--k", "1"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["assignments"] == 13 and report["success"]

    def test_structure_file(self, capsys, tmp_path):
        path = tmp_path / "k3.json"
        edges = [["x", "y"], ["y", "x"], ["x", "z"], ["z", "x"], ["y", "z"], ["z", "y"]]
        path.write_text(json.dumps({"vertices": ["x", "y", "z"], "edges": edges}))
        assert main(["loopcond", str(path), "--clone", "min"]) == 0
        assert json.loads(capsys.readouterr().out)["structure"] == "custom"

    def test_hypotheses_fail(self):
        assert main(["loopcond", "--preset", "cyclic3"]) == 3

    def test_needs_a_structure(self):
        assert main(["loopcond"]) == 2

    def test_failed_assignment_exit_code(self):
        assert main(["loopcond", "--preset", "siggers4", "--budget-orbits", "1"]) == 1


class TestGenerate:
    def test_writes_instances(self, capsys, tmp_path):
        target = tmp_path / "gen"
        assert main(["--seed", "3", "generate", "--clone", "min", "--count", "2", "--out", str(target)]) == 0
        files = sorted(p.name for p in target.iterdir())
        assert files == ["instance_000.json", "instance_001.json"]
        assert capsys.readouterr().out.count("instance_") == 2

    def test_seed_is_a_global_flag(self):
        args = parse_args(["--seed", "11", "closure", "r.json"])
        assert args.seed == 11
        assert RunConfig.from_args(args).seed == 11
        with pytest.raises(SystemExit):
            parse_args(["generate", "--seed", "11"])

    def test_budget_left_to_each_command(self):
        cfg = RunConfig.from_args(parse_args(["generate"]))
        assert cfg.budget_orbits is None

    def test_same_seed_same_files(self, tmp_path):
        runs = []
        for name in ("a", "b"):
            target = tmp_path / name
            assert main(["--seed", "5", "generate", "--clone", "mi", "--k", "2", "--count", "3",
                         "--out", str(target)]) == 0
            runs.append([p.read_bytes() for p in sorted(target.iterdir())])
        assert runs[0] == runs[1]

    def test_invalid_count(self):
        assert main(["generate", "--count", "0"]) == 2
