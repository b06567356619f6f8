"""Tests for the command-line interface and its exit codes."""

import json

import pytest
from click.testing import CliRunner
from rich.console import Console

from menger import __version__
from menger.cli import cli
from menger.files import dump_algebra, dump_function_set
from menger.kernel import FiniteMengerAlgebra
from menger.pfunc import FunctionAlgebra


@pytest.fixture(autouse=True)
def wide_console(monkeypatch):
    """Keep rich from wrapping long lines."""
    monkeypatch.setattr("menger.cli.main.console", Console(width=500, color_system=None))


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def two_element_file(temp_dir, two_element):
    path = temp_dir / "two.json"
    dump_algebra(two_element, path)
    return path


class TestCheck:
    """Tests for ``menger check``."""

    def test_valid_algebra(self, runner, two_element_file):
        result = runner.invoke(cli, ["check", str(two_element_file)])
        assert result.exit_code == 0, result.output
        assert "superassociativity" in result.output
        assert "join-bound-independence" in result.output

    def test_subtraction_group(self, runner, temp_dir, powerset2):
        path = temp_dir / "powerset.json"
        dump_algebra(powerset2, path)
        result = runner.invoke(cli, ["check", str(path), "--axioms", "subtraction"])
        assert result.exit_code == 0
        assert "superassociativity" not in result.output

    def test_violation_prints_witness(self, runner, temp_dir):
        path = temp_dir / "table.json"
        dump_algebra(FiniteMengerAlgebra(rank=1, op=[[1, 0], [0, 0]]), path)
        result = runner.invoke(cli, ["check", str(path)])
        assert result.exit_code == 1
        assert "superassociativity: (0, 0, 1)" in result.output

    def test_json_report(self, runner, temp_dir, left_projection2):
        path = temp_dir / "left.json"
        dump_algebra(left_projection2, path)
        result = runner.invoke(cli, ["check", str(path), "--axioms", "compat", "--json"])
        assert result.exit_code == 1
        payload = json.loads(result.output)
        assert payload["holds"] is False
        assert payload["carrier"] == ["{}", "{0}"]
        assert payload["violations"]["right-distributivity"] == 0
        assert payload["violations"]["translation-meet"] > 0

    def test_group_needs_subtraction(self, runner, temp_dir):
        path = temp_dir / "table.json"
        dump_algebra(FiniteMengerAlgebra(rank=1, op=[[0, 0], [0, 1]]), path)
        result = runner.invoke(cli, ["check", str(path), "--axioms", "compat"])
        assert result.exit_code == 2
        assert "no subtraction table" in result.output

    def test_malformed_file(self, runner, temp_dir):
        path = temp_dir / "bad.json"
        path.write_text('{"rank": 1, "carrier": ["a"], "menger": []}')
        result = runner.invoke(cli, ["check", str(path)])
        assert result.exit_code == 2
        assert "menger table not total" in result.output

    def test_max_witnesses(self, runner, temp_dir, left_projection3):
        path = temp_dir / "left.json"
        dump_algebra(left_projection3, path)
        result = runner.invoke(
            cli, ["check", str(path), "--axioms", "compat", "--json", "--max-witnesses", "1"]
        )
        payload = json.loads(result.output)
        axioms = [w["axiom"] for w in payload["witnesses"]]
        assert len(axioms) == len(set(axioms))


class TestRepresent:
    """Tests for ``menger represent`` and ``menger verify``."""

    def test_represent(self, runner, temp_dir, two_element_file):
        out = temp_dir / "rep.json"
        result = runner.invoke(cli, ["represent", str(two_element_file), "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "1 pairs, base size 2" in result.output
        document = json.loads(out.read_text())
        assert document["verification"]["holds"] is True

    def test_represent_rejects_invalid_algebra(self, runner, temp_dir, left_projection2):
        path = temp_dir / "left.json"
        dump_algebra(left_projection2, path)
        result = runner.invoke(cli, ["represent", str(path)])
        assert result.exit_code == 1
        assert "translation-meet" in result.output

    def test_verify_round_trip(self, runner, temp_dir, two_element_file):
        out = temp_dir / "rep.json"
        runner.invoke(cli, ["represent", str(two_element_file), "--out", str(out)])
        result = runner.invoke(cli, ["verify", str(two_element_file), str(out)])
        assert result.exit_code == 0, result.output

    def test_verify_detects_tampering(self, runner, temp_dir, two_element_file):
        """Dropping f on its own class leaves a map whose square is empty."""
        out = temp_dir / "rep.json"
        runner.invoke(cli, ["represent", str(two_element_file), "--out", str(out)])
        document = json.loads(out.read_text())
        assert document["graphs"]["f"][0] == ["pair(f,f1)/class#0", "pair(f,f1)/class#0"]
        del document["graphs"]["f"][0]
        out.write_text(json.dumps(document))
        result = runner.invoke(cli, ["verify", str(two_element_file), str(out)])
        assert result.exit_code == 1
        assert "homomorphism: (0, 0)" in result.output

    def test_verify_against_other_algebra(self, runner, temp_dir, two_element_file, powerset2):
        out = temp_dir / "rep.json"
        runner.invoke(cli, ["represent", str(two_element_file), "--out", str(out)])
        other = temp_dir / "powerset.json"
        dump_algebra(powerset2, other)
        result = runner.invoke(cli, ["verify", str(other), str(out)])
        assert result.exit_code == 2


class TestTranslations:
    """Tests for ``menger translations``."""

    def test_listing_and_oracle(self, runner, temp_dir, left_projection2):
        path = temp_dir / "left.json"
        dump_algebra(left_projection2, path)
        result = runner.invoke(cli, ["translations", str(path), "--depth-oracle", "4"])
        assert result.exit_code == 0, result.output
        assert "Translation set size: 3" in result.output
        assert "agrees with term enumeration (converged at depth 1)" in result.output

    def test_oracle_too_shallow(self, runner, temp_dir, left_projection2):
        path = temp_dir / "left.json"
        dump_algebra(left_projection2, path)
        result = runner.invoke(cli, ["translations", str(path), "--depth-oracle", "1"])
        assert result.exit_code == 1
        assert "still growing" in result.output

    def test_oracle_depth_must_be_positive(self, runner, temp_dir, left_projection2):
        path = temp_dir / "left.json"
        dump_algebra(left_projection2, path)
        result = runner.invoke(cli, ["translations", str(path), "--depth-oracle", "0"])
        assert result.exit_code == 2

    def test_limit(self, runner, temp_dir, powerset2):
        path = temp_dir / "powerset.json"
        dump_algebra(powerset2, path)
        result = runner.invoke(cli, ["translations", str(path), "--limit", "1"])
        assert "3 more" in result.output


class TestPfunc:
    """Tests for ``menger pfunc``."""

    def test_all(self, runner, temp_dir):
        out = temp_dir / "all.json"
        abstract = temp_dir / "abstract.json"
        result = runner.invoke(
            cli,
            ["pfunc", "all", "--base-size", "2", "--out", str(out), "--abstract", str(abstract)],
        )
        assert result.exit_code == 0, result.output
        assert "Family size: 9" in result.output
        assert len(json.loads(out.read_text())["functions"]) == 9
        check = runner.invoke(cli, ["check", str(abstract), "--axioms", "compat"])
        assert check.exit_code == 0

    def test_random_is_reproducible(self, runner, temp_dir):
        first, second = temp_dir / "a.json", temp_dir / "b.json"
        for out in (first, second):
            result = runner.invoke(
                cli, ["pfunc", "random", "--base-size", "2", "--seed", "7", "--out", str(out)]
            )
            assert result.exit_code == 0
        assert first.read_text() == second.read_text()

    def test_close_empty_generators(self, runner, temp_dir):
        generators = temp_dir / "gens.json"
        dump_function_set(FunctionAlgebra.of([], base_size=2, rank=1), generators)
        result = runner.invoke(cli, ["pfunc", "close", "--generators", str(generators)])
        assert result.exit_code == 0, result.output
        assert "Family size: 1" in result.output

    def test_cap(self, runner):
        result = runner.invoke(
            cli, ["pfunc", "all", "--base-size", "2", "--rank", "2", "--cap", "50"]
        )
        assert result.exit_code == 3
        assert "exceeded cap of 50" in result.output


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output
