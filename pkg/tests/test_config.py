"""Tests for configuration loading."""

import pytest
from pydantic import ValidationError

from menger.config import find_config_file, get_config, reset_config
from menger.kernel import WitnessCollector
from menger.terms import oracle_depth
from tests.conftest import powerset_algebra


@pytest.fixture(autouse=True)
def isolated(temp_dir, monkeypatch):
    """Run from an empty directory with no user config file and no overrides."""
    monkeypatch.chdir(temp_dir)
    monkeypatch.setenv("HOME", str(temp_dir / "home"))
    for name in ("MENGER_MAX_WITNESSES", "MENGER_CLOSURE_CAP", "MENGER_TIEBREAK"):
        monkeypatch.delenv(name, raising=False)
    reset_config()


class TestDefaults:
    """Tests for built-in defaults."""

    def test_defaults(self):
        config = get_config()
        assert config.checks.max_witnesses == 10
        assert config.terms.closure_cap == 20000
        assert config.terms.oracle_depth_limit == 6
        assert config.pfunc.closure_cap == 200
        assert config.pfunc.random_generator_count == 2
        assert config.order.tiebreak == "least"
        assert config.logging.level == "INFO"

    def test_no_config_file(self):
        assert find_config_file() is None

    def test_instance_is_cached(self):
        assert get_config() is get_config()


class TestOverrides:
    """Tests for the config file and environment variables."""

    def test_yaml_file(self, temp_dir):
        (temp_dir / "menger.yaml").write_text(
            "checks:\n  max_witnesses: 3\norder:\n  tiebreak: greatest\n"
        )
        assert find_config_file() == temp_dir / "menger.yaml"
        config = get_config()
        assert config.checks.max_witnesses == 3
        assert config.order.tiebreak == "greatest"
        assert config.terms.closure_cap == 20000

    def test_empty_yaml_file(self, temp_dir):
        (temp_dir / "menger.yaml").write_text("")
        assert get_config().checks.max_witnesses == 10

    def test_short_aliases(self, monkeypatch):
        monkeypatch.setenv("MENGER_MAX_WITNESSES", "2")
        monkeypatch.setenv("MENGER_CLOSURE_CAP", "500")
        monkeypatch.setenv("MENGER_TIEBREAK", "greatest")
        config = get_config()
        assert config.checks.max_witnesses == 2
        assert config.terms.closure_cap == 500
        assert config.order.tiebreak == "greatest"

    def test_alias_beats_file(self, temp_dir, monkeypatch):
        (temp_dir / "menger.yaml").write_text("checks:\n  max_witnesses: 3\n")
        monkeypatch.setenv("MENGER_MAX_WITNESSES", "7")
        assert get_config().checks.max_witnesses == 7

    def test_nested_variable(self, monkeypatch):
        monkeypatch.setenv("MENGER_PFUNC__CLOSURE_CAP", "64")
        assert get_config().pfunc.closure_cap == 64

    def test_reset_picks_up_changes(self, monkeypatch):
        assert get_config().checks.max_witnesses == 10
        monkeypatch.setenv("MENGER_MAX_WITNESSES", "4")
        assert get_config().checks.max_witnesses == 10
        reset_config()
        assert get_config().checks.max_witnesses == 4

    def test_collector_reads_config(self, monkeypatch):
        monkeypatch.setenv("MENGER_MAX_WITNESSES", "1")
        assert WitnessCollector().max_witnesses == 1
        assert WitnessCollector(5).max_witnesses == 5

    def test_oracle_depth_reads_config(self, monkeypatch):
        M = powerset_algebra(2).menger
        assert oracle_depth(M) == 1
        monkeypatch.setenv("MENGER_TERMS__ORACLE_DEPTH_LIMIT", "0")
        reset_config()
        assert oracle_depth(M) is None
        assert oracle_depth(M, 2) == 1


class TestValidation:
    """Tests for rejected values."""

    def test_unknown_tiebreak(self, monkeypatch):
        monkeypatch.setenv("MENGER_TIEBREAK", "random")
        with pytest.raises(ValidationError):
            get_config()

    def test_negative_witness_count(self, temp_dir):
        (temp_dir / "menger.yaml").write_text("checks:\n  max_witnesses: -1\n")
        with pytest.raises(ValidationError):
            get_config()
