"""Tests for process settings, run configuration and logging."""

import logging

import pytest
from pydantic import ValidationError

from src.errors import ConfigurationError
from src.solver.marching import default_solver_config
from src.utils.config import (
    Config,
    RunConfig,
    build_run_config,
    get_config,
    load_config,
    parse_config_file,
)
from src.utils.logger import get_logger, run_log, setup_logger


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr("src.utils.config._config", None)


class TestConfig:
    """Test RDWENO_ environment settings."""

    def test_defaults(self):
        config = Config()

        assert config.output_dir == "results"
        assert config.max_iters_1d == 200000
        assert config.max_iters_2d == 500000
        assert config.log_level == "INFO"
        assert config.prometheus_enabled is False

    def test_env_prefix(self, monkeypatch):
        monkeypatch.setenv("RDWENO_MAX_ITERS_1D", "1234")
        monkeypatch.setenv("RDWENO_LOG_LEVEL", "debug")

        config = load_config()
        assert config.max_iters_1d == 1234
        assert config.log_level == "DEBUG"
        assert get_config() is config

    def test_env_file(self, tmp_path):
        env_file = tmp_path / "custom.env"
        env_file.write_text("RDWENO_OUTPUT_DIR=out/runs\nRDWENO_PROGRESS_EVERY=50\n")

        config = load_config(str(env_file))
        assert config.output_dir == "out/runs"
        assert config.progress_every == 50

    def test_invalid_log_level(self, monkeypatch):
        monkeypatch.setenv("RDWENO_LOG_LEVEL", "LOUD")
        with pytest.raises(ValidationError):
            Config()

    def test_nonpositive_iteration_cap(self, monkeypatch):
        monkeypatch.setenv("RDWENO_MAX_ITERS_2D", "0")
        with pytest.raises(ValidationError):
            Config()


class TestDefaultSolverConfig:
    """Test solver configs derived from the settings."""

    def test_caps_follow_dimension(self, monkeypatch):
        monkeypatch.setenv("RDWENO_MAX_ITERS_1D", "11")
        monkeypatch.setenv("RDWENO_MAX_ITERS_2D", "22")
        load_config()

        assert default_solver_config(1).max_iters == 11
        assert default_solver_config(2).max_iters == 22

    def test_overrides_win_and_none_is_ignored(self):
        config = default_solver_config(1, cfl=0.5, max_iters=None, residue_tol=1e-10)

        assert config.cfl == 0.5
        assert config.max_iters == 200000
        assert config.residue_tol == 1e-10

    def test_out_of_range_override_is_a_configuration_error(self):
        with pytest.raises(ConfigurationError, match="cfl"):
            default_solver_config(1, cfl=-1.0)
        with pytest.raises(ConfigurationError):
            default_solver_config(2, max_iters=0)


class TestParseConfigFile:
    """Test key = value run files."""

    def test_comments_and_blank_lines(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# nozzle run\n"
            "\n"
            "problem = nozzle   # 1D Euler\n"
            "n = 81\n"
            "max-iters = 500\n"
        )

        assert parse_config_file(str(path)) == {"problem": "nozzle", "n": "81", "max_iters": "500"}

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("problem = nozzle\nresolution = 80\n")
        with pytest.raises(ConfigurationError, match="resolution"):
            parse_config_file(str(path))

    def test_duplicate_key(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("n = 10\nn = 20\n")
        with pytest.raises(ConfigurationError, match="duplicate"):
            parse_config_file(str(path))

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("problem nozzle\n")
        with pytest.raises(ConfigurationError, match=":1:"):
            parse_config_file(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            parse_config_file(str(tmp_path / "absent.cfg"))


class TestBuildRunConfig:
    """Test merging file values with CLI flags."""

    def test_cli_values_win(self):
        config = build_run_config({"problem": "nozzle", "n": "81", "cfl": "0.2"}, cfl=0.4, tol=None)

        assert config.problem == "nozzle"
        assert config.n == 81
        assert config.cfl == 0.4
        assert config.tol == 1e-12

    def test_problem_is_normalized(self):
        assert build_run_config(problem="  Shallow-Water ").problem == "shallow-water"

    def test_missing_problem(self):
        with pytest.raises(ConfigurationError, match="problem"):
            build_run_config({"n": "40"})

    def test_invalid_values(self):
        with pytest.raises(ConfigurationError):
            build_run_config(problem="nozzle", cfl=-0.3)
        with pytest.raises(ConfigurationError):
            build_run_config(problem="nozzle", average_state="geometric")

    def test_sections_from_text(self):
        config = build_run_config({"problem": "burgers2d-shear", "sections": "0.25, 0.5"})
        assert config.sections == [0.25, 0.5]

    def test_overrides(self):
        config = RunConfig(problem="shallow-water", gravity=9.81)
        assert config.overrides() == {"gravity": 9.81}
        assert RunConfig(problem="nozzle").overrides() == {}

    def test_extra_fields_forbidden(self):
        with pytest.raises(ValidationError):
            RunConfig(problem="nozzle", resolution=80)


class TestLogging:
    """Test logger setup and per-run log files."""

    def test_run_log_captures_records_inside_block(self, tmp_path):
        logger = get_logger("rdweno.TestRun")
        path = tmp_path / "out" / "run.log"

        with run_log(path):
            logger.info("inside the run")
        logger.info("after the run")

        text = path.read_text()
        assert "inside the run" in text
        assert "after the run" not in text

    def test_run_log_restores_level(self, tmp_path):
        root = logging.getLogger("rdweno")
        previous = root.level
        with run_log(tmp_path / "run.log"):
            assert root.level == logging.DEBUG
        assert root.level == previous

    def test_foreign_names_are_nested(self):
        assert get_logger("src.solver.marching").name == "rdweno.marching"
        assert get_logger("rdweno.SteadyStateSolver").name == "rdweno.SteadyStateSolver"

    def test_setup_without_file(self, monkeypatch):
        monkeypatch.setenv("RDWENO_LOG_FILE", "")
        load_config()

        logger = setup_logger(log_level="warning")
        assert len(logger.handlers) == 1
        assert logger.level == logging.WARNING
