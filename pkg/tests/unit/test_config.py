"""
Unit Tests for Configuration
"""

import pytest

from app.config import Config, load_experiment_config
from app.errors import ConfigError
from app.models import ExperimentConfig


class TestExperimentConfig:
    """Test cases for the flat experiment configuration"""

    def test_defaults(self):
        """Test schema defaults when nothing is given"""
        config = load_experiment_config()
        assert config.side == 8
        assert config.N == 64
        assert config.seed == Config.DEFAULT_SEED
        assert config.max_iterations == Config.RECONSTRUCTION_MAX_ITERATIONS
        assert config.optical.lambda_p == pytest.approx(325e-9)
        assert config.reconstruction.hard_threshold_step == pytest.approx(0.01)

    def test_file_values(self, tmp_path):
        """Test key=value files are parsed and typed"""
        path = tmp_path / 'experiment.env'
        path.write_text('side=16\nmeasurements=300\nuse_marginal_mask=true\nflux=2.5e4\n')
        config = load_experiment_config(str(path))
        assert config.side == 16
        assert config.measurements == 300
        assert config.use_marginal_mask is True
        assert config.flux == pytest.approx(2.5e4)

    def test_dataclass_defaults_follow_config(self, tmp_path):
        """Test the bare dataclass shares the environment defaults and parses distinct_rows"""
        assert ExperimentConfig().seed == Config.DEFAULT_SEED
        assert ExperimentConfig().max_iterations == Config.RECONSTRUCTION_MAX_ITERATIONS
        assert ExperimentConfig().distinct_rows is False
        path = tmp_path / 'experiment.env'
        path.write_text('distinct_rows=true\n')
        assert load_experiment_config(str(path)).distinct_rows is True

    def test_overrides_win(self, tmp_path):
        """Test command-line values override the file; None overrides are ignored"""
        path = tmp_path / 'experiment.env'
        path.write_text('side=16\nseed=3\n')
        config = load_experiment_config(str(path), {'side': 4, 'seed': None})
        assert config.side == 4
        assert config.seed == 3

    def test_side_must_be_power_of_two(self):
        """Test side 48 is rejected"""
        with pytest.raises(ConfigError, match='power of two'):
            load_experiment_config(overrides={'side': 48})

    def test_unknown_key(self, tmp_path):
        """Test unknown keys are configuration errors"""
        path = tmp_path / 'experiment.env'
        path.write_text('sidee=16\n')
        with pytest.raises(ConfigError):
            load_experiment_config(str(path))

    def test_schedule_order(self):
        """Test min_iterations may not exceed max_iterations"""
        with pytest.raises(ConfigError):
            load_experiment_config(overrides={'min_iterations': 10, 'max_iterations': 5})

    def test_missing_file(self, tmp_path):
        """Test a missing config file is a configuration error with exit code 2"""
        with pytest.raises(ConfigError) as excinfo:
            load_experiment_config(str(tmp_path / 'missing.env'))
        assert excinfo.value.exit_code == 2

    def test_config_defaults(self):
        """Test environment-driven defaults"""
        assert Config.FORMAT_VERSION == 1
        assert Config.MEASUREMENT_FORMAT_VERSION == 2
        assert Config.DEFAULT_OUTPUT_DIR
