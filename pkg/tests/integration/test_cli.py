"""
Integration Tests for the command line
"""

import logging

import numpy as np
import pytest

from app.models import JointDistribution
from app.services.info_service import InfoService
from app.services.storage_service import StorageService
from app.utils.logger import APP_LOGGER


def fields(output):
    """Parse `key: value` lines."""
    parsed = {}
    for line in output.splitlines():
        key, sep, value = line.partition(': ')
        if sep:
            parsed[key] = value
    return parsed


@pytest.fixture(scope='function')
def simulated(cli, runner, tmp_path):
    """Small simulated experiment on disk"""
    out = tmp_path / 'sim'
    result = runner.invoke(cli, ['simulate', '--side', '4', '--measurements', '64', '--seed', '5', '--out', str(out)])
    assert result.exit_code == 0, result.output
    return out


class TestSimulateCommand:
    """Test cases for `simulate`"""

    def test_writes_three_files(self, cli, runner, tmp_path):
        """Test truth, sampler and measurement land in the output directory and read back"""
        out = tmp_path / 'sim'
        result = runner.invoke(cli, ['simulate', '--side', '4', '--measurements', '4', '--out', str(out)])

        assert result.exit_code == 0, result.output
        values = fields(result.stdout)
        assert int(values['measurements']) + int(values['dropped_duplicates']) == 4
        assert 'cs_time_hours' in values

        truth = StorageService.read_distribution(str(out / 'truth.kfhd'))
        sampler = StorageService.read_sampler(str(out / 'sampler.kfhs'))
        record = StorageService.read_measurement(str(out / 'measurement.kfhm'))
        assert truth.side == 4
        assert sampler.N == 16
        np.testing.assert_array_equal(record.sampler.r_SI, sampler.r_SI)

    def test_same_seed_same_files(self, cli, runner, tmp_path):
        """Test a seed fully determines the simulated files"""
        for name in ('a', 'b'):
            runner.invoke(cli, ['simulate', '--side', '4', '--measurements', '16', '--seed', '9',
                                '--out', str(tmp_path / name)])
        for filename in ('sampler.kfhs', 'measurement.kfhm'):
            assert (tmp_path / 'a' / filename).read_bytes() == (tmp_path / 'b' / filename).read_bytes()

    def test_side_must_be_power_of_two(self, cli, runner, tmp_path):
        """Test an invalid side exits with the configuration code"""
        result = runner.invoke(cli, ['simulate', '--side', '48', '--out', str(tmp_path)])
        assert result.exit_code == 2
        assert result.stderr.startswith('error:')
        assert 'power of two' in result.stderr

    def test_config_file(self, cli, runner, tmp_path):
        """Test values come from the config file when not given as flags"""
        config = tmp_path / 'experiment.env'
        config.write_text('side=2\nmeasurements=3\n')
        result = runner.invoke(cli, ['simulate', '--config', str(config), '--out', str(tmp_path / 'sim')])
        assert result.exit_code == 0, result.output
        assert StorageService.read_distribution(str(tmp_path / 'sim' / 'truth.kfhd')).side == 2


class TestEstimateTimeCommand:
    """Test cases for `estimate-time`"""

    def test_desk_scale_numbers(self, cli, runner):
        """Test 20000 projections of 4 x 2 s take 44.4 h while a 4096-pixel raster takes about 50 days"""
        result = runner.invoke(cli, ['estimate-time', '--side', '64', '--measurements', '20000'])

        assert result.exit_code == 0, result.output
        values = fields(result.stdout)
        assert float(values['cs_time_hours']) == pytest.approx(44.444, abs=0.01)
        assert float(values['raster_time_days']) == pytest.approx(49.7, abs=0.1)
        assert values['N'] == '4096'


class TestReconstructCommand:
    """Test cases for `reconstruct`"""

    def test_reconstruct(self, cli, runner, simulated, tmp_path):
        """Test a reconstruction and its trace are written"""
        out = tmp_path / 'rec'
        result = runner.invoke(cli, ['reconstruct', str(simulated / 'measurement.kfhm'), '--out', str(out)])

        assert result.exit_code == 0, result.output
        values = fields(result.stdout)
        x = StorageService.read_distribution(str(out / 'reconstruction.kfhd'))
        assert x.side == 4
        assert InfoService.mutual_information(x) == pytest.approx(float(values['mutual_information_bits']), abs=1e-5)
        trace = StorageService.read_trace(str(out / 'trace.tsv'))
        assert len(trace) == int(values['iterations'])
        assert 0 <= int(values['best_iteration']) <= len(trace)

    def test_deterministic(self, cli, runner, simulated, tmp_path):
        """Test reconstructing the same file twice gives identical bytes"""
        for name in ('a', 'b'):
            result = runner.invoke(cli, ['reconstruct', str(simulated / 'measurement.kfhm'),
                                         '--out', str(tmp_path / name)])
            assert result.exit_code == 0, result.output
        assert (tmp_path / 'a' / 'reconstruction.kfhd').read_bytes() == \
               (tmp_path / 'b' / 'reconstruction.kfhd').read_bytes()

    def test_use_marginals(self, cli, runner, simulated, tmp_path):
        """Test the marginal mask run reports its effective dimension"""
        result = runner.invoke(cli, ['reconstruct', str(simulated / 'measurement.kfhm'), '--use-marginals',
                                     '--out', str(tmp_path / 'rec')])

        assert result.exit_code == 0, result.output
        dimension = int(fields(result.stdout)['effective_joint_dimension'])
        assert 1 <= dimension <= 256

    def test_corrupt_file(self, cli, runner, tmp_path):
        """Test a corrupt measurement file exits with the I/O code"""
        path = tmp_path / 'measurement.kfhm'
        path.write_bytes(b'KFHM\x01\x00garbage')
        result = runner.invoke(cli, ['reconstruct', str(path), '--out', str(tmp_path)])
        assert result.exit_code == 3
        assert result.stderr.startswith('error:')

    def test_missing_file(self, cli, runner, tmp_path):
        """Test a missing measurement file exits with the I/O code"""
        result = runner.invoke(cli, ['reconstruct', str(tmp_path / 'missing.kfhm'), '--out', str(tmp_path)])
        assert result.exit_code == 3


class TestAnalyzeAndPlotCommands:
    """Test cases for `analyze` and `plot`"""

    @pytest.fixture
    def diagonal_file(self, tmp_path):
        path = tmp_path / 'diagonal.kfhd'
        StorageService.write_distribution(str(path), JointDistribution.normalized(2, np.eye(4).ravel()))
        return path

    def test_analyze(self, cli, runner, diagonal_file):
        """Test the report of a perfectly correlated source"""
        result = runner.invoke(cli, ['analyze', str(diagonal_file)])

        assert result.exit_code == 0, result.output
        values = fields(result.stdout)
        assert values['mutual_information_bits'] == '2.000000'
        assert values['schmidt_number'] == '4.000000'
        assert 'theoretical_max_bits' not in values

    def test_analyze_theory(self, cli, runner, diagonal_file):
        """Test the theoretical bound for the default optics"""
        result = runner.invoke(cli, ['analyze', str(diagonal_file), '--theory'])

        assert result.exit_code == 0, result.output
        assert float(fields(result.stdout)['theoretical_max_bits']) == pytest.approx(10.9, abs=0.05)

    def test_plot(self, cli, runner, diagonal_file, tmp_path):
        """Test the joint and marginal heatmaps are PGM files"""
        joint = tmp_path / 'joint.pgm'
        result = runner.invoke(cli, ['plot', str(diagonal_file), '--out', str(joint)])
        assert result.exit_code == 0, result.output
        assert joint.read_bytes().startswith(b'P5\n4 4\n255\n')

        marginal = tmp_path / 'marginal.pgm'
        result = runner.invoke(cli, ['plot', str(diagonal_file), '--marginal', 'I', '--zoom', '--out', str(marginal)])
        assert result.exit_code == 0, result.output
        assert marginal.read_bytes().startswith(b'P5\n')


class TestSweepCommand:
    """Test cases for `sweep`"""

    def test_small_sweep(self, cli, runner):
        """Test one table row per measurement count"""
        result = runner.invoke(cli, ['sweep', '--side', '2', '--counts', '4,8', '--runs', '2'])

        assert result.exit_code == 0, result.output
        lines = result.stdout.splitlines()
        assert lines[0].split('\t') == ['measurements', 'runs', 'median_mi_unmasked', 'median_mi_masked', 'true_mi']
        assert [line.split('\t')[0] for line in lines[1:]] == ['4', '8']
        assert all(line.split('\t')[1] == '2' for line in lines[1:])

    def test_bad_counts(self, cli, runner):
        """Test malformed counts are usage errors"""
        result = runner.invoke(cli, ['sweep', '--counts', 'ten'])
        assert result.exit_code == 2


@pytest.mark.slow
class TestEndToEnd:
    """Acceptance run at side 16"""

    def test_masked_recovers_correlation(self, cli, runner, tmp_path):
        """Test the masked reconstruction of a 16 x 16 double Gaussian keeps most of the true information"""
        sim = tmp_path / 'sim'
        result = runner.invoke(cli, ['simulate', '--side', '16', '--measurements', '6000', '--out', str(sim)])
        assert result.exit_code == 0, result.output

        rec = tmp_path / 'rec'
        result = runner.invoke(cli, ['reconstruct', str(sim / 'measurement.kfhm'), '--use-marginals',
                                     '--out', str(rec)])
        assert result.exit_code == 0, result.output

        truth = InfoService.mutual_information(StorageService.read_distribution(str(sim / 'truth.kfhd')))
        recovered = float(fields(result.stdout)['mutual_information_bits'])
        assert recovered > 0.5 * truth


class TestRootGroup:
    """Test cases for root options"""

    def test_version(self, cli, runner):
        result = runner.invoke(cli, ['--version'])
        assert result.exit_code == 0
        assert '1.0.0' in result.stdout

    def test_log_level(self, cli, runner):
        """Test the log level option is accepted before a command"""
        root = logging.getLogger(APP_LOGGER)
        level = root.level
        try:
            result = runner.invoke(cli, ['--log-level', 'error', 'estimate-time', '--side', '4'])
            assert result.exit_code == 0, result.output
            assert root.level == logging.ERROR
        finally:
            root.setLevel(level)
