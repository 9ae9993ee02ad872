"""
Pytest Configuration and Fixtures
"""
import os

# keep test runs from writing rotating log files into the working tree
os.environ.setdefault('KRONHAD_LOG_DIR', '')

import numpy as np
import pytest
from click.testing import CliRunner

from app import create_cli
from app.models import JointDistribution, OpticalParams
from app.services.sampler_service import SamplerService
from app.services.simulation_service import SimulationService


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long acceptance run, enabled with KRONHAD_RUN_SLOW=1')


def pytest_collection_modifyitems(config, items):
    if os.environ.get('KRONHAD_RUN_SLOW') == '1':
        return
    skip_slow = pytest.mark.skip(reason='set KRONHAD_RUN_SLOW=1 to run acceptance runs')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='session')
def cli():
    """Create the command-line application for testing"""
    return create_cli()


@pytest.fixture(scope='function')
def runner():
    """Create a click test runner"""
    return CliRunner()


@pytest.fixture(scope='function')
def diagonal_joint():
    """Perfectly correlated joint distribution at side 2 (N=4): 2 bits"""
    return JointDistribution.normalized(2, np.eye(4).ravel())


@pytest.fixture(scope='function')
def product_joint():
    """Uncorrelated joint distribution at side 2"""
    p = np.array([0.1, 0.2, 0.3, 0.4])
    return JointDistribution.normalized(2, np.outer(p, p[::-1]).ravel())


@pytest.fixture(scope='session')
def double_gaussian():
    """Correlated double-Gaussian source at side 4 (N=16, 256 joint pixels)"""
    return SimulationService.double_gaussian_joint(4, 1.5, 0.5)


@pytest.fixture(scope='session')
def joint_sampler():
    """Joint sampler with N=16 and 64 requested rows"""
    return SamplerService.generate_joint_sampler(16, 64, seed=3)


@pytest.fixture(scope='session')
def tiny_sampler():
    """Joint sampler with N=4 small enough for dense oracles"""
    return SamplerService.generate_joint_sampler(4, 9, seed=11)


@pytest.fixture(scope='session')
def optics():
    """Bright source so desk-scale records carry plenty of counts"""
    return OpticalParams(flux=5e5, t_proj=2.0)


@pytest.fixture(scope='session')
def noisy_record(double_gaussian, joint_sampler, optics):
    """Photon-counting record of the double-Gaussian source"""
    return SimulationService.simulate_measurement(double_gaussian, joint_sampler, optics, seed=21)


@pytest.fixture(scope='session')
def noiseless_record(double_gaussian, joint_sampler, optics):
    """Expected-count record of the double-Gaussian source"""
    return SimulationService.simulate_measurement(double_gaussian, joint_sampler, optics, seed=21, noise=False)
