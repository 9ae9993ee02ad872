"""
simulate: ground truth, sampler and photon-counting record
"""

import click

from app.cli.options import config_options, echo_fields, output_path
from app.services.experiment_service import ExperimentService
from app.services.simulation_service import SimulationService
from app.services.storage_service import StorageService

SECONDS_PER_HOUR = 3600.0
SECONDS_PER_DAY = 86400.0

# pp, mm, pm and mp frames per projection
FRAMES_PER_PROJECTION = 4


def acquisition_times(config, measurements: int) -> dict:
    compressive = SimulationService.estimate_cs_time(measurements, FRAMES_PER_PROJECTION * config.t_proj)
    times = {'cs_time_hours': compressive / SECONDS_PER_HOUR}
    if config.flux > 0:
        raster = SimulationService.estimate_raster_time(config.N, config.snr, config.flux)
        times['raster_time_days'] = raster / SECONDS_PER_DAY
        # SNR a raster scan of the N^2 joint pixels reaches in the compressive time
        times['raster_snr_in_cs_time'] = SimulationService.raster_snr(
            config.N, config.flux, compressive / config.N ** 2)
    return times


@click.command('simulate')
@config_options
def simulate_command(config):
    """Simulate a double-Gaussian source measured with Kronecker Hadamard patterns."""
    x_true, record = ExperimentService.run_simulation(config)

    truth_path = output_path(config, 'truth.kfhd')
    sampler_path = output_path(config, 'sampler.kfhs')
    measurement_path = output_path(config, 'measurement.kfhm')
    StorageService.write_distribution(truth_path, x_true)
    StorageService.write_sampler(sampler_path, record.sampler)
    StorageService.write_measurement(measurement_path, record)

    echo_fields({
        'distribution': truth_path,
        'sampler': sampler_path,
        'measurement': measurement_path,
        'measurements': record.M,
        'dropped_duplicates': record.sampler.dropped,
        'projection_noise_ratio': SimulationService.projection_noise_ratio(record),
        **acquisition_times(config, record.M),
    })
