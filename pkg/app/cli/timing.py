"""
estimate-time: raster versus compressive acquisition time
"""

import click

from app.cli.options import config_options, echo_fields
from app.cli.simulate import acquisition_times


@click.command('estimate-time')
@config_options
def estimate_time_command(config):
    """Acquisition times for a raster scan at the configured snr and for M compressive projections."""
    echo_fields({
        'N': config.N,
        'measurements': config.measurements,
        **acquisition_times(config, config.measurements),
    })
