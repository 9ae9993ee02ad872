"""
analyze: information report for a distribution file
"""

import click

from app.config import load_experiment_config
from app.services.info_service import InfoService
from app.services.storage_service import StorageService


@click.command('analyze')
@click.argument('distribution', type=click.Path(dir_okay=False))
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='Experiment file supplying the optical parameters')
@click.option('--theory', is_flag=True, default=False,
              help='Compare against the theoretical maximum for the (default or configured) optics')
@click.option('--transverse-dims', type=click.IntRange(1, 2), default=2, show_default=True)
def analyze_command(distribution, config_path, theory, transverse_dims):
    """Print mutual information, Schmidt number and marginal summaries."""
    x = StorageService.read_distribution(distribution)
    params = None
    if config_path or theory:
        params = load_experiment_config(config_path).optical
    report = InfoService.report(x, params, transverse_dims)
    click.echo(StorageService.format_report(report), nl=False)
