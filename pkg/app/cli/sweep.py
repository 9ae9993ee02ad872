"""
sweep: mutual information against measurement count
"""

import click

from app.cli.options import config_options
from app.services.experiment_service import ExperimentService


def _counts(ctx, param, value):
    try:
        counts = [int(part) for part in value.split(',') if part.strip()]
    except ValueError:
        raise click.BadParameter('expected a comma-separated list of integers')
    if not counts or min(counts) < 1:
        raise click.BadParameter('measurement counts must be positive')
    return counts


@click.command('sweep')
@click.option('--counts', default='10,50,200', show_default=True, callback=_counts,
              help='Comma-separated measurement counts')
@click.option('--runs', type=click.IntRange(min=1), default=5, show_default=True,
              help='Seeds per measurement count')
@config_options
def sweep_command(config, counts, runs):
    """Masked and unmasked MI medians per measurement count, tab-separated."""
    seeds = [(config.seed + k) % 2 ** 64 for k in range(runs)]
    rows = ExperimentService.sweep(config, counts, seeds)
    click.echo('measurements\truns\tmedian_mi_unmasked\tmedian_mi_masked\ttrue_mi')
    for row in rows:
        click.echo(f'{row.measurements}\t{row.runs}\t{row.median_mi_unmasked:.6f}\t'
                   f'{row.median_mi_masked:.6f}\t{row.true_mi:.6f}')
