"""
reconstruct: recover the joint distribution from a measurement file
"""

import click

from app.cli.options import config_options, echo_fields, output_path
from app.services.experiment_service import ExperimentService
from app.services.storage_service import StorageService


@click.command('reconstruct')
@click.argument('measurement', type=click.Path(dir_okay=False))
@click.option('--use-marginals', is_flag=True, default=False,
              help='Constrain the joint support with marginals recovered from the singles')
@config_options
def reconstruct_command(config, measurement, use_marginals):
    """Reconstruct a joint distribution from a KFHM measurement file."""
    record = StorageService.read_measurement(measurement)
    run = ExperimentService.run_reconstruction(record, config, use_marginals or None)
    result = run.result

    distribution_path = output_path(config, 'reconstruction.kfhd')
    trace_path = output_path(config, 'trace.tsv')
    StorageService.write_distribution(distribution_path, result.distribution)
    StorageService.write_trace(trace_path, result.trace)

    if result.truncated:
        click.echo(f'warning: hard threshold removed every entry at iteration {len(result.trace) + 1}; '
                   f'returning iteration {result.best_iteration}', err=True)

    echo_fields({
        'distribution': distribution_path,
        'trace': trace_path,
        'mutual_information_bits': result.mutual_information,
        'best_iteration': result.best_iteration,
        'iterations': len(result.trace),
        'stop_reason': result.stop_reason.value,
        'effective_joint_dimension': run.mask.effective_dimension if run.mask is not None else None,
    })
