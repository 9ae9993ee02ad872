"""
Shared command options
"""

import os
from functools import wraps

import click

from app.config import Config, load_experiment_config


def config_options(f):
    """--config plus the flags that override its values."""

    @click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
                  help='Flat key=value experiment file')
    @click.option('--seed', type=int, default=None, help='Unsigned 64-bit seed')
    @click.option('--side', type=int, default=None, help='Pixels per axis (power of two)')
    @click.option('--measurements', type=int, default=None, help='Requested number of projections M; repeated joint rows are dropped, so the plan may hold fewer')
    @click.option('--out', type=click.Path(), default=None, help='Output directory or file')
    @wraps(f)
    def decorated_function(config_path, seed, side, measurements, out, **kwargs):
        config = load_experiment_config(config_path, {
            'seed': seed,
            'side': side,
            'measurements': measurements,
            'out': out,
        })
        return f(config, **kwargs)

    return decorated_function


def output_dir(config) -> str:
    return config.out or Config.DEFAULT_OUTPUT_DIR


def output_path(config, filename: str) -> str:
    return os.path.join(output_dir(config), filename)


def echo_fields(values: dict):
    """Print key: value lines on stdout."""
    for key, value in values.items():
        if value is None:
            continue
        click.echo(f'{key}: {value:.6g}' if isinstance(value, float) else f'{key}: {value}')
