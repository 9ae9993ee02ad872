"""
plot: PGM heatmap of a joint or marginal distribution
"""

import os

import click

from app.config import Config
from app.services.plot_service import PlotService
from app.services.storage_service import StorageService


@click.command('plot')
@click.argument('distribution', type=click.Path(dir_okay=False))
@click.option('--zoom', is_flag=True, default=False, help='Crop to the bounding box of the top 99% of mass')
@click.option('--marginal', type=click.Choice(['S', 'I']), default=None, help='Draw one detector marginal')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Output .pgm path')
def plot_command(distribution, zoom, marginal, out):
    """Render a distribution file as an 8-bit graymap."""
    x = StorageService.read_distribution(distribution)
    name = f'marginal_{marginal}.pgm' if marginal else 'joint.pgm'
    path = out or os.path.join(Config.DEFAULT_OUTPUT_DIR, name)
    PlotService.write_plot(path, x, zoom=zoom, marginal=marginal)
    click.echo(f'plot: {path}')
