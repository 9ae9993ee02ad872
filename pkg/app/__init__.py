import click

from app.cli import register_commands
from app.config import Config
from app.errors.exceptions import AppError
from app.utils.logger import LEVELS, get_logger, set_level

logger = get_logger(__name__)


class KronHadCLI(click.Group):
    """Root command group; domain errors become an `error:` line and the matching exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except AppError as e:
            logger.debug(f'{e.error}: {e.message}')
            click.echo(f'error: {e.message}', err=True)
            ctx.exit(e.exit_code)
        except OSError as e:
            click.echo(f'error: {e}', err=True)
            ctx.exit(3)


def create_cli():
    """Application factory pattern"""

    @click.group(cls=KronHadCLI, context_settings={'help_option_names': ['-h', '--help']})
    @click.version_option('1.0.0', prog_name='kronhad')
    @click.option('--log-level', type=click.Choice(LEVELS, case_sensitive=False), default=None,
                  help=f'Override KRONHAD_LOG_LEVEL (default {Config.LOG_LEVEL})')
    def cli(log_level):
        """Kronecker fast-Hadamard compressive sensing of bi-photon joint distributions."""
        if log_level:
            set_level(log_level)

    # Register commands
    register_commands(cli)

    return cli
