"""
Commands Package
Registers all command-line commands
"""

from app.cli.analyze import analyze_command
from app.cli.plot import plot_command
from app.cli.reconstruct import reconstruct_command
from app.cli.simulate import simulate_command
from app.cli.sweep import sweep_command
from app.cli.timing import estimate_time_command

__all__ = [
    'simulate_command',
    'reconstruct_command',
    'analyze_command',
    'plot_command',
    'estimate_time_command',
    'sweep_command',
    'register_commands'
]


def register_commands(cli):
    """
    Register all commands with the root group

    Args:
        cli: click Group instance
    """
    for command in (simulate_command, reconstruct_command, analyze_command,
                    plot_command, estimate_time_command, sweep_command):
        cli.add_command(command)
