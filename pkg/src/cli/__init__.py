"""
Command line front end

Exports:
- app: the Typer application (`python -m src.cli --help`)
- ExitCode: the exit-code contract shared by every command
"""

from .main import ExitCode, app

__all__ = ['app', 'ExitCode']
