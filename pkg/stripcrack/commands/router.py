"""
Command router: one subparser per command module.
"""
import argparse

from stripcrack import __version__
from stripcrack.commands import convergence, kernel_probe, solve, sweep, validate

COMMANDS = (solve, sweep, convergence, kernel_probe, validate)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stripcrack",
        description="Dynamic anti-plane strip crack in a Kelvin-Voigt half-space",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="Config file (section.key = value lines)")
    parser.add_argument("--out", help="Result file; stdout when omitted")
    parser.add_argument("--format", choices=["csv", "json"], help="Result format")
    parser.add_argument("--time", type=float, help="SIF evaluation time t")
    parser.add_argument("--log-level", default="WARNING", help="DEBUG, INFO, WARNING, ERROR")
    parser.add_argument("--log-format", choices=["console", "json"], default="console")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser
