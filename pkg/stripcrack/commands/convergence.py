"""
convergence: truncation study over a list of N.
"""
import argparse

from stripcrack.commands.output import write_result
from stripcrack.core.config import RunConfig
from stripcrack.core.exceptions import ConfigError
from stripcrack.services.diagnostics import convergence_study


def register(subparsers) -> None:
    parser = subparsers.add_parser("convergence", help="Tabulate sum a_n and |K| against N")
    parser.add_argument("--n-list", default=None, help="Ascending sizes, e.g. 10,15,20,25")
    parser.set_defaults(handler=run)


def parse_n_list(text: str):
    try:
        sizes = [int(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ConfigError(f"invalid --n-list '{text}'") from e
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ConfigError("--n-list must be strictly ascending")
    if sizes[0] < 1:
        raise ConfigError("--n-list sizes must be positive")
    return sizes


def run(args: argparse.Namespace, config: RunConfig) -> int:
    sizes = parse_n_list(args.n_list) if args.n_list else list(config.validate_.n_list)
    study = convergence_study(config.material, config.quadrature, sizes, t=config.output.t)
    write_result(
        config.output.format,
        config.output.path,
        study.to_frame(),
        extra={"fitted_order": study.fitted_order, "monotone": study.monotone},
    )
    return 0
