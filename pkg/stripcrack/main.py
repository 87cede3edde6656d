"""
Command-line entry point for StripCrack.
"""
import sys
from typing import List, Optional

import structlog

from stripcrack.commands.router import build_parser
from stripcrack.core.config import RunConfig, get_default_config, load_run_config
from stripcrack.core.exceptions import (
    ConfigError,
    NoConvergenceError,
    NonConvergenceError,
    SingularMatrixError,
    UnsupportedRegimeError,
)
from stripcrack.core.logging import configure_logging

logger = structlog.get_logger(__name__)

EXIT_CONFIG = 2
EXIT_NO_CONVERGENCE = 3
EXIT_NUMERICAL = 4


def resolve_config(args) -> RunConfig:
    config = load_run_config(args.config) if args.config else get_default_config()
    return config.with_output(path=args.out, format=args.format, t=args.time)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, args.log_format)
    logger.info("command_started", command=args.command, config=args.config)

    try:
        config = resolve_config(args)
        code = args.handler(args, config)
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_CONFIG
    except NoConvergenceError as e:
        logger.error(f"Reduction method did not converge: {e}")
        return EXIT_NO_CONVERGENCE
    except (NonConvergenceError, UnsupportedRegimeError, SingularMatrixError) as e:
        logger.error(f"Numerical failure: {e}", s=getattr(e, "s", None))
        return EXIT_NUMERICAL

    logger.info("command_finished", command=args.command, exit_code=code)
    return code


if __name__ == "__main__":
    sys.exit(main())
