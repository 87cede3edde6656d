"""
kernel-probe: tabulate rho0(s) or the field kernel R(x, s).
"""
import argparse
import math
from typing import List, Tuple

import pandas as pd

from stripcrack.commands.output import write_result
from stripcrack.core.config import RunConfig
from stripcrack.core.exceptions import ConfigError
from stripcrack.services.kernel import KernelEvaluator
from stripcrack.services.wave import derive_wave_params


def register(subparsers) -> None:
    parser = subparsers.add_parser("kernel-probe", help="Evaluate the kernels at sample points")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--s-list", help="s values for rho0, e.g. 0,0.5,1")
    group.add_argument("--xs-list", help="x:s pairs for the field kernel, e.g. 0.3:0.4,1:-0.2")
    parser.set_defaults(handler=run)


def _finite(value: str) -> float:
    number = float(value)
    if not math.isfinite(number):
        raise ValueError(f"non-finite value '{value}'")
    return number


def _parse_floats(text: str) -> List[float]:
    try:
        return [_finite(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ConfigError(f"invalid number list '{text}'") from e


def _parse_pairs(text: str) -> List[Tuple[float, float]]:
    pairs = []
    for item in (part.strip() for part in text.split(",")):
        if not item:
            continue
        parts = item.split(":")
        if len(parts) != 2:
            raise ConfigError(f"expected x:s, got '{item}'")
        try:
            pairs.append((_finite(parts[0]), _finite(parts[1])))
        except ValueError as e:
            raise ConfigError(f"invalid pair '{item}'") from e
    return pairs


def rho0_table(kernel: KernelEvaluator, s_values: List[float]) -> pd.DataFrame:
    rows = []
    for s in s_values:
        if s < 0:
            raise ConfigError(f"s must be non-negative, got {s}")
        result = kernel.rho0_eval(s)
        rows.append(
            {
                "s": s,
                "value_re": result.value.real,
                "value_im": result.value.imag,
                "est_error": result.est_error,
                "cutoff": result.cutoff_used,
                "panels": result.panels_used,
            }
        )
    return pd.DataFrame(rows, columns=["s", "value_re", "value_im", "est_error", "cutoff", "panels"])


def field_table(kernel: KernelEvaluator, pairs: List[Tuple[float, float]]) -> pd.DataFrame:
    rows = []
    for x, s in pairs:
        value = complex(kernel.field_kernel_many(x, [s])[0])
        rows.append({"x": x, "s": s, "value_re": value.real, "value_im": value.imag})
    return pd.DataFrame(rows, columns=["x", "s", "value_re", "value_im"])


def run(args: argparse.Namespace, config: RunConfig) -> int:
    kernel = KernelEvaluator(derive_wave_params(config.material), config.quadrature)
    if args.s_list is not None:
        table = rho0_table(kernel, _parse_floats(args.s_list))
    else:
        table = field_table(kernel, _parse_pairs(args.xs_list))
    write_result(config.output.format, config.output.path, table)
    return 0
