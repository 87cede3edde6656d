"""
sweep: solve along one (or a paired) material axis.
"""
import argparse
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence, Tuple

import pandas as pd
import structlog

from stripcrack.commands.output import write_result
from stripcrack.core.config import RunConfig
from stripcrack.core.exceptions import ConfigError
from stripcrack.models.material import MaterialParams
from stripcrack.services.linsolve import reduction_solve
from stripcrack.services.postprocess import sif

logger = structlog.get_logger(__name__)

SWEEP_AXES = ("G", "G0", "rho", "k", "tau0")


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="Solve along a material parameter axis")
    parser.add_argument("--axis", required=True, help="Parameter name, or names joined by ','")
    parser.add_argument(
        "--values",
        required=True,
        help="Comma-separated values; paired axes use ':' inside each item (80e9:65e9,...)",
    )
    parser.add_argument("--workers", type=int, default=1, help="Rows solved in parallel")
    parser.set_defaults(handler=run)


def parse_axis(axis: str, values: str) -> Tuple[List[str], List[Tuple[float, ...]]]:
    """
    Parse axis names and value tuples.

    Raises:
        ConfigError: unknown axis name, arity mismatch or non-numeric value
    """
    names = [name.strip() for name in axis.split(",") if name.strip()]
    if not names:
        raise ConfigError("empty sweep axis")
    unknown = [name for name in names if name not in SWEEP_AXES]
    if unknown:
        raise ConfigError(f"unknown sweep axis {unknown}; expected one of {SWEEP_AXES}")
    if len(set(names)) != len(names):
        raise ConfigError("sweep axis repeats a parameter")

    points: List[Tuple[float, ...]] = []
    for item in (part.strip() for part in values.split(",")):
        if not item:
            continue
        parts = item.split(":")
        if len(parts) != len(names):
            raise ConfigError(f"value '{item}' does not match axis {names}")
        try:
            points.append(tuple(float(part) for part in parts))
        except ValueError as e:
            raise ConfigError(f"non-numeric sweep value '{item}'") from e
    if not points:
        raise ConfigError("no sweep values given")
    return names, points


def material_at(base: MaterialParams, names: Sequence[str], point: Sequence[float]) -> MaterialParams:
    material = base
    for name, value in zip(names, point):
        try:
            material = material.with_value(name, value)
        except ValueError as e:
            raise ConfigError(f"invalid sweep value {name}={value}: {e}") from e
    return material


def sweep_rows(config: RunConfig, names: Sequence[str], points: Sequence[Tuple[float, ...]], workers: int = 1) -> pd.DataFrame:
    """One row per point, in axis order."""
    materials = [material_at(config.material, names, point) for point in points]
    solver_cfg = config.solver

    def solve_row(index: int) -> Dict[str, float]:
        material = materials[index]
        solution = reduction_solve(
            material,
            config.quadrature,
            n0=solver_cfg.N0,
            n_max=solver_cfg.N_max,
            sif_tol=solver_cfg.sif_tol,
            step=solver_cfg.step,
        )
        result = sif(solution, material, config.output.t)
        row: Dict[str, float] = dict(zip(names, points[index]))
        row.update(
            {
                "K_I": result.k_one,
                "K_II": result.k_two,
                "K_abs": result.magnitude,
                "N_used": solution.n,
            }
        )
        logger.info("sweep_row", point=points[index], K_abs=result.magnitude, N=solution.n)
        return row

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = list(pool.map(solve_row, range(len(points))))
    return pd.DataFrame(rows, columns=list(names) + ["K_I", "K_II", "K_abs", "N_used"])


def run(args: argparse.Namespace, config: RunConfig) -> int:
    names, points = parse_axis(args.axis, args.values)
    table = sweep_rows(config, names, points, workers=args.workers)
    write_result(config.output.format, config.output.path, table)
    return 0
