"""
Result writers shared by the commands.
"""
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd
import structlog

from stripcrack import __version__
from stripcrack.core.config import OutputFormat

logger = structlog.get_logger(__name__)

FLOAT_FORMAT = "%.17g"


def split_complex(prefix: str, value: complex) -> Dict[str, float]:
    return {f"{prefix}_re": float(value.real), f"{prefix}_im": float(value.imag)}


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def _json_ready(value: Any) -> Any:
    if isinstance(value, pd.DataFrame):
        return [_json_ready(record) for record in value.to_dict(orient="records")]
    if isinstance(value, dict):
        return {key: _json_ready(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(item) for item in value]
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def to_json(payload: Dict[str, Any]) -> str:
    document = {"version": __version__}
    document.update(_json_ready(payload))
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


def _emit(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("result_written", path=str(path))


def write_result(
    fmt: OutputFormat,
    path: Optional[str],
    table: pd.DataFrame,
    siblings: Optional[Dict[str, pd.DataFrame]] = None,
    extra: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Write a primary table plus optional sibling tables.

    CSV writes the primary table to `path` (stdout when unset) and each sibling
    to `<name>.csv` next to it; siblings are skipped on stdout. JSON writes one
    document holding everything.
    """
    target = Path(path) if path else None
    siblings = siblings or {}

    if OutputFormat(fmt) is OutputFormat.JSON:
        payload: Dict[str, Any] = {"result": table}
        payload.update(siblings)
        payload.update(extra or {})
        _emit(to_json(payload), target)
        return

    _emit(frame_to_csv(table), target)
    if target is None:
        if siblings:
            logger.info("siblings_skipped_on_stdout", tables=sorted(siblings))
        return
    for name, frame in siblings.items():
        _emit(frame_to_csv(frame), target.parent / f"{name}.csv")
