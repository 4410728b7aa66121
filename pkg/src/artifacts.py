"""
Artifact files: curve samples, frame tables and reports as CSV or JSON.

CSV files carry a one-line header, comma separators, '.' decimals and a
fixed number of significant digits. Curve files written here can be read
back as spline-interpolated curves.
"""

import csv
import io
import json
from enum import Enum
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel

from quatcurves.errors import CurveIOError, ParameterError
from quatcurves.kernel import FrameTable, SampledCurve
from quatcurves.models import SimilarityReport, VerificationReport

SAMPLE_COLUMNS = ["t", "s", "x", "y", "z"]
FRENET_COLUMNS = ["t", "s", "speed", "tx", "ty", "tz", "n1x", "n1y", "n1z", "n2x", "n2y", "n2z", "k", "r"]
DEFAULT_PRECISION = 12


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


def format_value(value: float, precision: int = DEFAULT_PRECISION) -> str:
    if not np.isfinite(value):
        return "nan"
    return f"{value:.{precision}g}"


def render_table(
    columns: Sequence[str],
    rows: np.ndarray,
    fmt: OutputFormat = OutputFormat.CSV,
    precision: int = DEFAULT_PRECISION,
    label: str = "",
) -> str:
    """
    Render a numeric table.

    Args:
        columns: header names
        rows: array of shape (N, len(columns)); NaN marks an undefined entry
        fmt: csv or json
        precision: significant digits
        label: curve description, recorded in JSON output

    Returns:
        The rendered text
    """
    rows = np.asarray(rows, dtype=float)
    if OutputFormat(fmt) is OutputFormat.JSON:
        rounded = [[float(format_value(v, precision)) if np.isfinite(v) else None for v in row] for row in rows]
        return json.dumps({"curve": label, "columns": list(columns), "rows": rounded}, indent=2)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v, precision) for v in row])
    return buffer.getvalue()


def sample_rows(grid: np.ndarray, s: np.ndarray, positions: np.ndarray) -> np.ndarray:
    return np.column_stack([grid, s, positions])


def frenet_rows(table: FrameTable, s: np.ndarray) -> np.ndarray:
    """
    Frenet table rows over the full grid, NaN where the frame is undefined.

    Normals are written as the curve determines them.
    """
    rows = np.full((table.grid.size, len(FRENET_COLUMNS)), np.nan)
    rows[:, 0] = table.grid
    rows[:, 1] = s
    ff = table.field
    if ff is not None:
        normal1, normal2 = ff.curve_normals()
        defined = table.defined
        rows[defined, 2] = ff.speed
        rows[defined, 3:6] = ff.tangent
        rows[defined, 6:9] = normal1
        rows[defined, 9:12] = normal2
        rows[defined, 12] = ff.curvature
        rows[defined, 13] = ff.torsion
    return rows


def write_text(text: str, path: Optional[Union[str, Path]] = None) -> None:
    """Write to ``path``, or to stdout when no path is given."""
    if path is None:
        print(text, end="" if text.endswith("\n") else "\n")
        return
    target = Path(path)
    try:
        target.write_text(text)
    except OSError as e:
        raise CurveIOError(f"cannot write {target}: {e}") from e
    logger.info(f"Wrote {target}")


def _read_rows(path: Path) -> tuple[List[str], np.ndarray]:
    try:
        text = path.read_text()
    except OSError as e:
        raise CurveIOError(f"cannot read curve file {path}: {e}") from e

    if path.suffix.lower() == ".json":
        try:
            payload = json.loads(text)
            columns = list(payload["columns"])
            rows = np.array([[np.nan if v is None else v for v in row] for row in payload["rows"]], dtype=float)
        except (ValueError, KeyError, TypeError) as e:
            raise ParameterError(f"malformed curve file {path}: {e}") from e
        return columns, rows.reshape(-1, len(columns))

    reader = csv.reader(io.StringIO(text))
    try:
        columns = [name.strip() for name in next(reader)]
        rows = np.array([[float(v) for v in row] for row in reader if row], dtype=float)
    except (StopIteration, ValueError) as e:
        raise ParameterError(f"malformed curve file {path}: {e}") from e
    return columns, rows.reshape(-1, len(columns))


def read_curve_file(path: Union[str, Path], degree: int = 5) -> SampledCurve:
    """
    Re-ingest a curve file written by ``sample`` as a spline-interpolated curve.

    The file needs the columns t, x, y and z; other columns are ignored.

    Raises:
        CurveIOError: the file cannot be read
        ParameterError: missing columns or unusable samples
    """
    path = Path(path)
    columns, rows = _read_rows(path)
    missing = [name for name in ("t", "x", "y", "z") if name not in columns]
    if missing:
        raise ParameterError(f"curve file {path} lacks columns {missing}")
    index = [columns.index(name) for name in ("t", "x", "y", "z")]
    data = rows[:, index]
    data = data[np.all(np.isfinite(data), axis=1)]
    if data.shape[0] < 2:
        raise ParameterError(f"curve file {path} holds fewer than two usable samples")
    logger.debug(f"Read {data.shape[0]} samples from {path}")
    return SampledCurve(data[:, 0], data[:, 1:], degree=degree, label=f"file({path.name})")


def render_verification(reports: Iterable[VerificationReport], as_json: bool = False) -> str:
    """Human-readable summary or JSON of one or more verification reports."""
    reports = list(reports)
    if as_json:
        payload = [report.model_dump(mode="json", by_alias=True) for report in reports]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2)

    lines = []
    for report in reports:
        lines.append(f"{report.check}: {'PASS' if report.passed else 'FAIL'} ({report.seconds:.2f}s)")
        for a in report.assertions:
            mark = "ok  " if a.passed else "FAIL"
            lines.append(f"  [{mark}] {a.name}: {a.measured:.3e} (tolerance {a.tolerance:.1e})")
        if report.error:
            lines.append(f"  error: {report.error}")
    return "\n".join(lines) + "\n"


def render_model(model: BaseModel, as_json: bool = False) -> str:
    """JSON dump of a report model, or a short text summary for a similarity report."""
    if as_json or not isinstance(model, SimilarityReport):
        return model.model_dump_json(indent=2, by_alias=True) + "\n"

    lines = [
        f"criterion: {model.criterion.value}",
        f"similar: {model.verdict}",
        f"max discrepancy: {model.max_discrepancy:.6e}",
        f"branch: {model.branch:+d}",
        f"matched samples: {model.matched_samples}",
    ]
    if model.degenerate:
        lines.append(f"degenerate: {model.degenerate}")
    if model.transformation_samples:
        lams = np.array([sample.lam for sample in model.transformation_samples])
        lines.append(f"lambda range: [{lams.min():.6g}, {lams.max():.6g}]")
    return "\n".join(lines) + "\n"
