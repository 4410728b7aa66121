"""
CommandExecutor for the curve toolkit.

Parses curve specifications, builds the requested curves and runs the
sample, frenet, verify and compare commands. Toolkit errors are mapped to
their exit codes here.
"""

import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, ValidationError
from scipy.spatial.transform import Rotation

from artifacts import (
    FRENET_COLUMNS,
    SAMPLE_COLUMNS,
    OutputFormat,
    frenet_rows,
    read_curve_file,
    render_model,
    render_table,
    render_verification,
    sample_rows,
    write_text,
)
from quatcurves.characterize import similar_check
from quatcurves.config import DEFAULT_CONFIG, ToolkitConfig
from quatcurves.errors import CurveError, CurveIOError, ParameterError, UndefinedFrameError
from quatcurves.families import (
    Convention,
    SalkowskiParams,
    anti_salkowski,
    circle,
    circular_helix,
    line,
    salkowski,
)
from quatcurves.kernel import Curve, cumulative_arc_length, frame_table
from quatcurves.models import Criterion
from verifier import CurveVerifier


class Family(str, Enum):
    SALKOWSKI = "salkowski"
    ANTI_SALKOWSKI = "anti-salkowski"
    LINE = "line"
    CIRCLE = "circle"
    HELIX = "helix"
    FILE = "file"


class CurveSpec(BaseModel):
    """A curve named on the command line: family, parameters and an optional rigid motion."""

    model_config = ConfigDict(extra="forbid")

    family: Family
    m: Optional[float] = None
    radius: float = 1.0
    pitch: float = 1.0
    margin: Optional[float] = None
    convention: Convention = Convention.INTRINSIC
    path: Optional[str] = None
    rotvec: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    translation: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    antipodal: bool = False


# short keys accepted in "family:key=value,..." specifications
_VECTOR_KEYS = {"rx": ("rotvec", 0), "ry": ("rotvec", 1), "rz": ("rotvec", 2), "tx": ("translation", 0), "ty": ("translation", 1), "tz": ("translation", 2)}
_ALIASES = {"a": "radius", "b": "pitch", "file": "path"}


def parse_curve_spec(text: str) -> CurveSpec:
    """
    Parse ``family:key=value,...`` or the path of a curve file.

    Keys: m, radius (a), pitch (b), margin, convention, path, antipodal and
    the rigid motion rx, ry, rz (rotation vector) and tx, ty, tz.

    Raises:
        ParameterError: unknown family or key, or a malformed value
    """
    text = text.strip()
    if ":" not in text and Path(text).suffix.lower() in (".csv", ".json"):
        return CurveSpec(family=Family.FILE, path=text)

    family, _, rest = text.partition(":")
    fields: Dict[str, object] = {"family": family.strip()}
    vectors = {"rotvec": [0.0, 0.0, 0.0], "translation": [0.0, 0.0, 0.0]}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if key == "antipodal" and not sep:
            fields["antipodal"] = True
            continue
        if not sep:
            raise ParameterError(f"malformed curve parameter {item!r} in {text!r}; expected key=value")
        if key in _VECTOR_KEYS:
            name, axis = _VECTOR_KEYS[key]
            try:
                vectors[name][axis] = float(value)
            except ValueError as e:
                raise ParameterError(f"{key} must be a number, got {value!r}") from e
            continue
        fields[_ALIASES.get(key, key)] = value.strip()
    fields.update({name: tuple(values) for name, values in vectors.items()})

    try:
        return CurveSpec.model_validate(fields)
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise ParameterError(f"invalid curve specification {text!r}: {location}: {error['msg']}") from e


def build_curve(spec: CurveSpec, config: ToolkitConfig = DEFAULT_CONFIG) -> Curve:
    """
    Construct the curve a specification names.

    The margin of the Salkowski families is a fraction of pi/(2|n|),
    taken from the specification or the configuration.
    """
    family = spec.family
    if family in (Family.SALKOWSKI, Family.ANTI_SALKOWSKI):
        if spec.m is None:
            raise ParameterError(f"{family.value} needs the shape parameter m")
        if spec.m == 0.0:
            raise ParameterError("Salkowski shape parameter m must be nonzero")
        fraction = config.margin if spec.margin is None else spec.margin
        p = SalkowskiParams.from_fraction(spec.m, fraction)
        make = salkowski if family is Family.SALKOWSKI else anti_salkowski
        curve = make(spec.m, p.margin, spec.convention)
    elif family is Family.LINE:
        curve = line()
    elif family is Family.CIRCLE:
        curve = circle(spec.radius)
    elif family is Family.HELIX:
        curve = circular_helix(spec.radius, spec.pitch)
    else:
        if not spec.path:
            raise ParameterError("the file family needs a path")
        curve = read_curve_file(spec.path, config.spline_degree)

    if spec.antipodal:
        curve = curve.antipodal()
    if any(spec.rotvec) or any(spec.translation):
        rotation = Rotation.from_rotvec(spec.rotvec).as_matrix()
        curve = curve.transformed(rotation, spec.translation)
    return curve


class CommandExecutor:
    """
    Executor for the toolkit commands.

    Each command returns its exit code; toolkit errors are reported on
    stderr and mapped to the error's exit code.
    """

    def __init__(self, config: ToolkitConfig = DEFAULT_CONFIG):
        """
        Initialize executor with the resolved configuration.

        Args:
            config: defaults merged with the config file and command-line flags
        """
        self.configure(config)

    def configure(self, config: ToolkitConfig) -> None:
        self.config = config
        self.verifier = CurveVerifier(config)

    def execute(self, command: Callable[[], int]) -> int:
        """Run a command and map failures to exit codes."""
        try:
            return command()
        except CurveError as e:
            print(f"error: {e.message}", file=sys.stderr)
            return e.exit_code
        except Exception as e:
            logger.exception(f"Unexpected failure: {e}")
            return 1

    def _step(self, curve: Curve, fd_step: Optional[float]) -> float:
        return fd_step if fd_step is not None else self.config.fd_step_rel * curve.span

    def _grid(self, curve: Curve, t0: Optional[float], t1: Optional[float], n: Optional[int]) -> np.ndarray:
        n = self.config.grid_size if n is None else n
        if n < 2:
            raise ParameterError(f"grid needs at least 2 points, got {n}")
        lo = curve.domain[0] if t0 is None else t0
        hi = curve.domain[1] if t1 is None else t1
        if lo >= hi:
            raise ParameterError(f"t-range must satisfy t0 < t1, got [{lo}, {hi}]")
        grid = np.linspace(lo, hi, n)
        curve.check_domain(grid)
        return grid

    def sample(
        self,
        spec: CurveSpec,
        t0: Optional[float] = None,
        t1: Optional[float] = None,
        n: Optional[int] = None,
        out: Optional[str] = None,
        fmt: OutputFormat = OutputFormat.CSV,
        fd_step: Optional[float] = None,
    ) -> int:
        """Write n rows of (t, s, x, y, z); s is measured from the first row."""
        curve = build_curve(spec, self.config)
        grid = self._grid(curve, t0, t1, n)
        s = cumulative_arc_length(curve, grid, self._step(curve, fd_step))
        rows = sample_rows(grid, s - s[0], curve(grid))
        write_text(render_table(SAMPLE_COLUMNS, rows, fmt, self.config.precision, curve.label), out)
        logger.info(f"Sampled {curve.label} at {grid.size} points")
        return 0

    def frenet(
        self,
        spec: CurveSpec,
        t0: Optional[float] = None,
        t1: Optional[float] = None,
        n: Optional[int] = None,
        out: Optional[str] = None,
        fmt: OutputFormat = OutputFormat.CSV,
        fd_step: Optional[float] = None,
    ) -> int:
        """
        Write the Frenet table of a curve.

        Rows where the frame is undefined are written as NaN and counted in
        a warning; if fewer than two rows are defined the command fails.
        """
        curve = build_curve(spec, self.config)
        grid = self._grid(curve, t0, t1, n)
        h = self._step(curve, fd_step)
        table = frame_table(curve, grid, h, self.config.frame_tol)
        if table.field is None:
            raise UndefinedFrameError(f"the frame of {curve.label} is undefined on the whole grid")
        flagged = int(np.count_nonzero(~table.defined))
        if flagged:
            logger.warning(f"{flagged} of {grid.size} rows of {curve.label} have no defined frame")
        s = cumulative_arc_length(curve, grid, h)
        rows = frenet_rows(table, s - s[0])
        write_text(render_table(FRENET_COLUMNS, rows, fmt, self.config.precision, curve.label), out)
        return 0

    def verify(
        self,
        checks: List[str],
        params: Optional[Dict[str, object]] = None,
        as_json: bool = False,
        out: Optional[str] = None,
    ) -> int:
        """Run checks and print their reports; exit 0 iff every report passes."""
        reports = [self.verifier.run(check, params) for check in checks]
        write_text(render_verification(reports, as_json), out)
        return 0 if all(report.passed for report in reports) else 1

    def verify_scenario(self, path: str, as_json: bool = False, out: Optional[str] = None) -> int:
        """Run every ``[[checks]]`` entry of a TOML scenario file."""
        scenario = load_scenario(path)
        reports = [self.verifier.run(entry["name"], entry.get("params")) for entry in scenario]
        write_text(render_verification(reports, as_json), out)
        return 0 if all(report.passed for report in reports) else 1

    def compare(
        self,
        a: CurveSpec,
        b: CurveSpec,
        criterion: Criterion = Criterion.RATIO,
        antipodal: bool = False,
        as_json: bool = False,
        out: Optional[str] = None,
        fd_step: Optional[float] = None,
    ) -> int:
        """Compare two curves under a similarity criterion; exit 0 iff they are similar."""
        curve_a = build_curve(a, self.config)
        curve_b = build_curve(b, self.config)
        grids = (
            curve_a.default_grid(self.config.grid_size, regular=True),
            curve_b.default_grid(self.config.grid_size, regular=True),
        )
        report = similar_check(
            curve_a,
            curve_b,
            Criterion(criterion),
            grids=grids,
            tol=self.config.tol,
            up_to_antipodal=antipodal,
            h=fd_step,
            frame_tol=self.config.frame_tol,
        )
        write_text(render_model(report, as_json), out)
        return 0 if report.verdict else 1


def load_scenario(path: str) -> List[Dict[str, object]]:
    """
    Read the check list of a verification scenario.

    Raises:
        CurveIOError: unreadable file
        ParameterError: invalid TOML or no ``[[checks]]`` entries
    """
    try:
        with open(path, "rb") as f:
            scenario = tomllib.load(f)
    except OSError as e:
        raise CurveIOError(f"cannot read scenario {path}: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ParameterError(f"scenario {path} is not valid TOML: {e}") from e

    checks = scenario.get("checks", [])
    if not checks or not all(isinstance(entry, dict) and "name" in entry for entry in checks):
        raise ParameterError(f"scenario {path} needs [[checks]] entries with a name")
    logger.info(f"Scenario {path}: {[entry['name'] for entry in checks]}")
    return checks
