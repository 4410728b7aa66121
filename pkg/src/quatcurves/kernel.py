"""
Numerical differential geometry of spatial quaternionic curves.

Curves map a parameter t to a spatial quaternion (stored as a length-3
array). Every map is vectorised: it accepts a 1-D array of parameters and
returns an array of shape (N, 3). Derivatives come from attached analytic
maps where available and from high-order finite differences otherwise.
"""

from functools import lru_cache
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.interpolate import make_interp_spline
from scipy.optimize import brentq

from quatcurves.errors import (
    DegenerateRatioError,
    DomainError,
    GridRangeError,
    ParameterError,
    SingularParametrizationError,
    UndefinedFrameError,
)
from quatcurves.models import FrameField, FrenetSample, Provenance, SpatialQuaternion
from quatcurves.quaternion import vec_cross, vec_dot, vec_norm

CurveMap = Callable[[np.ndarray], np.ndarray]

DEFAULT_FD_STEP_REL = 1e-4
MIN_FD_STEP_REL = 1e-12
DEFAULT_FRAME_TOL = 1e-7
QUAD_TOL = 1e-10
QUAD_MAX_DEPTH = 40
DOMAIN_SLACK = 1e-12

# Central stencil widths per derivative order; one-sided stencils use order + 4 points.
_CENTRAL_POINTS = {1: 5, 2: 5, 3: 7}
_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(5)


def _evaluate_map(fn: CurveMap, t: np.ndarray) -> np.ndarray:
    flat = np.atleast_1d(np.asarray(t, dtype=float)).ravel()
    values = np.asarray(fn(flat), dtype=float).reshape(flat.size, 3)
    if not np.all(np.isfinite(values)):
        bad = flat[~np.all(np.isfinite(values), axis=1)][0]
        raise DomainError(f"curve map is not finite at t={bad}")
    return values


class Curve:
    """
    A parametrised spatial curve on a closed interval.

    Args:
        evaluate: vectorised map t -> (N, 3) positions
        domain: (t_lo, t_hi) with t_lo < t_hi
        derivatives: optional analytic derivative maps keyed by order 1..3
        label: free-form description
        params: family parameters, recorded for reports
        excluded: open sub-intervals where the Frenet frame is known to be undefined
    """

    def __init__(
        self,
        evaluate: CurveMap,
        domain: Tuple[float, float],
        derivatives: Optional[Mapping[int, CurveMap]] = None,
        label: str = "",
        params: Optional[Dict[str, float]] = None,
        excluded: Sequence[Tuple[float, float]] = (),
    ):
        t_lo, t_hi = (float(domain[0]), float(domain[1]))
        if not (np.isfinite(t_lo) and np.isfinite(t_hi)) or t_lo >= t_hi:
            raise ParameterError(f"curve domain must be a finite interval with t_lo < t_hi, got {domain}")
        derivatives = dict(derivatives or {})
        unknown = set(derivatives) - {1, 2, 3}
        if unknown:
            raise ParameterError(f"analytic derivatives are supported for orders 1..3, got {sorted(unknown)}")

        self._evaluate = evaluate
        self._derivatives = derivatives
        self.domain = (t_lo, t_hi)
        self.label = label
        self.params = dict(params or {})
        self.excluded = [(float(a), float(b)) for a, b in excluded]

    def __repr__(self) -> str:
        return f"Curve({self.label!r}, domain={self.domain})"

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        self.check_domain(t_arr)
        values = _evaluate_map(self._evaluate, t_arr)
        if t_arr.ndim == 0:
            return values[0]
        return values.reshape(t_arr.shape + (3,))

    @property
    def span(self) -> float:
        return self.domain[1] - self.domain[0]

    @property
    def is_analytic(self) -> bool:
        return all(order in self._derivatives for order in (1, 2, 3))

    def check_domain(self, t) -> None:
        t_arr = np.asarray(t, dtype=float)
        slack = DOMAIN_SLACK * self.span
        outside = (t_arr < self.domain[0] - slack) | (t_arr > self.domain[1] + slack)
        if np.any(outside):
            bad = float(np.atleast_1d(t_arr)[np.atleast_1d(outside)][0])
            raise DomainError(f"t={bad} lies outside the domain {self.domain} of {self.label or 'curve'}")

    def map(self, order: int) -> Optional[CurveMap]:
        """Raw map of the given derivative order (0 is the curve itself), if attached."""
        if order == 0:
            return self._evaluate
        return self._derivatives.get(order)

    def analytic(self, order: int) -> Optional[CurveMap]:
        return self._derivatives.get(order)

    def regular_intervals(self) -> List[Tuple[float, float]]:
        """The domain with the excluded intervals removed."""
        intervals = [self.domain]
        for a, b in sorted(self.excluded):
            pieces = []
            for lo, hi in intervals:
                if b <= lo or a >= hi:
                    pieces.append((lo, hi))
                    continue
                if a > lo:
                    pieces.append((lo, a))
                if b < hi:
                    pieces.append((b, hi))
            intervals = pieces
        return intervals

    def default_grid(self, n: int, regular: bool = False) -> np.ndarray:
        """Uniform grid on the domain, or on the longest regular sub-interval."""
        if n < 2:
            raise ParameterError(f"a grid needs at least 2 points, got {n}")
        lo, hi = self.domain
        if regular:
            lo, hi = max(self.regular_intervals(), key=lambda iv: iv[1] - iv[0])
        return np.linspace(lo, hi, n)

    def without_derivatives(self) -> "Curve":
        """Same curve, differentiated by finite differences only."""
        return Curve(self._evaluate, self.domain, None, self.label, self.params, self.excluded)

    def antipodal(self) -> "Curve":
        """The image t -> -c(t); curvature is kept, torsion changes sign."""
        evaluate = self._evaluate
        derivatives = {order: _negated(fn) for order, fn in self._derivatives.items()}
        return Curve(
            lambda t: -np.asarray(evaluate(t), dtype=float),
            self.domain,
            derivatives,
            f"antipodal({self.label})",
            self.params,
            self.excluded,
        )

    def transformed(self, rotation, translation=(0.0, 0.0, 0.0)) -> "Curve":
        """Rigid motion t -> R c(t) + b."""
        rot = np.asarray(rotation, dtype=float).reshape(3, 3)
        if not np.allclose(rot @ rot.T, np.eye(3), atol=1e-10) or np.linalg.det(rot) < 0:
            raise ParameterError("rotation must be a proper orthogonal 3x3 matrix")
        shift = np.asarray(translation, dtype=float).reshape(3)
        evaluate = self._evaluate
        derivatives = {order: _rotated(fn, rot) for order, fn in self._derivatives.items()}
        return Curve(
            lambda t: np.asarray(evaluate(t), dtype=float) @ rot.T + shift,
            self.domain,
            derivatives,
            f"rigid({self.label})",
            self.params,
            self.excluded,
        )

    def reparametrized(
        self,
        phi: Callable[[np.ndarray], np.ndarray],
        domain: Tuple[float, float],
        dphi: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    ) -> "Curve":
        """
        The curve u -> c(phi(u)) for an increasing map phi of ``domain`` into the domain of c.

        The first derivative is attached by the chain rule when both c' and
        phi' are known; higher orders fall back to finite differences of it.
        """
        ends = np.asarray(phi(np.asarray(domain, dtype=float)), dtype=float)
        if ends[0] >= ends[1]:
            raise ParameterError("reparametrisation must be increasing")
        self.check_domain(ends)
        evaluate = self._evaluate
        derivatives: Dict[int, CurveMap] = {}
        first = self._derivatives.get(1)
        if first is not None and dphi is not None:
            derivatives[1] = lambda u: np.asarray(first(phi(u)), dtype=float) * np.asarray(dphi(u), dtype=float)[:, None]
        return Curve(
            lambda u: evaluate(phi(u)),
            domain,
            derivatives,
            f"reparametrized({self.label})",
            self.params,
        )


def _negated(fn: CurveMap) -> CurveMap:
    return lambda t: -np.asarray(fn(t), dtype=float)


def _rotated(fn: CurveMap, rot: np.ndarray) -> CurveMap:
    return lambda t: np.asarray(fn(t), dtype=float) @ rot.T


class SampledCurve(Curve):
    """
    Curve interpolated from a table of samples.

    Positions are interpolated with a spline of the requested degree
    (odd, at most 5). When samples of the first derivative are given, the
    derivatives of orders 1..3 come from an interpolant of those samples
    instead of differentiating the position spline.
    """

    def __init__(
        self,
        grid,
        positions,
        derivative_samples=None,
        degree: int = 5,
        label: str = "",
        params: Optional[Dict[str, float]] = None,
    ):
        grid = np.asarray(grid, dtype=float)
        positions = np.asarray(positions, dtype=float)
        if grid.ndim != 1 or grid.size < 2:
            raise ParameterError("a sampled curve needs at least two samples")
        if positions.shape != (grid.size, 3):
            raise ParameterError(f"positions must have shape ({grid.size}, 3), got {positions.shape}")
        if np.any(np.diff(grid) <= 0):
            raise ParameterError("sample parameters must be strictly increasing")

        degree = min(degree, grid.size - 1)
        if degree % 2 == 0:
            degree -= 1
        self.grid = grid
        self.positions = positions
        self.degree = degree

        spline = make_interp_spline(grid, positions, k=degree, axis=0)
        if derivative_samples is not None:
            rates = np.asarray(derivative_samples, dtype=float).reshape(grid.size, 3)
            rate_spline = make_interp_spline(grid, rates, k=degree, axis=0)
            derivatives = {1: rate_spline, 2: _spline_derivative(rate_spline, 1), 3: _spline_derivative(rate_spline, 2)}
        else:
            derivatives = {order: _spline_derivative(spline, order) for order in (1, 2, 3)}

        logger.debug(f"Sampled curve {label!r}: {grid.size} samples, spline degree {degree}")
        super().__init__(spline, (grid[0], grid[-1]), derivatives, label, params)


def _spline_derivative(spline, order: int) -> CurveMap:
    if order > spline.k:
        return lambda t: np.zeros((np.atleast_1d(t).size, 3))
    return spline.derivative(order)


def fornberg_weights(x0: float, nodes, order: int) -> np.ndarray:
    """
    Finite-difference weights of the order-th derivative at x0 over arbitrary nodes.

    Fornberg's recursion, exact for polynomials of degree < len(nodes).
    """
    x = np.asarray(nodes, dtype=float)
    n = x.size
    if order >= n:
        raise ParameterError(f"{n} nodes cannot resolve derivative order {order}")
    c = np.zeros((n, order + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


@lru_cache(maxsize=64)
def _stencil_weights(offsets: Tuple[int, ...], order: int) -> Tuple[float, ...]:
    return tuple(fornberg_weights(0.0, offsets, order))


def resolve_step(c: Curve, h: Optional[float] = None) -> float:
    """Finite-difference step: ``h`` or 1e-4 of the domain length."""
    step = DEFAULT_FD_STEP_REL * c.span if h is None else float(h)
    if not step > 0 or step < MIN_FD_STEP_REL * c.span:
        raise ParameterError(f"degenerate finite-difference step h={h} for domain {c.domain}")
    return step


def _finite_difference(fn: CurveMap, t: np.ndarray, order: int, h: float, domain: Tuple[float, float]) -> np.ndarray:
    lo, hi = domain
    half = _CENTRAL_POINTS[order] // 2
    one_sided = order + 4
    cap = 2 * one_sided
    room_lo = np.minimum(np.floor((t - lo) / h + 1e-9), cap).astype(int)
    room_hi = np.minimum(np.floor((hi - t) / h + 1e-9), cap).astype(int)

    central = (room_lo >= half) & (room_hi >= half)
    start = np.full(t.size, -half)
    width = np.where(central, 2 * half + 1, one_sided)
    near_lo = ~central & (room_lo < half)
    near_hi = ~central & ~near_lo
    start[near_lo] = -room_lo[near_lo]
    start[near_hi] = room_hi[near_hi] - (one_sided - 1)
    if np.any(start < -room_lo) or np.any(start + width - 1 > room_hi):
        raise DomainError(f"domain {domain} is too short for a step h={h} stencil of order {order}")

    result = np.empty((t.size, 3))
    for first, count in set(zip(start.tolist(), width.tolist())):
        mask = (start == first) & (width == count)
        offsets = tuple(range(first, first + count))
        weights = np.asarray(_stencil_weights(offsets, order))
        nodes = t[mask][:, None] + np.asarray(offsets, dtype=float)[None, :] * h
        values = _evaluate_map(fn, nodes.ravel()).reshape(nodes.shape + (3,))
        result[mask] = np.einsum("w,mwk->mk", weights, values) / h**order
    return result


def derivative(c: Curve, t, order: int = 1, h: Optional[float] = None) -> np.ndarray:
    """
    Derivative of a curve of order 1..3.

    Uses the attached analytic derivative when present. Otherwise the
    highest attached lower-order derivative is differentiated by finite
    differences of order-4 accuracy: 5-point central stencils for orders
    1-2, 7-point for order 3, one-sided near the domain ends.

    Args:
        c: curve
        t: parameter value or array of values inside the domain
        order: derivative order
        h: finite-difference step, default 1e-4 of the domain length

    Returns:
        Array of shape (3,) for scalar t, else t.shape + (3,)
    """
    if order not in (1, 2, 3):
        raise ParameterError(f"derivative order must be 1, 2 or 3, got {order}")
    step = resolve_step(c, h)
    t_arr = np.asarray(t, dtype=float)
    c.check_domain(t_arr)
    flat = np.atleast_1d(t_arr).ravel()

    analytic = c.analytic(order)
    if analytic is not None:
        values = _evaluate_map(analytic, flat)
    else:
        base_order = max(j for j in range(order) if c.map(j) is not None)
        values = _finite_difference(c.map(base_order), flat, order - base_order, step, c.domain)

    if t_arr.ndim == 0:
        return values[0]
    return values.reshape(t_arr.shape + (3,))


def speed(c: Curve, t, h: Optional[float] = None) -> np.ndarray:
    return vec_norm(derivative(c, t, 1, h))


def _adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float, max_depth: int) -> float:
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_step(f, a, b, fa, fm, fb, whole, tol, depth) -> float:
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return _simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _simpson_step(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )


def arc_length(
    c: Curve,
    t0: float,
    t1: float,
    tol: float = QUAD_TOL,
    max_depth: int = QUAD_MAX_DEPTH,
    h: Optional[float] = None,
) -> float:
    """
    Arc length between two parameters by adaptive Simpson quadrature of the speed.

    A reversed interval returns the negated length.
    """
    if t0 == t1:
        return 0.0
    if t1 < t0:
        return -arc_length(c, t1, t0, tol, max_depth, h)
    c.check_domain(np.array([t0, t1]))
    return _adaptive_simpson(lambda u: float(speed(c, u, h)), float(t0), float(t1), tol, max_depth)


def cumulative_arc_length(
    c: Curve, grid, h: Optional[float] = None, tol: float = QUAD_TOL, max_depth: int = QUAD_MAX_DEPTH
) -> np.ndarray:
    """
    Arc length from the domain start to every grid point.

    Gauss-Legendre per grid interval; the stretch before the first grid
    point goes through adaptive Simpson with ``tol`` and ``max_depth``.
    """
    grid = np.asarray(grid, dtype=float)
    half = 0.5 * np.diff(grid)
    mid = 0.5 * (grid[1:] + grid[:-1])
    nodes = mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]
    speeds = speed(c, nodes.ravel(), h).reshape(nodes.shape)
    segments = half * (speeds @ _GAUSS_WEIGHTS)
    offset = arc_length(c, c.domain[0], grid[0], tol, max_depth, h) if grid[0] > c.domain[0] else 0.0
    return offset + np.concatenate([[0.0], np.cumsum(segments)])


def _check_regular_speed(c: Curve, h: Optional[float], tol: float, probes: int = 257) -> None:
    probe = np.linspace(c.domain[0], c.domain[1], probes)
    speeds = speed(c, probe, h)
    if np.min(speeds) <= tol:
        bad = float(probe[int(np.argmin(speeds))])
        raise SingularParametrizationError(f"speed of {c.label or 'curve'} vanishes near t={bad}", t=bad)


def param_at_arclength(c: Curve, s: float, tol: float = QUAD_TOL, h: Optional[float] = None) -> float:
    """
    Parameter t with arc_length(t_lo, t) = s.

    Raises:
        DomainError: s outside [0, total length]
        SingularParametrizationError: the speed vanishes inside the domain
    """
    lo, hi = c.domain
    total = arc_length(c, lo, hi, h=h)
    if s < -tol or s > total + tol:
        raise DomainError(f"arc length {s} outside [0, {total}]")
    _check_regular_speed(c, h, DEFAULT_FRAME_TOL)
    if s <= 0.0:
        return lo
    if s >= total:
        return hi
    t = brentq(lambda u: arc_length(c, lo, u, h=h) - s, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps)
    logger.debug(f"param_at_arclength: s={s} -> t={t}")
    return float(t)


class FrameArrays(NamedTuple):
    """Unchecked Frenet quantities on a grid; normals are as the curve determines them."""

    grid: np.ndarray
    speed: np.ndarray
    tangent: np.ndarray
    normal1: np.ndarray
    normal2: np.ndarray
    curvature: np.ndarray
    torsion: np.ndarray


class FrameTable(NamedTuple):
    """Frames on a grid where some points may be undefined."""

    grid: np.ndarray
    defined: np.ndarray
    field: Optional[FrameField]


def frame_arrays(c: Curve, grid, h: Optional[float] = None) -> FrameArrays:
    """
    Frenet quantities from the first three derivatives, without raising on degeneracy.

    k = |c' ^ c''| / |c'|^3 and r = <c' ^ c'', c'''> / |c' ^ c''|^2; the
    principal normal is the part of c'' orthogonal to the tangent, and
    normal2 = tangent ^ normal1. Where speed or curvature vanish the
    corresponding entries are zero.
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    d1, d2, d3 = (derivative(c, grid, order, h) for order in (1, 2, 3))
    spd = vec_norm(d1)
    tangent = d1 / np.where(spd > 0, spd, 1.0)[:, None]
    binormal_dir = vec_cross(d1, d2)
    cross_norm = vec_norm(binormal_dir)
    curvature = cross_norm / np.where(spd > 0, spd, 1.0) ** 3
    accel_perp = d2 - vec_dot(d2, tangent)[:, None] * tangent
    perp_norm = vec_norm(accel_perp)
    normal1 = accel_perp / np.where(perp_norm > 0, perp_norm, 1.0)[:, None]
    normal2 = vec_cross(tangent, normal1)
    torsion = vec_dot(binormal_dir, d3) / np.where(cross_norm > 0, cross_norm**2, 1.0)
    return FrameArrays(grid, spd, tangent, normal1, normal2, curvature, torsion)


def _validate_grid(c: Curve, grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ParameterError("a frame grid needs at least two points")
    if np.any(np.diff(grid) <= 0):
        raise ParameterError("frame grid must be strictly increasing")
    c.check_domain(grid)
    return grid


def _orientation(normal1: np.ndarray) -> np.ndarray:
    flips = np.where(vec_dot(normal1[1:], normal1[:-1]) < 0, -1.0, 1.0)
    return np.concatenate([[1.0], np.cumprod(flips)])


def _build_field(c: Curve, arrays: FrameArrays, s: np.ndarray) -> FrameField:
    orientation = _orientation(arrays.normal1)
    flipped = int(np.count_nonzero(np.diff(orientation)))
    if flipped:
        logger.debug(f"Frame orientation of {c.label or 'curve'} flipped at {flipped} sample(s) to stay continuous")
    return FrameField(
        grid=arrays.grid,
        s=s,
        speed=arrays.speed,
        tangent=arrays.tangent,
        normal1=orientation[:, None] * arrays.normal1,
        normal2=orientation[:, None] * arrays.normal2,
        curvature=arrays.curvature,
        torsion=arrays.torsion,
        orientation=orientation,
        provenance=Provenance.ANALYTIC if c.is_analytic else Provenance.FINITE_DIFFERENCE,
        label=c.label,
    )


def frenet_at(c: Curve, t: float, h: Optional[float] = None, tol: float = DEFAULT_FRAME_TOL) -> FrenetSample:
    """
    Frenet apparatus at one parameter value.

    Raises:
        SingularParametrizationError: speed <= tol
        UndefinedFrameError: curvature <= tol
    """
    arrays = frame_arrays(c, np.array([float(t)]), h)
    if arrays.speed[0] <= tol:
        raise SingularParametrizationError(f"speed of {c.label or 'curve'} vanishes at t={t}", t=t)
    if arrays.curvature[0] <= tol:
        raise UndefinedFrameError(f"curvature of {c.label or 'curve'} vanishes at t={t}", t=t)
    return FrenetSample(
        t=float(t),
        s=arc_length(c, c.domain[0], float(t), h=h),
        speed=float(arrays.speed[0]),
        tangent=SpatialQuaternion.from_array(arrays.tangent[0]),
        normal1=SpatialQuaternion.from_array(arrays.normal1[0]),
        normal2=SpatialQuaternion.from_array(arrays.normal2[0]),
        k=float(arrays.curvature[0]),
        r=float(arrays.torsion[0]),
    )


def frame_field(c: Curve, grid, h: Optional[float] = None, tol: float = DEFAULT_FRAME_TOL) -> FrameField:
    """
    Frenet apparatus on a grid with cumulative arc length and sign-continuous normals.

    Raises:
        SingularParametrizationError, UndefinedFrameError: at the first offending grid index
    """
    grid = _validate_grid(c, grid)
    arrays = frame_arrays(c, grid, h)
    slow = np.flatnonzero(arrays.speed <= tol)
    if slow.size:
        i = int(slow[0])
        raise SingularParametrizationError(f"speed vanishes at grid index {i} (t={grid[i]})", t=float(grid[i]))
    flat = np.flatnonzero(arrays.curvature <= tol)
    if flat.size:
        i = int(flat[0])
        raise UndefinedFrameError(f"curvature vanishes at grid index {i} (t={grid[i]})", t=float(grid[i]), index=i)
    return _build_field(c, arrays, cumulative_arc_length(c, grid, h))


def frame_table(c: Curve, grid, h: Optional[float] = None, tol: float = DEFAULT_FRAME_TOL) -> FrameTable:
    """
    Frames on a grid, flagging instead of raising where they are undefined.

    A point is undefined when speed or curvature is at most ``tol`` or when it
    lies in one of the curve's excluded intervals.
    """
    grid = _validate_grid(c, grid)
    arrays = frame_arrays(c, grid, h)
    defined = (arrays.speed > tol) & (arrays.curvature > tol)
    for a, b in c.excluded:
        defined &= ~((grid > a) & (grid < b))
    if np.count_nonzero(defined) < 2:
        return FrameTable(grid, defined, None)
    kept = FrameArrays(*(np.asarray(column)[defined] for column in arrays))
    s = cumulative_arc_length(c, grid, h)[defined]
    return FrameTable(grid, defined, _build_field(c, kept, s))


def total_curvature(ff: FrameField, t: float) -> float:
    """
    Total curvature phi = int k ds from the grid start to t (trapezoid).

    Raises:
        GridRangeError: t outside the grid of the field
    """
    grid = ff.grid
    if t < grid[0] or t > grid[-1]:
        raise GridRangeError(f"t={t} outside the frame field range [{grid[0]}, {grid[-1]}]")
    phi = ff.total_curvature_profile()
    i = min(int(np.searchsorted(grid, t, side="right")) - 1, len(ff) - 2)
    w = (t - grid[i]) / (grid[i + 1] - grid[i])
    s_t = ff.s[i] + w * (ff.s[i + 1] - ff.s[i])
    k_t = ff.curvature[i] + w * (ff.curvature[i + 1] - ff.curvature[i])
    return float(phi[i] + 0.5 * (ff.curvature[i] + k_t) * (s_t - ff.s[i]))


def ode35_residual(ff: FrameField, tol: float = 1e-4, edge: int = 3) -> float:
    """
    Sup-norm residual of the third-order tangent equation in the total-curvature parameter.

    With phi = int k ds and f = r/k, the tangent satisfies
    d/dphi[t''/f] + ((1 + f^2)/f) t' - (f'/f^2) t = 0, primes in phi.
    Derivatives are second-order finite differences on the (nonuniform)
    phi grid; ``edge`` points at each end are left out of the sup.

    Raises:
        DegenerateRatioError: |f| <= tol somewhere on the field
    """
    f = ff.ratio
    small = np.flatnonzero(np.abs(f) <= tol)
    if small.size:
        raise DegenerateRatioError(f"curvature ratio r/k vanishes at t={ff.grid[small[0]]}")
    if len(ff) <= 2 * edge + 2:
        raise ParameterError(f"frame field of {len(ff)} samples is too short for edge={edge}")

    phi = ff.total_curvature_profile()

    def d(values: np.ndarray) -> np.ndarray:
        return np.gradient(values, phi, axis=0, edge_order=2)

    tangent = ff.tangent
    t1 = d(tangent)
    t2 = d(t1)
    u1 = d(t2 / f[:, None])
    f1 = d(f)
    residual = u1 + ((1.0 + f**2) / f)[:, None] * t1 - (f1 / f**2)[:, None] * tangent
    interior = residual[edge : len(ff) - edge]
    value = float(np.max(vec_norm(interior)))
    logger.debug(f"ode35 residual over {interior.shape[0]} interior samples: {value:.3e}")
    return value


def frenet_residuals(ff: FrameField, edge: int = 0) -> Dict[str, float]:
    """
    Sup-norms of the Frenet equations along s, differentiating the sampled frame.

    Returns the residuals of t' = k n1, n1' = -k t + r n2 and n2' = -r n1,
    with k signed by the stored orientation.
    """
    kappa = ff.signed_curvature[:, None]
    r = ff.torsion[:, None]

    def d(values: np.ndarray) -> np.ndarray:
        return np.gradient(values, ff.s, axis=0, edge_order=2)

    rows = slice(edge, len(ff) - edge)
    tangent_res = d(ff.tangent) - kappa * ff.normal1
    normal1_res = d(ff.normal1) + kappa * ff.tangent - r * ff.normal2
    normal2_res = d(ff.normal2) + r * ff.normal1
    return {
        "tangent": float(np.max(vec_norm(tangent_res[rows]))),
        "normal1": float(np.max(vec_norm(normal1_res[rows]))),
        "normal2": float(np.max(vec_norm(normal2_res[rows]))),
    }
