"""
Closed-form curve families and the binormal-integral construction.

Salkowski curves have unit curvature and torsion tan(nt); anti-Salkowski
curves have unit torsion and curvature |tan(nt)|, and arise as the integral
of the binormal of a Salkowski curve. All closed forms are finite sums of
sinusoids (plus a linear term), so derivatives of every order are exact.
"""

from enum import Enum
from functools import partial
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict
from scipy.integrate import cumulative_simpson

from quatcurves.errors import ParameterError
from quatcurves.kernel import DEFAULT_FRAME_TOL, Curve, SampledCurve, frame_field

DEFAULT_MARGIN_FRACTION = 0.05
POLE_TOL = 1e-9


class Convention(str, Enum):
    """Which member of an antipodal/rescaled pair a family generator returns."""

    INTRINSIC = "intrinsic"
    CLASSICAL = "classical"


class TrigTerm(NamedTuple):
    """coef * sin(omega * t + phase)"""

    coef: float
    omega: float
    phase: float = 0.0


class TrigSeries:
    """Per-component sums of sinusoids and a linear term, differentiated exactly."""

    def __init__(self, components: Sequence[Sequence[TrigTerm]], linear: Sequence[float] = (0.0, 0.0, 0.0)):
        if len(components) != 3:
            raise ParameterError("a spatial trig series needs three components")
        self.components = [tuple(TrigTerm(*term) for term in terms) for terms in components]
        self.linear = np.asarray(linear, dtype=float)

    def __call__(self, t, order: int = 0) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros((t.size, 3))
        shift = order * np.pi / 2
        for axis, terms in enumerate(self.components):
            for coef, omega, phase in terms:
                out[:, axis] += coef * omega**order * np.sin(omega * t + phase + shift)
        if order == 0:
            out += t[:, None] * self.linear
        elif order == 1:
            out += self.linear
        return out

    def scaled(self, factors: Sequence[float]) -> "TrigSeries":
        """Componentwise rescaling, e.g. (-1, -1, -1) for the antipodal image."""
        components = [
            [TrigTerm(factor * term.coef, term.omega, term.phase) for term in terms]
            for factor, terms in zip(factors, self.components)
        ]
        return TrigSeries(components, self.linear * np.asarray(factors, dtype=float))

    def curve(self, domain: Tuple[float, float], label: str, params: dict, excluded=()) -> Curve:
        derivatives = {order: partial(self, order=order) for order in (1, 2, 3)}
        return Curve(self, domain, derivatives, label, params, excluded)


class SalkowskiParams(BaseModel):
    """Shape parameter m, the derived n = m / sqrt(1 + m^2) and the safe-domain margin."""

    model_config = ConfigDict(frozen=True)

    m: float
    n: float
    margin: float

    @classmethod
    def create(cls, m: float, margin: Optional[float] = None) -> "SalkowskiParams":
        """
        Validate m and the margin and derive n.

        Args:
            m: nonzero shape parameter
            margin: absolute distance kept from the poles at +-pi/(2n),
                default 5% of pi/(2|n|)
        """
        m = float(m)
        if not np.isfinite(m) or m == 0.0:
            raise ParameterError(f"Salkowski shape parameter m must be finite and nonzero, got {m}")
        n = m / np.sqrt(1.0 + m * m)
        if abs(2.0 * abs(n) - 1.0) < POLE_TOL:
            raise ParameterError(f"m={m} gives n=+-1/2, where the closed form has a pole")
        half_width = np.pi / (2.0 * abs(n))
        if margin is None:
            margin = DEFAULT_MARGIN_FRACTION * half_width
        margin = float(margin)
        if not 0.0 < margin < half_width:
            raise ParameterError(f"margin must lie in (0, {half_width}), got {margin}")
        return cls(m=m, n=float(n), margin=margin)

    @classmethod
    def from_fraction(cls, m: float, fraction: float = DEFAULT_MARGIN_FRACTION) -> "SalkowskiParams":
        if not 0.0 < fraction < 1.0:
            raise ParameterError(f"margin fraction must lie in (0, 1), got {fraction}")
        if m == 0.0:
            raise ParameterError("Salkowski shape parameter m must be nonzero")
        n = abs(m) / np.sqrt(1.0 + m * m)
        return cls.create(m, fraction * np.pi / (2.0 * n))

    @property
    def half_width(self) -> float:
        return float(np.pi / (2.0 * abs(self.n)))

    @property
    def domain(self) -> Tuple[float, float]:
        return (-self.half_width + self.margin, self.half_width - self.margin)

    @property
    def positive_domain(self) -> Tuple[float, float]:
        """Safe domain with t > 0 and the neighbourhood of t = 0 removed."""
        return (self.margin, self.half_width - self.margin)

    def grid(self, n: int) -> np.ndarray:
        return np.linspace(*self.domain, n)

    def positive_grid(self, n: int) -> np.ndarray:
        return np.linspace(*self.positive_domain, n)

    def arc_length(self, t) -> np.ndarray:
        """Arc length from t = 0, sin(nt)/m."""
        return np.sin(self.n * np.asarray(t, dtype=float)) / self.m

    def torsion(self, t) -> np.ndarray:
        """Torsion tan(nt) of the intrinsic Salkowski curve, equal to the curvature of its anti-Salkowski curve up to sign."""
        return np.tan(self.n * np.asarray(t, dtype=float))


def _salkowski_series(p: SalkowskiParams) -> TrigSeries:
    m, n = p.m, p.n
    a = 1.0 / np.sqrt(1.0 + m * m)
    up, down = 1.0 + 2.0 * n, 1.0 - 2.0 * n
    half_pi = np.pi / 2
    x = [
        TrigTerm(a * (n - 1.0) / (4.0 * up), up),
        TrigTerm(-a * (1.0 + n) / (4.0 * down), down),
        TrigTerm(-a / 2.0, 1.0),
    ]
    y = [
        TrigTerm(a * (1.0 - n) / (4.0 * up), up, half_pi),
        TrigTerm(a * (1.0 + n) / (4.0 * down), down, half_pi),
        TrigTerm(a / 2.0, 1.0, half_pi),
    ]
    z = [TrigTerm(a / (4.0 * m), 2.0 * n, half_pi)]
    return TrigSeries([x, y, z])


def _anti_salkowski_series(p: SalkowskiParams) -> TrigSeries:
    m, n = p.m, p.n
    up, down = 1.0 + 2.0 * n, 1.0 - 2.0 * n
    half_pi = np.pi / 2
    first = -n / (2.0 * m)
    upper = (1.0 - n) / (4.0 * up * m)
    lower = -(1.0 + n) / (4.0 * down * m)
    x = [TrigTerm(first, 1.0, half_pi), TrigTerm(upper, up, half_pi), TrigTerm(lower, down, half_pi)]
    y = [TrigTerm(first, 1.0), TrigTerm(upper, up), TrigTerm(lower, down)]
    z = [TrigTerm((n * n - 1.0) / (4.0 * n * n), 2.0 * n)]
    return TrigSeries([x, y, z], linear=(0.0, 0.0, (n * n - 1.0) / (2.0 * n)))


def salkowski(m: float, margin: Optional[float] = None, convention: Convention = Convention.INTRINSIC) -> Curve:
    """
    Salkowski curve with shape parameter m on its safe domain.

    The classical parametrisation has unit curvature and torsion -tan(nt)
    under n2' = -r n1. The intrinsic convention is its antipodal image, with
    curvature 1, torsion tan(nt) and arc length sin(nt)/m from t = 0.

    Args:
        m: nonzero shape parameter
        margin: absolute margin kept from the poles at +-pi/(2n)
        convention: intrinsic (default) or classical

    Returns:
        Curve with analytic derivatives of orders 1..3
    """
    p = SalkowskiParams.create(m, margin)
    convention = Convention(convention)
    series = _salkowski_series(p)
    if convention is Convention.INTRINSIC:
        series = series.scaled((-1.0, -1.0, -1.0))
    else:
        logger.info(f"Classical Salkowski parametrisation for m={p.m}: torsion is -tan(nt)")
    return series.curve(p.domain, f"salkowski(m={p.m}, {convention.value})", {"m": p.m, "n": p.n, "margin": p.margin})


def salkowski_frame_closed_form(
    m: float, t, convention: Convention = Convention.CLASSICAL
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Closed-form Frenet vectors (tangent, normal1, normal2) of the Salkowski curve.

    The classical vectors belong to the classical parametrisation; the
    intrinsic curve has frame (-tangent, -normal1, normal2).

    Returns:
        Three arrays of shape (3,) for scalar t, else t.shape + (3,)
    """
    p = SalkowskiParams.create(m)
    n, ratio = p.n, p.n / p.m
    t_arr = np.asarray(t, dtype=float)
    c, s = np.cos(t_arr), np.sin(t_arr)
    cn, sn = np.cos(n * t_arr), np.sin(n * t_arr)
    tangent = -np.stack([c * cn + n * s * sn, cn * s - n * c * sn, ratio * sn], axis=-1)
    normal1 = n * np.stack([s / p.m, -c / p.m, -np.ones_like(t_arr)], axis=-1)
    normal2 = np.stack([n * cn * s - c * sn, -n * c * cn - s * sn, ratio * cn], axis=-1)
    if Convention(convention) is Convention.INTRINSIC:
        return -tangent, -normal1, normal2
    return tangent, normal1, normal2


def anti_salkowski(m: float, margin: Optional[float] = None, convention: Convention = Convention.INTRINSIC) -> Curve:
    """
    Anti-Salkowski curve with shape parameter m.

    The intrinsic convention is the antiderivative of the Salkowski binormal
    times its speed: torsion 1, curvature |tan(nt)|. The classical closed
    form is that curve mirrored in the e1e2-plane and scaled by 1/n, so its
    curvature is |n tan(nt)| and its torsion -n. The frame is undefined at
    t = 0, which is excluded together with a margin-wide neighbourhood.
    """
    p = SalkowskiParams.create(m, margin)
    convention = Convention(convention)
    series = _anti_salkowski_series(p)
    if convention is Convention.INTRINSIC:
        series = series.scaled((p.n, p.n, -p.n))
    else:
        logger.info(f"Classical anti-Salkowski closed form for m={p.m}: curvature |n tan(nt)|, torsion -n")
    return series.curve(
        p.domain,
        f"anti-salkowski(m={p.m}, {convention.value})",
        {"m": p.m, "n": p.n, "margin": p.margin},
        excluded=[(-p.margin, p.margin)],
    )


def binormal_integral(
    c: Curve,
    grid,
    h: Optional[float] = None,
    tol: float = DEFAULT_FRAME_TOL,
    degree: int = 5,
) -> SampledCurve:
    """
    The curve beta(t) = int n2(u) |c'(u)| du over a grid, starting at the origin.

    The integrand is accumulated by cumulative Simpson quadrature and the
    result interpolated with splines; derivatives of beta come from the
    interpolated integrand, so beta is unit-speed in the arc length of c.

    Raises:
        SingularParametrizationError, UndefinedFrameError: frame of c undefined on the grid
    """
    ff = frame_field(c, grid, h, tol)
    _, normal2 = ff.curve_normals()
    integrand = normal2 * ff.speed[:, None]
    positions = cumulative_simpson(integrand, x=ff.grid, axis=0, initial=0.0)
    logger.debug(f"Binormal integral of {c.label or 'curve'} over {len(ff)} samples")
    return SampledCurve(
        ff.grid,
        positions,
        derivative_samples=integrand,
        degree=degree,
        label=f"binormal-integral({c.label})",
        params=c.params,
    )


def line(point=(0.0, 0.0, 0.0), direction=(1.0, 0.0, 0.0), domain: Tuple[float, float] = (-1.0, 1.0)) -> Curve:
    """Straight line t -> point + t * direction."""
    p = np.asarray(point, dtype=float).reshape(3)
    d = np.asarray(direction, dtype=float).reshape(3)
    if not np.all(np.isfinite(p)) or not np.all(np.isfinite(d)) or not np.any(d != 0.0):
        raise ParameterError(f"line needs a finite point and a nonzero direction, got {point}, {direction}")

    def zeros(t):
        return np.zeros((np.atleast_1d(t).size, 3))

    return Curve(
        lambda t: p + np.atleast_1d(t)[:, None] * d,
        domain,
        {1: lambda t: np.tile(d, (np.atleast_1d(t).size, 1)), 2: zeros, 3: zeros},
        "line",
        {},
    )


def circle(radius: float = 1.0, domain: Tuple[float, float] = (0.0, 2.0 * np.pi)) -> Curve:
    """Circle of the given radius in the e1e2-plane, centred at the origin."""
    if not np.isfinite(radius) or radius <= 0.0:
        raise ParameterError(f"circle radius must be positive, got {radius}")
    series = TrigSeries([[TrigTerm(radius, 1.0, np.pi / 2)], [TrigTerm(radius, 1.0)], []])
    return series.curve(domain, f"circle(radius={radius})", {"radius": float(radius)})


def circular_helix(a: float, b: float, domain: Tuple[float, float] = (0.0, 2.0 * np.pi)) -> Curve:
    """Helix t -> (a cos t, a sin t, b t) with k = a/(a^2+b^2) and r = b/(a^2+b^2)."""
    if not (np.isfinite(a) and np.isfinite(b)) or (a == 0.0 and b == 0.0):
        raise ParameterError(f"helix needs (a, b) != (0, 0), got ({a}, {b})")
    series = TrigSeries([[TrigTerm(a, 1.0, np.pi / 2)], [TrigTerm(a, 1.0)], []], linear=(0.0, 0.0, b))
    return series.curve(domain, f"helix(a={a}, b={b})", {"a": float(a), "b": float(b)})
