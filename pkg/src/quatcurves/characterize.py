"""
Numerical certificates for special curves.

Covers slant helices (principal normal at a constant angle with a fixed
axis), the torsion law of unit-curvature slant helices, the duality between
a curve and the integral of its binormal, n2-slant helices, and similarity
of curve pairs under the tangent, normal, binormal and curvature-ratio
criteria.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.interpolate import make_interp_spline
from scipy.linalg import orthogonal_procrustes
from scipy.optimize import minimize_scalar
from scipy.spatial.transform import Rotation

from quatcurves.errors import (
    CriterionInapplicableError,
    CurveError,
    DomainExceededError,
    IncomparableRangeError,
    NotUnitCurvatureError,
    UndefinedFrameError,
)
from quatcurves.families import (
    SalkowskiParams,
    anti_salkowski,
    binormal_integral,
    circle,
    circular_helix,
    line,
    salkowski,
)
from quatcurves.kernel import (
    DEFAULT_FRAME_TOL,
    Curve,
    FrameArrays,
    cumulative_arc_length,
    frame_arrays,
    frame_field,
)
from quatcurves.models import (
    AntiSalkowskiSlantReport,
    CorollaryResult,
    Criterion,
    DualityReport,
    FrameField,
    N2SlantHelixReport,
    SimilarityReport,
    SlantHelixReport,
    SpatialQuaternion,
    TorsionLawReport,
    TransformationSample,
)
from quatcurves.quaternion import vec_norm

DEFAULT_TOL = 1e-4
DUALITY_TOL = 1e-3
AXIS_MATCH_TOL = 1e-3
DEFAULT_GRID_SIZE = 2001
SUITE_GRID_SIZE = 401
MAX_TRANSFORMATION_SAMPLES = 101


def _require_curvature(ff: FrameField, tol: float) -> None:
    low = np.flatnonzero(ff.curvature <= tol)
    if low.size:
        i = int(low[0])
        raise UndefinedFrameError(f"curvature vanishes at grid index {i} (t={ff.grid[i]})", t=float(ff.grid[i]), index=i)


def _fit_torsion_law(s: np.ndarray, r: np.ndarray, tol: float) -> Optional[Tuple[float, int, float]]:
    """
    Least-squares fit of r/sqrt(1+r^2) = branch * b * (s - shift); returns (b, branch, shift).

    None when the fitted slope is at most ``tol``: the torsion is constant
    and the shift is not determined.
    """
    g = r / np.sqrt(1.0 + r * r)
    slope, intercept = np.polyfit(s, g, 1)
    if abs(slope) <= tol:
        return None
    branch = 1 if slope >= 0 else -1
    return float(abs(slope)), branch, float(-intercept / slope)


def _unit_curvature_axis(
    ff: FrameField, b: float, branch: int, shift: float
) -> Tuple[np.ndarray, float, float]:
    """
    Axis of a unit-curvature slant helix from its torsion law.

    d = cos(theta) (s' t + n1 + branch sqrt(tan^2 theta - s'^2) n2) with
    s' = s - shift and tan(theta) = 1/b is constant along such a curve; the
    shift is refined by minimising the spread of d.
    """
    tan_theta = 1.0 / b
    cos_theta = 1.0 / np.sqrt(1.0 + tan_theta**2)
    t_vec, n1, n2 = ff.tangent, ff.normal1, ff.normal2

    def axis_samples(c: float) -> Optional[np.ndarray]:
        sp = ff.s - c
        radicand = tan_theta**2 - sp**2
        if np.any(radicand < 0):
            return None
        return cos_theta * (sp[:, None] * t_vec + n1 + branch * np.sqrt(radicand)[:, None] * n2)

    def spread(c: float) -> float:
        d = axis_samples(c)
        if d is None:
            return np.inf
        return float(np.max(vec_norm(d - d[0])))

    room = tan_theta - np.max(np.abs(ff.s - shift))
    if room > 0:
        result = minimize_scalar(spread, bounds=(shift - 0.5 * room, shift + 0.5 * room), method="bounded", options={"xatol": 1e-12})
        if result.fun <= spread(shift):
            shift = float(result.x)
    d = axis_samples(shift)
    if d is None:
        return np.full(3, np.nan), np.inf, shift
    axis = np.mean(d, axis=0)
    return axis / np.linalg.norm(axis), spread(shift), shift


def slant_helix_check(ff: FrameField, tol: float = DEFAULT_TOL) -> SlantHelixReport:
    """
    Certify that the principal normal makes a constant angle with a fixed axis.

    The axis is the common normal of the n1' directions -k t + r n2 (the
    smallest right singular vector of their stack). With cos(theta) =
    mean <axis, n1> and f = r/k, the axis is rebuilt at every sample as
    d = +-(f x) t + cos(theta) n1 +- x n2 with x = sin(theta)/sqrt(1 + f^2);
    the sign branch with the least drift is kept. Plane curves (r = 0)
    are reported as degenerate with verdict false.

    Args:
        ff: frame field with k > tol everywhere
        tol: verdict tolerance for drift and angle deviation

    Returns:
        SlantHelixReport
    """
    _require_curvature(ff, tol)
    t_vec, n1, n2 = ff.tangent, ff.normal1, ff.normal2
    kappa, r = ff.signed_curvature, ff.torsion

    if np.max(np.abs(r)) <= tol:
        axis = n2[0]
        drift = float(np.max(vec_norm(n2 - axis)))
        logger.info(f"Slant-helix check on {ff.label or 'field'}: plane curve, reported as degenerate")
        return SlantHelixReport(
            axis=SpatialQuaternion.from_array(axis),
            cos_angle=0.0,
            max_angle_deviation=float(np.max(np.abs(n1 @ axis))),
            max_axis_drift=drift,
            verdict=False,
            degenerate="plane-curve",
        )

    rates = -kappa[:, None] * t_vec + r[:, None] * n2
    _, _, vt = np.linalg.svd(rates, full_matrices=False)
    seed = vt[-1]
    cos_angle = float(np.mean(n1 @ seed))
    if cos_angle < 0:
        seed, cos_angle = -seed, -cos_angle
    cos_angle = min(cos_angle, 1.0)
    sin_angle = np.sqrt(1.0 - cos_angle**2)

    f = r / kappa
    x = sin_angle / np.sqrt(1.0 + f * f)
    best: Optional[Tuple[float, int, np.ndarray]] = None
    for branch in (1, -1):
        d = branch * (f * x)[:, None] * t_vec + cos_angle * n1 + branch * x[:, None] * n2
        drift = float(np.max(vec_norm(d - d[0])))
        if best is None or drift < best[0]:
            best = (drift, branch, d)
    drift, branch, d = best

    axis = d[0] / np.linalg.norm(d[0])
    deviation = float(np.max(np.abs(n1 @ axis - cos_angle)))
    rate = float(np.max(vec_norm(np.gradient(d, ff.s, axis=0, edge_order=2))))
    verdict = drift < tol and deviation < tol

    report = SlantHelixReport(
        axis=SpatialQuaternion.from_array(axis),
        cos_angle=cos_angle,
        max_angle_deviation=deviation,
        max_axis_drift=drift,
        max_axis_rate=rate,
        branch=branch,
        verdict=verdict,
    )

    fit = _fit_torsion_law(ff.s, r, tol) if np.max(np.abs(ff.curvature - 1.0)) <= tol else None
    if fit is not None:
        b, law_branch, shift = fit
        unit_axis, unit_drift, unit_shift = _unit_curvature_axis(ff, b, law_branch, shift)
        if np.isfinite(unit_drift):
            report = report.model_copy(
                update={
                    "unit_curvature_axis": SpatialQuaternion.from_array(unit_axis),
                    "unit_curvature_axis_drift": unit_drift,
                    "unit_curvature_shift": unit_shift,
                }
            )

    logger.info(
        f"Slant-helix check on {ff.label or 'field'}: cos={cos_angle:.6f}, drift={drift:.2e}, "
        f"deviation={deviation:.2e}, branch={branch:+d}, verdict={verdict}"
    )
    return report


def salkowski_torsion_law(ff: FrameField, tol: float = DEFAULT_TOL) -> TorsionLawReport:
    """
    Fit the torsion law r(s) = +-b s'/sqrt(1 - b^2 s'^2) of a unit-curvature field.

    With g = r/sqrt(1 + r^2) the law reads g = +-b (s - shift), so b, the
    sign branch and the shift come from a linear least-squares fit of g on
    s. The median of |g|/|s - shift| over the samples is reported as
    ``b_median``. theta = arccot(b).

    Fields with constant torsion (a unit-curvature circular helix) have no
    law with b > 0; they are reported as degenerate with b = 0 and
    theta = pi/2, and pass only when the torsion itself is within ``tol``.

    Raises:
        NotUnitCurvatureError: max |k - 1| > tol
        DomainExceededError: |b (s - shift)| >= 1 at some sample
    """
    deviation = float(np.max(np.abs(ff.curvature - 1.0)))
    if deviation > tol:
        raise NotUnitCurvatureError(f"torsion law needs k = 1, but max |k - 1| = {deviation:.3e} exceeds {tol}")

    r, s = ff.torsion, ff.s
    if np.max(np.abs(r)) <= tol:
        return TorsionLawReport(
            theta=float(np.pi / 2),
            b=0.0,
            b_median=0.0,
            branch=0,
            max_residual=float(np.max(np.abs(r))),
            verdict=True,
            degenerate="plane-curve",
        )

    fit = _fit_torsion_law(s, r, tol)
    if fit is None:
        # b = 0 predicts r = 0, so the residual is the torsion itself
        residual = float(np.max(np.abs(r)))
        logger.warning(f"Torsion law fit on {ff.label or 'field'}: constant torsion, no law with b > 0")
        return TorsionLawReport(
            theta=float(np.pi / 2),
            b=0.0,
            b_median=0.0,
            branch=1 if np.mean(r) >= 0 else -1,
            max_residual=residual,
            verdict=residual < tol,
            degenerate="constant-torsion",
        )

    b, branch, shift = fit
    shifted = s - shift
    if np.any(np.abs(b * shifted) >= 1.0):
        raise DomainExceededError(f"fitted law leaves its domain: max |b s| = {np.max(np.abs(b * shifted)):.6f} >= 1")

    model = branch * b * shifted / np.sqrt(1.0 - (b * shifted) ** 2)
    residual = float(np.max(np.abs(r - model)))
    g = r / np.sqrt(1.0 + r * r)
    usable = np.abs(shifted) > tol
    b_median = float(np.median(np.abs(g[usable] / shifted[usable]))) if np.any(usable) else None
    theta = float(np.arctan2(1.0, b))
    verdict = residual < tol

    logger.info(f"Torsion law fit: b={b:.8f}, branch={branch:+d}, shift={shift:.3e}, residual={residual:.2e}")
    return TorsionLawReport(
        theta=theta,
        b=b,
        b_median=b_median,
        shift=shift,
        branch=branch,
        max_residual=residual,
        verdict=verdict,
    )


def anti_salkowski_duality_check(
    c: Curve,
    grid=None,
    tol: float = DUALITY_TOL,
    h: Optional[float] = None,
) -> DualityReport:
    """
    Compare a curve with the integral beta of its binormal.

    Relations checked: k_beta = |r|, r_beta = k, t_beta = n2,
    n1_beta = sigma n1 and n2_beta = -sigma t, where sigma = -sign(r)
    because k_beta is non-negative. Samples with |r| <= tol have
    k_beta ~ 0 and are left out of the frame relations.

    Args:
        c: curve with a defined frame on the grid
        grid: parameter grid, default the curve's regular grid
        tol: verdict tolerance and the |r| cut-off
        h: finite-difference step for c

    Returns:
        DualityReport with the sup residual of every relation
    """
    grid = c.default_grid(DEFAULT_GRID_SIZE, regular=True) if grid is None else np.asarray(grid, dtype=float)
    ff = frame_field(c, grid, h)
    beta = binormal_integral(c, ff.grid, h)
    dual = frame_arrays(beta, ff.grid)
    normal1, normal2 = ff.curve_normals()

    frames = np.abs(ff.torsion) > tol
    idx = np.flatnonzero(frames)
    residuals = {
        "curvature": float(np.max(np.abs(dual.curvature - np.abs(ff.torsion)))),
        "tangent": float(np.max(vec_norm(dual.tangent - normal2))),
        "torsion": None,
        "normal1": None,
        "normal2": None,
    }
    literal_fraction = None
    if idx.size:
        sigma = -np.sign(ff.torsion[idx])[:, None]
        residuals["torsion"] = float(np.max(np.abs(dual.torsion[idx] - ff.curvature[idx])))
        residuals["normal1"] = float(np.max(vec_norm(dual.normal1[idx] - sigma * normal1[idx])))
        residuals["normal2"] = float(np.max(vec_norm(dual.normal2[idx] + sigma * ff.tangent[idx])))
        literal_fraction = float(np.mean(sigma > 0))

    s_beta = cumulative_arc_length(beta, ff.grid)
    mismatch = float(np.max(np.abs((s_beta - s_beta[0]) - (ff.s - ff.s[0]))))
    verdict = all(value < tol for value in residuals.values() if value is not None)

    logger.info(f"Duality check on {c.label or 'curve'}: {residuals}, verdict={verdict}")
    return DualityReport(
        residuals=residuals,
        samples=len(ff),
        frame_samples=int(idx.size),
        skipped=int(len(ff) - idx.size),
        literal_fraction=literal_fraction,
        max_arclength_mismatch=mismatch,
        verdict=verdict,
    )


def slant_helix_of_anti_salkowski(
    m: float,
    grid=None,
    tol: float = DEFAULT_TOL,
    margin: Optional[float] = None,
    grid_size: int = DEFAULT_GRID_SIZE,
) -> AntiSalkowskiSlantReport:
    """
    Certify the anti-Salkowski curve as a slant helix sharing the Salkowski axis.

    The anti-Salkowski field is taken on the positive half of the safe
    domain (its curvature vanishes at t = 0); the Salkowski reference on
    its full safe domain. Axes are compared up to sign.
    """
    p = SalkowskiParams.create(m, margin)
    beta = anti_salkowski(p.m, p.margin)
    grid = p.positive_grid(grid_size) if grid is None else np.asarray(grid, dtype=float)
    helix = slant_helix_check(frame_field(beta, grid), tol)
    reference = slant_helix_check(frame_field(salkowski(p.m, p.margin), p.grid(grid_size)), tol)

    a, b = helix.axis.as_array(), reference.axis.as_array()
    mismatch = float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))
    verdict = helix.verdict and reference.verdict and mismatch < AXIS_MATCH_TOL
    logger.info(f"Anti-Salkowski slant helix for m={p.m}: axis mismatch {mismatch:.2e}, verdict={verdict}")
    return AntiSalkowskiSlantReport(m=p.m, helix=helix, reference=reference, axis_mismatch=mismatch, verdict=verdict)


def n2_slant_helix_check(ff: FrameField, tol: float = DEFAULT_TOL) -> N2SlantHelixReport:
    """Constancy of f = r/k; verdict true iff sup |f - mean f| < tol."""
    _require_curvature(ff, tol)
    f = ff.torsion / ff.curvature
    mean = float(np.mean(f))
    deviation = float(np.max(np.abs(f - mean)))
    return N2SlantHelixReport(
        tan_theta=mean,
        theta=float(np.arctan(mean)),
        max_deviation=deviation,
        verdict=deviation < tol,
    )


def best_fit_rotation(source: np.ndarray, target: np.ndarray, allow_reflection: bool = False) -> np.ndarray:
    """
    Orthogonal R minimising |source @ R - target| over row vectors.

    Proper rotations only unless ``allow_reflection``.
    """
    if allow_reflection:
        rotation, _ = orthogonal_procrustes(source, target)
        return rotation
    u, _, vt = np.linalg.svd(source.T @ target)
    d = np.sign(np.linalg.det(u @ vt))
    return u @ np.diag([1.0, 1.0, d]) @ vt


def _classify(arrays: FrameArrays, tol: float) -> str:
    if np.max(arrays.curvature) <= tol:
        return "line"
    if np.max(np.abs(arrays.torsion)) <= tol:
        return "plane-curve"
    return "regular"


def _thin(samples: List[TransformationSample]) -> List[TransformationSample]:
    if len(samples) <= MAX_TRANSFORMATION_SAMPLES:
        return samples
    keep = np.unique(np.linspace(0, len(samples) - 1, MAX_TRANSFORMATION_SAMPLES).round().astype(int))
    return [samples[i] for i in keep]


def _line_report(criterion: Criterion, a: Curve, b: Curve, grids, arrays, tol: float, h) -> SimilarityReport:
    grid_a, grid_b = grids
    s_a = cumulative_arc_length(a, grid_a, h)
    s_b = cumulative_arc_length(b, grid_b, h)
    stretch = (s_a[-1] - s_a[0]) / (s_b[-1] - s_b[0])
    discrepancy = float(max(np.max(arrays[0].curvature), np.max(arrays[1].curvature)))
    samples = [TransformationSample(s_beta=float(s - s_b[0]), lam=float(stretch)) for s in s_b]
    return SimilarityReport(
        criterion=criterion,
        transformation_samples=_thin(samples),
        max_discrepancy=discrepancy,
        verdict=discrepancy < tol,
        matched_samples=len(samples),
        degenerate="lines",
    )


def _plane_report(criterion: Criterion, a: Curve, b: Curve, grids, arrays, tol: float, h) -> SimilarityReport:
    ff_a = frame_field(a, grids[0], h)
    ff_b = frame_field(b, grids[1], h)
    phi_a, phi_b = ff_a.total_curvature_profile(), ff_b.total_curvature_profile()
    top = min(phi_a[-1], phi_b[-1])
    nodes = phi_b[phi_b <= top]
    k_a = np.interp(nodes, phi_a, ff_a.curvature)
    samples = [
        TransformationSample(s_beta=float(s - ff_b.s[0]), lam=float(kb / ka))
        for s, kb, ka in zip(ff_b.s[: nodes.size], ff_b.curvature[: nodes.size], k_a)
    ]
    discrepancy = float(max(np.max(np.abs(arrays[0].torsion)), np.max(np.abs(arrays[1].torsion))))
    return SimilarityReport(
        criterion=criterion,
        transformation_samples=_thin(samples),
        max_discrepancy=discrepancy,
        verdict=discrepancy < tol,
        matched_samples=len(samples),
        degenerate="plane-curves",
    )


def _interpolant(x: np.ndarray, y: np.ndarray):
    return make_interp_spline(x, y, k=min(3, x.size - 1), axis=0)


def similar_check(
    a: Curve,
    b: Curve,
    criterion: Criterion = Criterion.RATIO,
    grids: Optional[Sequence] = None,
    tol: float = DEFAULT_TOL,
    up_to_antipodal: bool = False,
    h: Optional[float] = None,
    frame_tol: float = DEFAULT_FRAME_TOL,
) -> SimilarityReport:
    """
    Decide whether two curves are similar under one criterion.

    Samples are matched by equal total curvature phi = int k ds (by equal
    total torsion int |r| ds for the binormal criterion), both measured from
    the grid starts, over the common range. The ratio criterion compares
    f = r/k at matched samples. The frame criteria compare tangents,
    principal normals or binormals after one best-fit rotation fitted on
    the matched tangents. Two lines, or two plane curves, are similar by
    definition and bypass the frame machinery.

    Args:
        a, b: curves to compare
        criterion: tangent, normal, binormal or ratio
        grids: (grid_a, grid_b); default the regular grids of the curves
        tol: verdict tolerance on the discrepancy
        up_to_antipodal: also accept the antipodal image (f -> -f, improper rotations)
        h: finite-difference step

    Raises:
        CriterionInapplicableError: mixed degenerate and regular inputs, or
            a binormal criterion on torsion that vanishes or changes sign
        IncomparableRangeError: no common matching range
    """
    criterion = Criterion(criterion)
    if grids is None:
        grids = (a.default_grid(DEFAULT_GRID_SIZE, regular=True), b.default_grid(DEFAULT_GRID_SIZE, regular=True))
    grid_a, grid_b = (np.asarray(g, dtype=float) for g in grids)

    arrays = (frame_arrays(a, grid_a, h), frame_arrays(b, grid_b, h))
    kinds = (_classify(arrays[0], tol), _classify(arrays[1], tol))
    if kinds[0] != kinds[1]:
        raise CriterionInapplicableError(f"cannot compare a {kinds[0]} with a {kinds[1]}")
    if kinds[0] == "line":
        return _line_report(criterion, a, b, (grid_a, grid_b), arrays, tol, h)
    if kinds[0] == "plane-curve":
        return _plane_report(criterion, a, b, (grid_a, grid_b), arrays, tol, h)

    ff_a = frame_field(a, grid_a, h, frame_tol)
    ff_b = frame_field(b, grid_b, h, frame_tol)

    if criterion is Criterion.BINORMAL:
        for ff in (ff_a, ff_b):
            if np.min(np.abs(ff.torsion)) <= tol or np.ptp(np.sign(ff.torsion)) > 0:
                raise CriterionInapplicableError(
                    f"binormal criterion needs torsion of one sign without zeros on {ff.label or 'curve'}"
                )
        # single-signed torsion, so |int r ds| = int |r| ds
        density_a, density_b = np.abs(ff_a.torsion), np.abs(ff_b.torsion)
        match_a, match_b = np.abs(ff_a.total_torsion_profile()), np.abs(ff_b.total_torsion_profile())
    else:
        density_a, density_b = ff_a.curvature, ff_b.curvature
        match_a, match_b = ff_a.total_curvature_profile(), ff_b.total_curvature_profile()

    top = min(match_a[-1], match_b[-1])
    selected = np.flatnonzero(match_a <= top)
    if top <= 0 or selected.size < 2:
        raise IncomparableRangeError(f"{a.label or 'curve a'} and {b.label or 'curve b'} share no matching range")
    nodes = match_a[selected]

    s_b = _interpolant(match_b, ff_b.s)(nodes)
    density_b_at = _interpolant(match_b, density_b)(nodes)
    lam = density_b_at / density_a[selected]
    samples = [TransformationSample(s_beta=float(s - ff_b.s[0]), lam=float(value)) for s, value in zip(s_b, lam)]

    branch = 1
    rotation = None
    if criterion is Criterion.RATIO:
        f_a = ff_a.ratio[selected]
        f_b = _interpolant(match_b, ff_b.ratio)(nodes)
        discrepancy = float(np.max(np.abs(f_a - f_b)))
        if up_to_antipodal:
            flipped = float(np.max(np.abs(f_a + f_b)))
            if flipped < discrepancy:
                discrepancy, branch = flipped, -1
    else:
        normal1_a, normal2_a = ff_a.curve_normals()
        normal1_b, normal2_b = ff_b.curve_normals()

        def unit(values: np.ndarray) -> np.ndarray:
            return values / vec_norm(values)[:, None]

        tangent_b = unit(_interpolant(match_b, ff_b.tangent)(nodes))
        rot = best_fit_rotation(tangent_b, ff_a.tangent[selected], allow_reflection=up_to_antipodal)
        det = float(np.sign(np.linalg.det(rot)))
        branch = int(det)
        rotation = rot.tolist()
        if criterion is Criterion.TANGENT:
            mapped, target = tangent_b @ rot, ff_a.tangent[selected]
        elif criterion is Criterion.NORMAL:
            mapped, target = unit(_interpolant(match_b, normal1_b)(nodes)) @ rot, normal1_a[selected]
        else:
            mapped, target = det * unit(_interpolant(match_b, normal2_b)(nodes)) @ rot, normal2_a[selected]
        discrepancy = float(np.max(vec_norm(mapped - target)))

    verdict = discrepancy < tol
    logger.info(
        f"Similarity ({criterion.value}) of {a.label or 'a'} and {b.label or 'b'}: "
        f"discrepancy={discrepancy:.3e}, branch={branch:+d}, verdict={verdict}"
    )
    return SimilarityReport(
        criterion=criterion,
        transformation_samples=_thin(samples),
        max_discrepancy=discrepancy,
        verdict=verdict,
        branch=branch,
        matched_samples=int(selected.size),
        rotation=rotation,
    )


SUITE_ROTATION = Rotation.from_rotvec([0.3, -0.5, 0.8]).as_matrix()
SUITE_TRANSLATION = (1.0, -2.0, 0.5)


def _suite_pairs(grid_size: int):
    """(name, pair description, a, b, up_to_antipodal, grids) for every family."""
    p = SalkowskiParams.create(1.0)
    salk = salkowski(1.0)
    anti = anti_salkowski(1.0)
    full, positive = p.grid(grid_size), p.positive_grid(grid_size)
    helix_grid = np.linspace(0.0, 2.0 * np.pi, grid_size)
    line_grid = np.linspace(-1.0, 1.0, grid_size)
    return [
        ("lines", "two straight lines", line(), line((1.0, 2.0, 3.0), (0.0, 1.0, 1.0)), False, (line_grid, line_grid)),
        ("plane-curves", "circle(1) and circle(2)", circle(1.0), circle(2.0), False, (helix_grid, helix_grid)),
        ("n2-slant-helices", "helix(1,1) and helix(2,2)", circular_helix(1.0, 1.0), circular_helix(2.0, 2.0), False, (helix_grid, helix_grid)),
        ("salkowski-rigid", "salkowski(1) and a rigid copy", salk, salk.transformed(SUITE_ROTATION, SUITE_TRANSLATION), False, (full, full)),
        ("salkowski-antipodal", "salkowski(1) and its antipodal image", salk, salk.antipodal().transformed(SUITE_ROTATION, SUITE_TRANSLATION), True, (full, full)),
        ("anti-salkowski-rigid", "anti-salkowski(1) and a rigid copy", anti, anti.transformed(SUITE_ROTATION, SUITE_TRANSLATION), False, (positive, positive)),
    ]


def corollary_suite(tol: float = DEFAULT_TOL, grid_size: int = SUITE_GRID_SIZE) -> List[CorollaryResult]:
    """
    Run the ratio criterion over one fixture pair per similar-curve family.

    Never raises: an error in a row is recorded as a failed row.
    """
    results: List[CorollaryResult] = []
    for name, pair, a, b, antipodal, grids in _suite_pairs(grid_size):
        try:
            report = similar_check(a, b, Criterion.RATIO, grids=grids, tol=tol, up_to_antipodal=antipodal)
            results.append(
                CorollaryResult(
                    name=name,
                    pair=pair,
                    criterion=Criterion.RATIO,
                    verdict=report.verdict,
                    max_discrepancy=report.max_discrepancy,
                    passed=report.verdict,
                    detail=f"branch {report.branch:+d}" + (f", {report.degenerate}" if report.degenerate else ""),
                )
            )
        except CurveError as e:
            logger.warning(f"Corollary row {name} failed: {e.message}")
            results.append(CorollaryResult(name=name, pair=pair, criterion=Criterion.RATIO, passed=False, detail=e.message))
        except Exception as e:
            logger.exception(f"Corollary row {name} crashed")
            results.append(CorollaryResult(name=name, pair=pair, criterion=Criterion.RATIO, passed=False, detail=str(e)))
    return results
