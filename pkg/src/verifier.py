"""
Curve verifier.

Runs named numerical checks of the curve families and their
characterisations and turns the measured quantities into a
VerificationReport:
1. Resolves the check and validates its parameters
2. Builds the curves and frame fields the check needs
3. Records every measured quantity against its tolerance
4. Returns the report with the overall verdict and wall time
"""

import time
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from loguru import logger

from quatcurves.characterize import (
    anti_salkowski_duality_check,
    corollary_suite,
    n2_slant_helix_check,
    salkowski_torsion_law,
    similar_check,
    slant_helix_check,
    slant_helix_of_anti_salkowski,
)
from quatcurves.config import DEFAULT_CONFIG, ToolkitConfig
from quatcurves.errors import CurveError, ParameterError
from quatcurves.families import (
    Convention,
    SalkowskiParams,
    anti_salkowski,
    binormal_integral,
    circular_helix,
    salkowski,
    salkowski_frame_closed_form,
)
from quatcurves.kernel import frame_field, ode35_residual
from quatcurves.models import AssertionRecord, Criterion, Quaternion, VerificationReport
from quatcurves.quaternion import conj, inverse, mul, qmul_array, vec_norm

SALKOWSKI_SHAPES = [0.5, 1.0, 2.0]

# Global sign patterns of (tangent, normal1, normal2) that keep a frame right-handed.
FRAME_SIGN_PATTERNS = [(1, 1, 1), (1, -1, -1), (-1, -1, 1), (-1, 1, -1)]


def at_most(name: str, measured: float, tolerance: float) -> AssertionRecord:
    """Assertion that a measured error stays strictly below its tolerance."""
    measured = float(measured)
    return AssertionRecord(name=name, measured=measured, tolerance=tolerance, passed=bool(measured < tolerance))


def at_least(name: str, measured: float, bound: float) -> AssertionRecord:
    """Assertion that a measured separation or rate reaches a lower bound."""
    measured = float(measured)
    return AssertionRecord(name=name, measured=measured, tolerance=bound, passed=bool(measured >= bound))


class CurveVerifier:
    """
    Runs the named verification checks.

    Every check takes a parameter mapping (validated against ``ALLOWED_PARAMS``)
    and returns the list of assertions it measured.
    """

    ALLOWED_PARAMS = {
        "salkowski-intrinsics": {"m", "grid_size"},
        "closed-form-frame": {"m", "grid_size"},
        "slant-helix": {"m", "grid_size"},
        "torsion-law": {"m", "grid_size"},
        "duality": {"m", "grid_size"},
        "ode35": {"m", "grid_size"},
        "corollaries": {"grid_size"},
        "anti-salkowski": {"m", "grid_size"},
        "n2-slant-helix": {"grid_size"},
        "classical-forms": {"m", "grid_size"},
        "quaternion-algebra": {"samples", "seed"},
    }

    def __init__(self, config: ToolkitConfig = DEFAULT_CONFIG):
        """
        Initialize the verifier.

        Args:
            config: numerical defaults (grid size, tolerance, margin)
        """
        self.config = config
        self.checks: Dict[str, Callable[[Dict[str, Any]], List[AssertionRecord]]] = {
            "salkowski-intrinsics": self._salkowski_intrinsics,
            "closed-form-frame": self._closed_form_frame,
            "slant-helix": self._slant_helix,
            "torsion-law": self._torsion_law,
            "duality": self._duality,
            "ode35": self._ode35,
            "corollaries": self._corollaries,
            "anti-salkowski": self._anti_salkowski,
            "n2-slant-helix": self._n2_slant_helix,
            "classical-forms": self._classical_forms,
            "quaternion-algebra": self._quaternion_algebra,
        }

    @property
    def names(self) -> List[str]:
        return list(self.checks)

    def validate_request(self, check: str, params: Dict[str, Any]) -> tuple[bool, str]:
        """Validate the check name and its parameters."""
        if check not in self.checks:
            return False, f"Unknown check: {check}. Must be one of: {self.names}"

        unknown = set(params) - self.ALLOWED_PARAMS[check]
        if unknown:
            return False, f"Unsupported parameters for {check}: {sorted(unknown)}"

        for m in params.get("m", []):
            if not np.isfinite(m) or m == 0:
                return False, f"Invalid shape parameter m={m}: must be finite and nonzero"

        for key in ("grid_size", "samples"):
            if key in params and int(params[key]) < 2:
                return False, f"Invalid {key}: {params[key]}. Must be at least 2"

        return True, "ok"

    def run(self, check: str, params: Optional[Dict[str, Any]] = None) -> VerificationReport:
        """
        Run one named check.

        Args:
            check: check name, see ``names``
            params: optional parameters; ``m`` is a list of shape parameters

        Returns:
            VerificationReport; domain errors are recorded in ``error`` with pass false

        Raises:
            ParameterError: unknown check or invalid parameters
        """
        params = dict(params or {})
        if "m" in params and not isinstance(params["m"], (list, tuple)):
            params["m"] = [params["m"]]
        ok, msg = self.validate_request(check, params)
        if not ok:
            raise ParameterError(msg)

        logger.info(f"Starting verification check {check}: {params}")
        start_time = time.time()
        try:
            assertions = self.checks[check](params)
            error = None
        except CurveError as e:
            logger.error(f"Check {check} failed: {e.message}")
            assertions, error = [], e.message

        passed = bool(assertions) and all(a.passed for a in assertions) and error is None
        report = VerificationReport(
            check=check,
            params=params,
            assertions=assertions,
            passed=passed,
            seconds=time.time() - start_time,
            error=error,
        )
        status = "PASS" if passed else "FAIL"
        logger.info(f"Check {check} {status} in {report.seconds:.2f}s ({len(assertions)} assertions)")
        return report

    def _shapes(self, params: Dict[str, Any]) -> List[float]:
        return [float(m) for m in params.get("m", SALKOWSKI_SHAPES)]

    def _grid_size(self, params: Dict[str, Any]) -> int:
        return int(params.get("grid_size", self.config.grid_size))

    def _salkowski_params(self, m: float) -> SalkowskiParams:
        return SalkowskiParams.from_fraction(m, self.config.margin)

    def _salkowski_intrinsics(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        assertions = []
        for m in self._shapes(params):
            p = self._salkowski_params(m)
            grid = p.grid(self._grid_size(params))
            ff = frame_field(salkowski(m, p.margin), grid)
            expected_s = p.arc_length(grid) - p.arc_length(grid[0])
            assertions += [
                at_most(f"m={m}: max |k - 1|", np.max(np.abs(ff.curvature - 1.0)), 1e-5),
                at_most(f"m={m}: max |r - tan(nt)|", np.max(np.abs(ff.torsion - p.torsion(grid))), self.config.tol),
                at_most(f"m={m}: max |s - sin(nt)/m|", np.max(np.abs(ff.s - expected_s)), 1e-8),
            ]
        return assertions

    def _closed_form_frame(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        assertions = []
        samples = int(params.get("grid_size", 101))
        for m in self._shapes(params):
            p = self._salkowski_params(m)
            grid = p.grid(samples)
            ff = frame_field(salkowski(m, p.margin, Convention.CLASSICAL), grid)
            normal1, normal2 = ff.curve_normals()
            closed = salkowski_frame_closed_form(m, grid, Convention.CLASSICAL)
            best_pattern, best_residual = None, np.inf
            for pattern in FRAME_SIGN_PATTERNS:
                residual = max(
                    float(np.max(vec_norm(sign * numeric - exact)))
                    for sign, numeric, exact in zip(pattern, (ff.tangent, normal1, normal2), closed)
                )
                if residual < best_residual:
                    best_pattern, best_residual = pattern, residual
            label = ",".join("+" if sign > 0 else "-" for sign in best_pattern)
            logger.info(f"Closed-form frame for m={m} matches with sign pattern ({label})")
            assertions.append(at_most(f"m={m}: frame residual, signs ({label})", best_residual, 1e-6))
        return assertions

    def _slant_helix(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        assertions = []
        for m in self._shapes(params):
            p = self._salkowski_params(m)
            ff = frame_field(salkowski(m, p.margin), p.grid(self._grid_size(params)))
            report = slant_helix_check(ff, self.config.tol)
            assertions += [
                at_most(f"m={m}: axis drift", report.max_axis_drift, 1e-4),
                at_most(f"m={m}: angle deviation", report.max_angle_deviation, 1e-5),
                at_most(f"m={m}: | |cos| - |n| |", abs(abs(report.cos_angle) - abs(p.n)), 1e-4),
                at_most(f"m={m}: axis rate |d'|", report.max_axis_rate, 1e-3),
            ]
            if m == 1.0:
                axis = report.axis.as_array()
                target = np.array([0.0, 0.0, -1.0])
                distance = min(np.linalg.norm(axis - target), np.linalg.norm(axis + target))
                assertions.append(at_most("m=1: axis distance to (0,0,-1) up to sign", distance, 1e-4))
        return assertions

    def _torsion_law(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        assertions = []
        for m in self._shapes(params):
            p = self._salkowski_params(m)
            ff = frame_field(salkowski(m, p.margin), p.grid(self._grid_size(params)))
            report = salkowski_torsion_law(ff, self.config.tol)
            assertions += [
                at_most(f"m={m}: |b - |m||", abs(report.b - abs(m)), 1e-4),
                at_most(f"m={m}: torsion law residual", report.max_residual, 1e-3),
            ]
        return assertions

    def _duality(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        assertions = []
        for m in self._shapes(params):
            p = self._salkowski_params(m)
            curve = salkowski(m, p.margin)
            report = anti_salkowski_duality_check(curve, p.grid(self._grid_size(params)), tol=1e-3)
            for relation, residual in report.residuals.items():
                if residual is not None:
                    assertions.append(at_most(f"m={m}: {relation} relation", residual, 1e-3))
            coarse = anti_salkowski_duality_check(curve, p.grid(101), tol=1e-3)
            fine = anti_salkowski_duality_check(curve, p.grid(201), tol=1e-3)
            ratio = _worst(coarse.residuals) / max(_worst(fine.residuals), np.finfo(float).tiny)
            assertions.append(at_least(f"m={m}: residual reduction 101 -> 201 points", ratio, 3.0))
        return assertions

    def _ode35(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        assertions = []
        grid_size = int(params.get("grid_size", 4001))
        for m in params.get("m", [1.0]):
            p = self._salkowski_params(m)
            curve = salkowski(m, p.margin)
            # f = tan(nt) vanishes at t = 0, so the residual is taken on a positive sub-range
            lo, hi = sorted((0.2 * p.half_width * np.sign(m), 0.7 * p.half_width * np.sign(m)))

            def residual(n: int) -> float:
                return ode35_residual(frame_field(curve, np.linspace(lo, hi, n)), self.config.tol)

            assertions.append(at_most(f"m={m}: tangent ODE residual ({grid_size} points)", residual(grid_size), 1e-3))
            assertions.append(at_least(f"m={m}: residual reduction 201 -> 401 points", residual(201) / residual(401), 3.0))
        helix = circular_helix(1.0, 1.0)
        helix_field = frame_field(helix, helix.default_grid(2001))
        assertions.append(at_most("helix(1,1): tangent ODE residual", ode35_residual(helix_field, self.config.tol), 1e-4))
        return assertions

    def _corollaries(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        grid_size = int(params.get("grid_size", 401))
        assertions = []
        for row in corollary_suite(self.config.tol, grid_size):
            measured = row.max_discrepancy if row.max_discrepancy is not None else float("inf")
            assertions.append(
                AssertionRecord(name=f"{row.name}: {row.pair}", measured=measured, tolerance=self.config.tol, passed=row.passed)
            )

        p = self._salkowski_params(1.0)
        report = similar_check(
            salkowski(1.0, p.margin),
            anti_salkowski(1.0, p.margin),
            Criterion.RATIO,
            grids=(p.grid(grid_size), p.positive_grid(grid_size)),
            tol=self.config.tol,
        )
        assertions.append(at_least("salkowski(1) vs anti-salkowski(1): ratio discrepancy", report.max_discrepancy, 0.1))
        return assertions

    def _anti_salkowski(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        assertions = []
        for m in self._shapes(params):
            p = self._salkowski_params(m)
            grid = p.positive_grid(self._grid_size(params))
            ff = frame_field(anti_salkowski(m, p.margin), grid)
            report = slant_helix_of_anti_salkowski(m, grid, self.config.tol, p.margin)
            assertions += [
                at_most(f"m={m}: max |r - 1|", np.max(np.abs(ff.torsion - 1.0)), 1e-4),
                at_most(f"m={m}: max |k - |tan(nt)||", np.max(np.abs(ff.curvature - np.abs(p.torsion(grid)))), 1e-4),
                at_most(f"m={m}: axis drift", report.helix.max_axis_drift, 1e-4),
                at_most(f"m={m}: axis mismatch with salkowski", report.axis_mismatch, 1e-3),
            ]
        return assertions

    def _n2_slant_helix(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        grid_size = self._grid_size(params)
        helix = circular_helix(1.0, 1.0)
        helix_report = n2_slant_helix_check(frame_field(helix, helix.default_grid(grid_size)), self.config.tol)
        p = self._salkowski_params(1.0)
        salkowski_report = n2_slant_helix_check(frame_field(salkowski(1.0, p.margin), p.grid(grid_size)), self.config.tol)
        return [
            at_most("helix(1,1): deviation of r/k", helix_report.max_deviation, self.config.tol),
            at_most("helix(1,1): |tan(theta) - 1|", abs(helix_report.tan_theta - 1.0), self.config.tol),
            at_least("salkowski(1): deviation of r/k", salkowski_report.max_deviation, 0.1),
        ]

    def _classical_forms(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        assertions = []
        for m in self._shapes(params):
            p = self._salkowski_params(m)
            full = p.grid(self._grid_size(params))
            positive = p.positive_grid(self._grid_size(params))

            classical = frame_field(salkowski(m, p.margin, Convention.CLASSICAL), full)
            assertions.append(at_most(f"m={m}: classical salkowski r + tan(nt)", np.max(np.abs(classical.torsion + p.torsion(full))), self.config.tol))

            anti = frame_field(anti_salkowski(m, p.margin, Convention.CLASSICAL), positive)
            scaled_k = np.abs(p.n * p.torsion(positive))
            assertions += [
                at_most(f"m={m}: classical anti-salkowski k - |n tan(nt)|", np.max(np.abs(anti.curvature - scaled_k)), self.config.tol),
                at_most(f"m={m}: classical anti-salkowski r + n", np.max(np.abs(anti.torsion + p.n)), self.config.tol),
            ]

            integral = binormal_integral(salkowski(m, p.margin), positive)
            intrinsic = anti_salkowski(m, p.margin)
            offset = intrinsic(positive) - intrinsic(positive[0])
            gap = np.max(vec_norm(integral(positive) - offset))
            assertions.append(at_most(f"m={m}: intrinsic anti-salkowski vs binormal integral", gap, self.config.tol))
            logger.warning(
                f"Classical closed forms for m={m}: salkowski torsion is -tan(nt); "
                f"anti-salkowski is scaled by 1/n={1.0 / p.n:.6f} and mirrored in z"
            )
        return assertions

    def _quaternion_algebra(self, params: Dict[str, Any]) -> List[AssertionRecord]:
        samples = int(params.get("samples", 10000))
        rng = np.random.default_rng(int(params.get("seed", 0)))
        q, p, w = (rng.normal(size=(samples, 4)) for _ in range(3))

        associativity = np.max(np.abs(qmul_array(qmul_array(q, p), w) - qmul_array(q, qmul_array(p, w))))
        norms = np.linalg.norm
        multiplicativity = np.max(np.abs(norms(qmul_array(q, p), axis=-1) - norms(q, axis=-1) * norms(p, axis=-1)))
        identity = np.array([0.0, 0.0, 0.0, 1.0])

        # model-level algebra on a prefix, cross-checked against the vectorised product
        count = min(samples, 200)
        models = [Quaternion.from_array(a) for a in q[:count]]
        inverses = np.array([inverse(qm).as_array() for qm in models])
        inverse_law = max(
            np.max(np.abs(qmul_array(q[:count], inverses) - identity)),
            np.max(np.abs(qmul_array(inverses, q[:count]) - identity)),
        )
        # q conj(q) = |q|^2 e4
        conjugates = np.array([conj(qm).as_array() for qm in models])
        squared = np.sum(q[:count] ** 2, axis=-1, keepdims=True) * identity
        conjugate_law = np.max(np.abs(qmul_array(q[:count], conjugates) - squared))
        products = np.array([mul(a, Quaternion.from_array(b)).as_array() for a, b in zip(models, p[:count])])
        agreement = np.max(np.abs(products - qmul_array(q[:count], p[:count])))

        return [
            at_most("associativity", associativity, 1e-12),
            at_most("norm multiplicativity", multiplicativity, 1e-12),
            at_most("inverse law", inverse_law, 1e-12),
            at_most("conjugate law", conjugate_law, 1e-12),
            at_most("model product agreement", agreement, 1e-12),
        ]


def _worst(residuals: Dict[str, Optional[float]]) -> float:
    return max(value for value in residuals.values() if value is not None)
