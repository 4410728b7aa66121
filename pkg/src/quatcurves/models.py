"""
Pydantic data models for the quaternionic curve toolkit.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

FRAME_UNIT_TOL = 1e-8


class Quaternion(BaseModel):
    """Real quaternion a1 e1 + a2 e2 + a3 e3 + a4 e4 with e4 the identity."""

    model_config = ConfigDict(frozen=True)

    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0
    a4: float = 0.0

    @field_validator("a1", "a2", "a3", "a4")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"quaternion components must be finite, got {value}")
        return value

    @property
    def scalar(self) -> float:
        return self.a4

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3, self.a4])

    @classmethod
    def from_array(cls, values: Any) -> "Quaternion":
        a1, a2, a3, a4 = (float(v) for v in np.asarray(values, dtype=float).reshape(4))
        return cls(a1=a1, a2=a2, a3=a3, a4=a4)


class SpatialQuaternion(BaseModel):
    """Quaternion with vanishing scalar part, identified with a vector of E3."""

    model_config = ConfigDict(frozen=True)

    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    @field_validator("a1", "a2", "a3")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"spatial quaternion components must be finite, got {value}")
        return value

    @property
    def a4(self) -> float:
        return 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3])

    def to_quaternion(self) -> Quaternion:
        return Quaternion(a1=self.a1, a2=self.a2, a3=self.a3, a4=0.0)

    @classmethod
    def from_array(cls, values: Any) -> "SpatialQuaternion":
        a1, a2, a3 = (float(v) for v in np.asarray(values, dtype=float).reshape(3))
        return cls(a1=a1, a2=a2, a3=a3)


class Provenance(str, Enum):
    """How the derivatives behind a frame field were obtained."""

    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "finite-difference"


class FrenetSample(BaseModel):
    """Frenet apparatus of a curve at one parameter value."""

    model_config = ConfigDict(frozen=True)

    t: float
    s: float
    speed: float = Field(gt=0)
    tangent: SpatialQuaternion
    normal1: SpatialQuaternion
    normal2: SpatialQuaternion
    k: float = Field(ge=0)
    r: float

    @model_validator(mode="after")
    def _orthonormal(self) -> "FrenetSample":
        frame = np.stack([self.tangent.as_array(), self.normal1.as_array(), self.normal2.as_array()])
        gram = frame @ frame.T
        if np.max(np.abs(gram - np.eye(3))) > FRAME_UNIT_TOL:
            raise ValueError(f"frame at t={self.t} is not orthonormal")
        if np.max(np.abs(np.cross(frame[0], frame[1]) - frame[2])) > FRAME_UNIT_TOL:
            raise ValueError(f"frame at t={self.t} is not right-handed")
        return self


class FrameField(BaseModel):
    """
    Frenet apparatus sampled on a strictly increasing parameter grid.

    Frames are stored sign-continuous along the grid: where the principal
    normal of the curve flips (k passing through zero), the stored pair
    (normal1, normal2) is multiplied by ``orientation = -1``. The frames
    determined by the curve itself are ``orientation * stored``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    grid: np.ndarray
    s: np.ndarray
    speed: np.ndarray
    tangent: np.ndarray
    normal1: np.ndarray
    normal2: np.ndarray
    curvature: np.ndarray
    torsion: np.ndarray
    orientation: np.ndarray
    provenance: Provenance
    label: str = ""

    @field_validator("grid", "s", "speed", "tangent", "normal1", "normal2", "curvature", "torsion", "orientation", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        array = np.array(value, dtype=float)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _consistent(self) -> "FrameField":
        n = self.grid.shape[0]
        if n < 2:
            raise ValueError("a frame field needs at least two samples")
        for name in ("s", "speed", "curvature", "torsion", "orientation"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"{name} must have shape ({n},)")
        for name in ("tangent", "normal1", "normal2"):
            if getattr(self, name).shape != (n, 3):
                raise ValueError(f"{name} must have shape ({n}, 3)")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(np.diff(self.s) <= 0):
            raise ValueError("arc length must be strictly increasing")
        return self

    def __len__(self) -> int:
        return int(self.grid.shape[0])

    @property
    def ratio(self) -> np.ndarray:
        """Curvature ratio f = r/k."""
        return self.torsion / self.curvature

    @property
    def signed_curvature(self) -> np.ndarray:
        """Curvature carrying the orientation of the stored normals."""
        return self.orientation * self.curvature

    def curve_normals(self) -> tuple[np.ndarray, np.ndarray]:
        """(normal1, normal2) as determined by the curve, undoing the continuity flips."""
        sign = self.orientation[:, None]
        return sign * self.normal1, sign * self.normal2

    def total_curvature_profile(self) -> np.ndarray:
        """Trapezoidal phi = int k ds at every grid point, zero at the grid start."""
        increments = 0.5 * (self.curvature[1:] + self.curvature[:-1]) * np.diff(self.s)
        return np.concatenate([[0.0], np.cumsum(increments)])

    def total_torsion_profile(self) -> np.ndarray:
        """Trapezoidal psi = int r ds at every grid point, zero at the grid start."""
        increments = 0.5 * (self.torsion[1:] + self.torsion[:-1]) * np.diff(self.s)
        return np.concatenate([[0.0], np.cumsum(increments)])

    def sample(self, index: int) -> FrenetSample:
        """The FrenetSample at a grid index, with the curve-determined normals."""
        normal1, normal2 = self.curve_normals()
        return FrenetSample(
            t=float(self.grid[index]),
            s=float(self.s[index]),
            speed=float(self.speed[index]),
            tangent=SpatialQuaternion.from_array(self.tangent[index]),
            normal1=SpatialQuaternion.from_array(normal1[index]),
            normal2=SpatialQuaternion.from_array(normal2[index]),
            k=float(self.curvature[index]),
            r=float(self.torsion[index]),
        )

    def samples(self) -> List[FrenetSample]:
        return [self.sample(i) for i in range(len(self))]


class Criterion(str, Enum):
    """Similarity criteria for pairs of curves."""

    TANGENT = "tangent"
    NORMAL = "normal"
    BINORMAL = "binormal"
    RATIO = "ratio"


class SlantHelixReport(BaseModel):
    """Result of certifying a constant angle between n1 and a fixed axis."""

    axis: SpatialQuaternion
    cos_angle: float = Field(ge=-1.0, le=1.0)
    max_angle_deviation: float
    max_axis_drift: float
    max_axis_rate: float = 0.0
    branch: int = 1
    verdict: bool
    degenerate: Optional[str] = None
    unit_curvature_axis: Optional[SpatialQuaternion] = None
    unit_curvature_axis_drift: Optional[float] = None
    unit_curvature_shift: Optional[float] = None


class TorsionLawReport(BaseModel):
    """Fit of r(s) = +-b s' / sqrt(1 - b^2 s'^2) with s' = s - shift."""

    theta: float
    b: float
    b_median: Optional[float] = None
    shift: float = 0.0
    branch: int = 0
    max_residual: float
    verdict: bool
    degenerate: Optional[str] = None


class DualityReport(BaseModel):
    """Residuals of the frame and curvature relations between a curve and its binormal integral."""

    residuals: Dict[str, Optional[float]]
    samples: int
    frame_samples: int
    skipped: int
    literal_fraction: Optional[float] = None
    max_arclength_mismatch: float = 0.0
    verdict: bool


class AntiSalkowskiSlantReport(BaseModel):
    """Slant-helix certificate of an anti-Salkowski curve against its Salkowski curve."""

    m: float
    helix: SlantHelixReport
    reference: SlantHelixReport
    axis_mismatch: float
    verdict: bool


class N2SlantHelixReport(BaseModel):
    """Constancy of the curvature ratio r/k (binormal at constant angle)."""

    tan_theta: float
    theta: float
    max_deviation: float
    verdict: bool


class TransformationSample(BaseModel):
    """Arc length of the second curve and the stretch ds_a/ds_b at a matched point."""

    s_beta: float
    lam: float


class SimilarityReport(BaseModel):
    """Outcome of comparing two curves under one similarity criterion."""

    criterion: Criterion
    transformation_samples: List[TransformationSample] = Field(default_factory=list)
    max_discrepancy: float
    verdict: bool
    branch: int = 1
    matched_samples: int = 0
    degenerate: Optional[str] = None
    rotation: Optional[List[List[float]]] = None


class CorollaryResult(BaseModel):
    """One row of the similar-curve corollary suite."""

    name: str
    pair: str
    criterion: Criterion
    expected: bool = True
    verdict: Optional[bool] = None
    max_discrepancy: Optional[float] = None
    passed: bool
    detail: str = ""


class AssertionRecord(BaseModel):
    """A single measured quantity checked against its tolerance."""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    measured: float
    tolerance: float
    passed: bool = Field(alias="pass")

    @field_serializer("measured")
    def _finite_or_null(self, value: float) -> Optional[float]:
        return value if math.isfinite(value) else None


class VerificationReport(BaseModel):
    """Outcome of one named verification check."""

    model_config = ConfigDict(populate_by_name=True)

    check: str
    params: Dict[str, Any] = Field(default_factory=dict)
    assertions: List[AssertionRecord] = Field(default_factory=list)
    passed: bool = Field(alias="pass")
    seconds: float = 0.0
    error: Optional[str] = None

    @model_validator(mode="after")
    def _overall(self) -> "VerificationReport":
        expected = bool(self.assertions) and all(a.passed for a in self.assertions) and self.error is None
        if self.passed != expected:
            raise ValueError("overall pass must equal the conjunction of the assertions")
        return self
