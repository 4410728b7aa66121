"""
Quaternionic curve toolkit.

Quaternion algebra, a numerical Frenet kernel for spatial quaternionic
curves, the Salkowski and anti-Salkowski families, and certificates for
slant helices and similar curves.
"""

from quatcurves.errors import CurveError
from quatcurves.families import Convention, anti_salkowski, circle, circular_helix, line, salkowski
from quatcurves.kernel import Curve, SampledCurve, frame_field, frame_table
from quatcurves.models import Criterion, FrameField, Quaternion, SpatialQuaternion

__version__ = "0.1.0"

__all__ = [
    "Convention",
    "Criterion",
    "Curve",
    "CurveError",
    "FrameField",
    "Quaternion",
    "SampledCurve",
    "SpatialQuaternion",
    "anti_salkowski",
    "circle",
    "circular_helix",
    "frame_field",
    "frame_table",
    "line",
    "salkowski",
]
