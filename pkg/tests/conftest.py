"""Shared fixtures for the curve toolkit tests."""

import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from quatcurves.families import SalkowskiParams, anti_salkowski, circle, circular_helix, salkowski
from quatcurves.kernel import frame_field
from quatcurves.models import Quaternion

ROOT = Path(__file__).resolve().parents[1]


def finite_floats(bound: float = 10.0):
    return st.floats(min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False)


@st.composite
def quaternions(draw, bound: float = 10.0):
    """Random quaternions with bounded components."""
    return Quaternion(
        a1=draw(finite_floats(bound)),
        a2=draw(finite_floats(bound)),
        a3=draw(finite_floats(bound)),
        a4=draw(finite_floats(bound)),
    )


# Shape parameters away from zero and from the pole at |m| = 1/sqrt(3).
shape_parameters = st.one_of(st.floats(min_value=0.7, max_value=3.0), st.floats(min_value=-3.0, max_value=-0.7))


@pytest.fixture(scope="session")
def root() -> Path:
    return ROOT


@pytest.fixture(scope="session")
def report_schema() -> dict:
    return json.loads((ROOT / "schemas" / "verification_report.schema.json").read_text())


@pytest.fixture(scope="session")
def params_m1() -> SalkowskiParams:
    return SalkowskiParams.create(1.0)


@pytest.fixture(scope="session")
def salkowski_m1():
    return salkowski(1.0)


@pytest.fixture(scope="session")
def salkowski_field(params_m1, salkowski_m1):
    """Intrinsic Salkowski curve with m = 1 on its full safe domain."""
    return frame_field(salkowski_m1, params_m1.grid(2001))


@pytest.fixture(scope="session")
def anti_salkowski_m1():
    return anti_salkowski(1.0)


@pytest.fixture(scope="session")
def helix_field():
    helix = circular_helix(1.0, 1.0)
    return frame_field(helix, np.linspace(0.0, 2.0 * np.pi, 2001))


@pytest.fixture(scope="session")
def unit_circle_field():
    return frame_field(circle(1.0), np.linspace(0.0, 2.0 * np.pi, 1001))
