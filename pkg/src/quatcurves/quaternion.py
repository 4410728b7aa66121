"""
Real quaternion arithmetic.

Quaternions are stored as (a1, a2, a3, a4) with a4 the scalar part and e4
the multiplicative identity, so that e_i x e_i = -e4 for 1 <= i <= 3.
Besides the model-level operations there are vectorised counterparts on
arrays of shape (..., 4) and (..., 3) used by the curve kernel.
"""

from typing import overload

import numpy as np

from quatcurves.errors import QuaternionDomainError
from quatcurves.models import Quaternion, SpatialQuaternion

E1 = Quaternion(a1=1.0)
E2 = Quaternion(a2=1.0)
E3 = Quaternion(a3=1.0)
E4 = Quaternion(a4=1.0)


def mul(q: Quaternion, p: Quaternion) -> Quaternion:
    """
    Quaternion product q x p.

    Scalar part s_q s_p - <v_q, v_p>; vector part s_q v_p + s_p v_q + v_q ^ v_p.
    """
    return Quaternion(
        a1=q.a4 * p.a1 + p.a4 * q.a1 + (q.a2 * p.a3 - q.a3 * p.a2),
        a2=q.a4 * p.a2 + p.a4 * q.a2 + (q.a3 * p.a1 - q.a1 * p.a3),
        a3=q.a4 * p.a3 + p.a4 * q.a3 + (q.a1 * p.a2 - q.a2 * p.a1),
        a4=q.a4 * p.a4 - (q.a1 * p.a1 + q.a2 * p.a2 + q.a3 * p.a3),
    )


def add(q: Quaternion, p: Quaternion) -> Quaternion:
    return Quaternion(a1=q.a1 + p.a1, a2=q.a2 + p.a2, a3=q.a3 + p.a3, a4=q.a4 + p.a4)


def sub(q: Quaternion, p: Quaternion) -> Quaternion:
    return Quaternion(a1=q.a1 - p.a1, a2=q.a2 - p.a2, a3=q.a3 - p.a3, a4=q.a4 - p.a4)


def scale(q: Quaternion, factor: float) -> Quaternion:
    return Quaternion(a1=factor * q.a1, a2=factor * q.a2, a3=factor * q.a3, a4=factor * q.a4)


def conj(q: Quaternion) -> Quaternion:
    """Conjugate: scalar part kept, vector part negated."""
    return Quaternion(a1=-q.a1, a2=-q.a2, a3=-q.a3, a4=q.a4)


def inner(q: Quaternion, p: Quaternion) -> float:
    """Quaternion inner product, the scalar value of (q x conj(p) + p x conj(q)) / 2."""
    symmetric = add(mul(q, conj(p)), mul(p, conj(q)))
    return 0.5 * symmetric.a4


def norm2(q: Quaternion) -> float:
    return q.a1 * q.a1 + q.a2 * q.a2 + q.a3 * q.a3 + q.a4 * q.a4


def norm(q: Quaternion) -> float:
    return float(np.sqrt(norm2(q)))


def inverse(q: Quaternion) -> Quaternion:
    """
    Multiplicative inverse conj(q) / |q|^2.

    Raises:
        QuaternionDomainError: for the zero quaternion
    """
    n2 = norm2(q)
    if n2 == 0.0:
        raise QuaternionDomainError("the zero quaternion has no inverse")
    return scale(conj(q), 1.0 / n2)


def split(q: Quaternion) -> tuple[SpatialQuaternion, float]:
    """Spatial part (q - conj(q))/2 and temporal part (q + conj(q))/2."""
    spatial = scale(sub(q, conj(q)), 0.5)
    temporal = scale(add(q, conj(q)), 0.5)
    return SpatialQuaternion(a1=spatial.a1, a2=spatial.a2, a3=spatial.a3), temporal.a4


def combine(spatial: SpatialQuaternion, temporal: float) -> Quaternion:
    return Quaternion(a1=spatial.a1, a2=spatial.a2, a3=spatial.a3, a4=temporal)


def qmul_array(q: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Vectorised quaternion product over the last axis of (..., 4) arrays."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    qv, qs = q[..., :3], q[..., 3:]
    pv, ps = p[..., :3], p[..., 3:]
    scalar = qs * ps - np.sum(qv * pv, axis=-1, keepdims=True)
    vector = qs * pv + ps * qv + np.cross(qv, pv)
    return np.concatenate([vector, scalar], axis=-1)


def embed(u: np.ndarray) -> np.ndarray:
    """Spatial vectors (..., 3) as quaternions (..., 4) with zero scalar part."""
    u = np.asarray(u, dtype=float)
    return np.concatenate([u, np.zeros(u.shape[:-1] + (1,))], axis=-1)


@overload
def vec_dot(u: SpatialQuaternion, v: SpatialQuaternion) -> float: ...


@overload
def vec_dot(u: np.ndarray, v: np.ndarray) -> np.ndarray: ...


def vec_dot(u, v):
    """Euclidean dot product, the negated scalar part of u x v."""
    if isinstance(u, SpatialQuaternion):
        return -mul(u.to_quaternion(), v.to_quaternion()).a4
    return -qmul_array(embed(u), embed(v))[..., 3]


@overload
def vec_cross(u: SpatialQuaternion, v: SpatialQuaternion) -> SpatialQuaternion: ...


@overload
def vec_cross(u: np.ndarray, v: np.ndarray) -> np.ndarray: ...


def vec_cross(u, v):
    """Euclidean cross product, the vector part of u x v."""
    if isinstance(u, SpatialQuaternion):
        product = mul(u.to_quaternion(), v.to_quaternion())
        return SpatialQuaternion(a1=product.a1, a2=product.a2, a3=product.a3)
    return qmul_array(embed(u), embed(v))[..., :3]


def vec_norm(u: np.ndarray) -> np.ndarray:
    """Euclidean norms over the last axis."""
    return np.sqrt(vec_dot(u, u))
