"""Mobius action on strict contractions and numerical-range sampling.

A unit-determinant pair (alpha, beta) with |alpha|^2 - |beta|^2 = 1 acts
on a strict contraction A by

    A  |->  (alpha A + beta I)(conj(beta) A + conj(alpha) I)^{-1},

the matrix analogue of a disc automorphism.  Numerator and denominator
are polynomials in the same A, so they commute and the order of the
product does not matter.

The numerical-range side evaluates |<A U(t) x, U(t) x>| along the
unitary orbit U(t) = exp(i t B) of a Hermitian generator; every sampled
point must lie inside the numerical range, which is certified against
the support function of A (the largest eigenvalue of the rotated
Hermitian part).
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .groups import Su11Element

_HERMITIAN_TOL = 1e-12
_UNIT_TOL = 1e-12
_CONTRACTION_SLACK = 1e-10
_SUPPORT_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """A square complex matrix wrapped with shape validation."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError("operator must be a nonempty square matrix")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True, eq=False)
class UnitaryOrbit:
    """Orbit data: Hermitian generator, unit vector, and sample times."""

    generator: np.ndarray
    x: np.ndarray
    t_grid: np.ndarray

    def __post_init__(self):
        gen = np.array(self.generator, dtype=complex)
        if gen.ndim != 2 or gen.shape[0] != gen.shape[1]:
            raise ValueError("generator must be square")
        if np.max(np.abs(gen - gen.conj().T)) > _HERMITIAN_TOL * max(
                1.0, float(np.max(np.abs(gen)))):
            raise ValueError("generator must be Hermitian")
        x = np.array(self.x, dtype=complex).reshape(-1)
        if x.shape[0] != gen.shape[0]:
            raise ValueError("vector length must match the generator")
        nrm = float(np.linalg.norm(x))
        if abs(nrm - 1.0) > _UNIT_TOL:
            raise ValueError(f"orbit vector must be unit length, got {nrm!r}")
        t = np.array(self.t_grid, dtype=float).reshape(-1)
        if t.size == 0:
            raise ValueError("t_grid must be nonempty")
        for name, val in (("generator", gen), ("x", x), ("t_grid", t)):
            val.setflags(write=False)
            object.__setattr__(self, name, val)


def spectral_radius(a: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(a, dtype=complex)))))


def mobius_apply(g: Su11Element, a: np.ndarray) -> np.ndarray:
    """Act on a strict contraction by the matrix disc automorphism of g.

    Composition is covariant on the left: acting by g1 * g2 equals
    acting by g2 first and g1 second.  The result of acting on a strict
    contraction is again a strict contraction; both ends are checked.
    """
    mat = np.asarray(a, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("mobius_apply needs a square matrix")
    rho = spectral_radius(mat)
    if rho >= 1.0:
        raise ValueError(
            f"mobius_apply needs a strict contraction, spectral radius {rho:.6g}")
    eye = np.eye(mat.shape[0], dtype=complex)
    num = g.alpha * mat + g.beta * eye
    den = np.conj(g.beta) * mat + np.conj(g.alpha) * eye
    if np.linalg.cond(den) > 1e12:
        raise ValueError("mobius_apply denominator is numerically singular")
    out = num @ np.linalg.inv(den)
    rho_out = spectral_radius(out)
    if rho_out >= 1.0 + _CONTRACTION_SLACK:
        raise ValueError(
            f"mobius_apply produced spectral radius {rho_out:.6g}; "
            "input was too close to the unit circle for this element")
    return out


def support_function(a: np.ndarray, theta: float) -> float:
    """Largest eigenvalue of the Hermitian part of e^{-i theta} A.

    The numerical range sits in every half plane
    { z : Re(e^{-i theta} z) <= support_function(a, theta) }.
    """
    mat = np.asarray(a, dtype=complex)
    rot = cmath.exp(-1j * theta) * mat
    herm = 0.5 * (rot + rot.conj().T)
    return float(np.max(np.linalg.eigvalsh(herm)))


def numerical_range_hull(a: np.ndarray, n_theta: int = 360) -> np.ndarray:
    """Boundary points of the numerical range, counterclockwise.

    For each direction the top eigenvector of the rotated Hermitian part
    gives the supporting point <A v, v>.
    """
    mat = np.asarray(a, dtype=complex)
    pts = np.empty(n_theta, dtype=complex)
    for k, theta in enumerate(np.linspace(0.0, 2.0 * math.pi, n_theta,
                                          endpoint=False)):
        rot = cmath.exp(-1j * theta) * mat
        herm = 0.5 * (rot + rot.conj().T)
        vals, vecs = np.linalg.eigh(herm)
        v = vecs[:, -1]
        pts[k] = complex(np.vdot(v, mat @ v))
    return pts


def numrange_transform(a: np.ndarray, orbit: UnitaryOrbit,
                       n_theta: int = 360) -> np.ndarray:
    """<A U(t) x, U(t) x> along the orbit, certified in-range.

    U(t) = exp(i t B) is evaluated through the eigendecomposition of the
    Hermitian generator B, so each state is exactly unit length up to
    roundoff.  Every quadratic form value is checked against the support
    function on an angular grid before it is reported; a failure means
    the arithmetic broke the numerical-range containment and is raised
    rather than returned.
    """
    mat = np.asarray(a, dtype=complex)
    if mat.shape != (orbit.x.shape[0], orbit.x.shape[0]):
        raise ValueError("operator and orbit dimensions disagree")
    vals, vecs = np.linalg.eigh(orbit.generator)
    coeff = vecs.conj().T @ orbit.x
    thetas = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    supports = np.array([support_function(mat, th) for th in thetas])
    out = np.empty(orbit.t_grid.shape[0], dtype=complex)
    for i, t in enumerate(orbit.t_grid):
        state = vecs @ (np.exp(1j * t * vals) * coeff)
        z = complex(np.vdot(state, mat @ state))
        margins = (np.cos(thetas) * z.real + np.sin(thetas) * z.imag) - supports
        worst = float(np.max(margins))
        if worst > _SUPPORT_SLACK:
            raise ValueError(
                f"orbit value {z:.6g} at t={t:g} escapes the numerical range "
                f"by {worst:.3g}")
        out[i] = z
    return out


# ---------------------------------------------------------------------------
# Matrix JSON files: {"matrix": [[[re, im], ...], ...]}


def write_matrix_json(path: str, a: np.ndarray) -> None:
    mat = np.asarray(a, dtype=complex)
    payload = {"matrix": [[[float(v.real), float(v.imag)] for v in row]
                          for row in mat]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def read_matrix_json(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, dict) or "matrix" not in payload:
        raise ValueError(f"{path}: expected an object with a 'matrix' key")
    rows = payload["matrix"]
    try:
        mat = np.array([[complex(c[0], c[1]) for c in row] for row in rows],
                       dtype=complex)
    except (TypeError, IndexError):
        raise ValueError(f"{path}: matrix entries must be [re, im] pairs") from None
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{path}: matrix must be square")
    return mat


def write_vector_json(path: str, x: np.ndarray) -> None:
    vec = np.asarray(x, dtype=complex).reshape(-1)
    payload = {"vector": [[float(v.real), float(v.imag)] for v in vec]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def read_vector_json(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, dict) or "vector" not in payload:
        raise ValueError(f"{path}: expected an object with a 'vector' key")
    try:
        vec = np.array([complex(c[0], c[1]) for c in payload["vector"]],
                       dtype=complex)
    except (TypeError, IndexError):
        raise ValueError(f"{path}: vector entries must be [re, im] pairs") from None
    if vec.size == 0:
        raise ValueError(f"{path}: vector is empty")
    return vec
