"""Projections as points of a unitary orbit: tangent spaces, sections, geodesics.

A point is an orthogonal projection ``q`` (hermitian idempotent ``n x n``
array). Two points lie on the same orbit exactly when they have equal rank.
Geodesics through ``q`` are ``t -> e^{tz} q e^{-tz}`` with ``z``
anti-hermitian and ``q``-codiagonal (``qzq = (1-q)z(1-q) = 0``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotInSectionDomain, NotSameOrbit, NumericalFailure
from .linalg import (
    as_matrix,
    dagger,
    expm_skew,
    hermitian,
    herm_eig,
    hs_norm,
    logm_unitary,
    opnorm,
    polar_unitary,
    skew,
)

PROJECTION_ATOL = 1e-10
RANK_ATOL = 1e-8
CODIAGONAL_RTOL = 1e-8
# Branch A (half-log) is used strictly inside this distance
BRANCH_THRESHOLD = 1 - 1e-8
# singular values below this count as a common null direction
INTERSECTION_ATOL = 1e-8


def check_projection(q, atol=PROJECTION_ATOL, name="projection"):
    """Validate a projection and return ``(q, rank)`` with ``q`` hermitized."""
    q = as_matrix(q, name)
    if np.max(np.abs(q - dagger(q))) > atol:
        raise InvalidInput(f"{name} is not hermitian")
    q = (q + dagger(q)) / 2
    if np.max(np.abs(q @ q - q)) > atol:
        raise InvalidInput(f"{name} is not idempotent")
    trace = np.trace(q).real
    rank = int(round(trace))
    if abs(trace - rank) > RANK_ATOL:
        raise InvalidInput(f"{name} has non-integral trace {trace}")
    return q, rank


def projection_from_basis(basis) -> np.ndarray:
    """Orthogonal projection onto the span of orthonormal columns."""
    basis = np.asarray(basis, dtype=complex)
    return basis @ dagger(basis)


def range_basis(q) -> np.ndarray:
    """Orthonormal basis (columns) of the range of a projection."""
    values, vectors = herm_eig(q)
    return vectors[:, values > 0.5]


def _same_orbit(q0, q1):
    q0, r0 = check_projection(q0, name="q0")
    q1, r1 = check_projection(q1, name="q1")
    if q0.shape != q1.shape:
        raise NotSameOrbit(f"dimension mismatch {q0.shape} vs {q1.shape}")
    if r0 != r1:
        raise NotSameOrbit(f"rank {r0} and rank {r1} projections lie on different orbits")
    return q0, q1


def conjugate_by(u, q) -> np.ndarray:
    """Action of the unitary group, ``u q u*``."""
    u = as_matrix(u, "u")
    out = u @ np.asarray(q, dtype=complex) @ dagger(u)
    return (out + dagger(out)) / 2


def tangent_project(q, a) -> np.ndarray:
    """Orthogonal projection of hermitian ``a`` onto the tangent space at ``q``.

    This is ``a q - 2 q a q + q a``, the square of ``x -> x q - q x``.
    """
    q = np.asarray(q, dtype=complex)
    a = hermitian(a, name="a")
    qa = q @ a
    v = a @ q - 2 * qa @ q + qa
    return (v + dagger(v)) / 2


def is_tangent(q, v, rtol=1e-10) -> bool:
    v = np.asarray(v, dtype=complex)
    return hs_norm(tangent_project(q, v) - v) <= rtol * max(hs_norm(v), 1.0)


def codiagonality_residual(q, z) -> float:
    q = np.asarray(q, dtype=complex)
    z = np.asarray(z, dtype=complex)
    qc = np.eye(q.shape[0]) - q
    return hs_norm(q @ z @ q) + hs_norm(qc @ z @ qc)


def codiagonal_lift(q, v) -> np.ndarray:
    """The unique ``q``-codiagonal anti-hermitian ``z`` with ``zq - qz = v``."""
    q = np.asarray(q, dtype=complex)
    v = hermitian(v, name="v")
    if not is_tangent(q, v):
        raise InvalidInput("v is not tangent at q")
    z = v @ q - q @ v
    return (z - dagger(z)) / 2


def cross_section(p, q) -> np.ndarray:
    """Unitary ``w`` with ``w p w* = q``; the unitary part of ``qp + (1-q)(1-p)``."""
    p, q = _same_orbit(p, q)
    if opnorm(p - q) >= 1 - 1e-10:
        raise NotInSectionDomain("cross section needs ||p - q|| < 1")
    eye = np.eye(p.shape[0])
    return polar_unitary(q @ p + (eye - q) @ (eye - p))


def grass_geodesic_eval(q, z, t):
    """``e^{tz} q e^{-tz}``; ``t`` may be an array, giving a stack of points."""
    q = np.asarray(q, dtype=complex)
    z = skew(z, name="z")
    if codiagonality_residual(q, z) > CODIAGONAL_RTOL * max(hs_norm(z), np.finfo(float).tiny):
        raise InvalidInput("z is not codiagonal with respect to q")
    t = np.asarray(t, dtype=float)
    u = expm_skew(t[..., None, None] * z)
    out = u @ q @ dagger(u)
    return (out + dagger(out)) / 2


def symmetry(q) -> np.ndarray:
    """The self-adjoint unitary ``2q - 1``."""
    q = np.asarray(q, dtype=complex)
    return 2 * q - np.eye(q.shape[-1])


def symmetry_embed(q, p) -> np.ndarray:
    """Embedding of the orbit of ``p`` in the unitary group, ``(2q-1)(2p-1)``."""
    return symmetry(q) @ symmetry(p)


def symmetry_differential(v, p) -> np.ndarray:
    """Differential of :func:`symmetry_embed` at any point, applied to tangent ``v``."""
    return 2 * np.asarray(v, dtype=complex) @ symmetry(p)


@dataclass(frozen=True)
class SubspaceSplit:
    """Relative position of two projections ``q0``, ``q1``.

    The ``h*`` attributes are orthonormal bases (as columns): ``h00`` spans
    ``ker q0 & ker q1``, ``h01`` spans ``ker q0 & ran q1``, ``h10`` spans
    ``ran q0 & ker q1``, ``h11`` spans ``ran q0 & ran q1`` and ``h0`` the
    orthogonal complement of these four (the generic part).

    On the generic part, ``generic_range[:, j]`` (in ``ran q0``) and
    ``generic_kernel[:, j]`` (in ``ker q0``) span a plane in which ``ran q1``
    sits at angle ``angles[j]``; ``angle_operator`` is ``diag(angles)`` in
    that basis. ``pairing_isometry`` maps ``h10[:, j]`` to ``h01[:, j]``.
    """

    h00: np.ndarray
    h01: np.ndarray
    h10: np.ndarray
    h11: np.ndarray
    h0: np.ndarray
    generic_range: np.ndarray
    generic_kernel: np.ndarray
    angles: np.ndarray

    @property
    def angle_operator(self) -> np.ndarray:
        return np.diag(self.angles).astype(complex)

    @property
    def pairing_isometry(self) -> np.ndarray:
        return self.h01 @ dagger(self.h10)

    @property
    def dims(self) -> dict:
        return {name: getattr(self, name).shape[1] for name in ("h00", "h01", "h10", "h11", "h0")}


def _fix_phases(basis, atol=INTERSECTION_ATOL):
    # first coordinate above atol of each column is made real positive
    basis = basis.copy()
    for j in range(basis.shape[1]):
        col = basis[:, j]
        idx = np.flatnonzero(np.abs(col) > atol)
        if idx.size:
            basis[:, j] = col * (np.conj(col[idx[0]]) / abs(col[idx[0]]))
    return basis


def _common_null_space(a, b, atol=INTERSECTION_ATOL):
    _, s, vh = np.linalg.svd(np.vstack([a, b]))
    return _fix_phases(dagger(vh[s <= atol]))


def _complement(basis, n):
    if basis.shape[1] == 0:
        return np.eye(n, dtype=complex)
    u, _, _ = np.linalg.svd(basis, full_matrices=True)
    return u[:, basis.shape[1] :]


def subspace_split(q0, q1) -> SubspaceSplit:
    """Decompose the space according to the relative position of ``q0`` and ``q1``."""
    q0, q1 = _same_orbit(q0, q1)
    n = q0.shape[0]
    eye = np.eye(n)
    k0, k1 = eye - q0, eye - q1
    h00 = _common_null_space(q0, q1)
    h01 = _common_null_space(q0, k1)
    h10 = _common_null_space(k0, q1)
    h11 = _common_null_space(k0, k1)
    if h01.shape[1] != h10.shape[1]:
        raise NumericalFailure("intersection dimensions disagree; inputs are near a rank decision")
    h0 = _complement(np.hstack([h00, h01, h10, h11]), n)

    def compressed_range(q):
        if h0.shape[1] == 0:
            return h0
        values, vectors = herm_eig(dagger(h0) @ q @ h0)
        return h0 @ vectors[:, values > 0.5]

    e = compressed_range(q0)
    g = compressed_range(q1)
    if 2 * e.shape[1] != h0.shape[1] or g.shape[1] != e.shape[1]:
        raise NumericalFailure("generic part is not balanced")
    u, cosines, wh = np.linalg.svd(dagger(e) @ g)
    e = e @ u
    g = g @ dagger(wh)
    cosines = np.clip(cosines, 0.0, 1.0)
    f = g - q0 @ g
    sines = np.linalg.norm(f, axis=0)
    if np.any(sines <= np.finfo(float).eps):
        raise NumericalFailure("generic part contains an unresolved intersection")
    f = f / sines
    angles = np.arctan2(sines, cosines)
    return SubspaceSplit(h00, h01, h10, h11, h0, e, f, angles)


def _half_log_direction(q0, q1):
    return logm_unitary(symmetry(q1) @ symmetry(q0)) / 2


def _split_direction(q0, q1):
    split = subspace_split(q0, q1)
    e, f, x = split.generic_range, split.generic_kernel, split.angle_operator
    z = f @ x @ dagger(e) - e @ x @ dagger(f)
    v = split.pairing_isometry
    z = z + (np.pi / 2) * (v - dagger(v))
    return (z - dagger(z)) / 2


def grass_log_bv(q0, q1, branch: str | None = None) -> np.ndarray:
    """Codiagonal direction ``z`` with ``e^z q0 e^{-z} = q1`` and ``||z|| <= pi/2``.

    By default the half logarithm ``log((2q1-1)(2q0-1)) / 2`` is used when
    ``||q0 - q1|| < 1 - 1e-8`` (the minimal geodesic is then unique) and the
    subspace construction otherwise. ``branch="A"`` or ``"B"`` forces one of
    the two routes; ``"B"`` is valid for every pair.
    """
    return solve_geodesic(q0, q1, branch=branch).z


@dataclass(frozen=True)
class GeodesicSolution:
    z: np.ndarray
    branch: str
    norm_inf: float
    norm_2: float
    endpoint_error: float
    codiagonality: float


def pick_branch(q0, q1) -> str:
    return "A" if opnorm(q0 - q1) < BRANCH_THRESHOLD else "B"


def solve_geodesic(q0, q1, branch: str | None = None) -> GeodesicSolution:
    """Minimal geodesic from ``q0`` to ``q1`` with diagnostics."""
    q0, q1 = _same_orbit(q0, q1)
    if branch is None:
        branch = pick_branch(q0, q1)
    if branch == "A":
        if opnorm(q0 - q1) >= 1:
            raise InvalidInput("the half-log route needs ||q0 - q1|| < 1")
        z = _half_log_direction(q0, q1)
    elif branch == "B":
        z = _split_direction(q0, q1)
    else:
        raise InvalidInput(f"branch must be 'A' or 'B', got {branch!r}")
    u = expm_skew(z)
    end = u @ q0 @ dagger(u)
    return GeodesicSolution(
        z=z,
        branch=branch,
        norm_inf=opnorm(z),
        norm_2=hs_norm(z),
        endpoint_error=hs_norm(end - q1),
        codiagonality=codiagonality_residual(q0, z),
    )


def grass_distance(q0, q1) -> float:
    """Geodesic distance for the 2-norm metric."""
    return solve_geodesic(q0, q1).norm_2
