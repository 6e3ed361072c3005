"""Geodesics and distances in the unitary group with the Hilbert-Schmidt metric."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .linalg import (
    CLUSTER_RTOL,
    as_matrix,
    check_unitary,
    dagger,
    expm_skew,
    herm_eig,
    hs_norm,
    logm_unitary,
    opnorm,
    skew,
)


@dataclass(frozen=True)
class UnitaryGeodesic:
    """The curve ``t -> base @ exp(t * direction)``."""

    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", check_unitary(self.base, name="base"))
        object.__setattr__(self, "direction", skew(self.direction, name="direction"))

    def __call__(self, t):
        return unitary_geodesic_eval(self, t)

    @property
    def speed(self) -> float:
        return hs_norm(self.direction)


def unitary_geodesic_eval(g: UnitaryGeodesic, t):
    """Evaluate ``g`` at a scalar time or at an array of times (stacked result)."""
    t = np.asarray(t, dtype=float)
    return g.base @ expm_skew(t[..., None, None] * g.direction)


def unitary_log_bv(u0, u1) -> np.ndarray:
    """Direction ``x`` with ``u0 e^x = u1`` and ``||x|| <= pi``.

    The answer is unique when ``||u0 - u1|| < 2``. At the antipodal boundary
    several minimal directions exist and the fixed ``+pi`` branch is returned.
    """
    u0 = check_unitary(u0, name="u0")
    u1 = check_unitary(u1, name="u1")
    return logm_unitary(dagger(u0) @ u1)


def unitary_distance(u0, u1) -> float:
    """Geodesic distance for the 2-norm metric, ``||log(u0* u1)||_2``."""
    return hs_norm(unitary_log_bv(u0, u1))


def critical_ratio(x) -> float:
    """``||x||_2 / ||x||``; one exactly for rank-one directions."""
    x = as_matrix(x)
    top = opnorm(x)
    if top == 0:
        raise InvalidInput("critical ratio is undefined for x = 0")
    return hs_norm(x) / top


@dataclass(frozen=True)
class SpectralDirection:
    """Finite spectral resolution ``x = sum_i 1j * angles[i] * projections[i]``."""

    angles: np.ndarray
    projections: list
    kernel_projection: np.ndarray

    @property
    def ranks(self) -> np.ndarray:
        return np.array([round(np.trace(p).real) for p in self.projections])

    @property
    def radii(self) -> np.ndarray:
        """Sphere radii ``Tr(p_i)^(1/2)``."""
        return np.sqrt(self.ranks)

    def reconstruct(self) -> np.ndarray:
        n = self.kernel_projection.shape[0]
        out = np.zeros((n, n), dtype=complex)
        for a, p in zip(self.angles, self.projections):
            out += 1j * a * p
        return out


def spectral_direction(x, rtol=CLUSTER_RTOL) -> SpectralDirection:
    """Group the eigenvalues of anti-hermitian ``x`` into clusters.

    Eigenvalues within ``rtol * ||x||`` of each other share one projection,
    and those within ``rtol * ||x||`` of zero form the kernel projection.
    """
    x = skew(x)
    values, vectors = herm_eig(-1j * x)
    scale = max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    tol = rtol * scale
    n = x.shape[0]
    kernel = np.zeros((n, n), dtype=complex)
    angles, projections = [], []
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] <= tol:
            stop += 1
        block = vectors[:, start:stop]
        proj = block @ dagger(block)
        mean = float(np.mean(values[start:stop]))
        if abs(mean) <= tol:
            kernel = kernel + proj
        else:
            angles.append(mean)
            projections.append(proj)
        start = stop
    return SpectralDirection(np.array(angles), projections, kernel)


def _check_orthogonal(projections, atol=1e-8):
    for i, p in enumerate(projections):
        for q in projections[i + 1 :]:
            if np.max(np.abs(p @ q)) > atol:
                raise InvalidInput("projections are not pairwise orthogonal")


def sphere_projection(u, d: SpectralDirection, side: str = "left") -> list:
    """The map ``u -> (p_1 u, ..., p_n u)`` into a product of spheres.

    ``side="right"`` gives ``(u p_1, ..., u p_n)`` instead. Either way the
    ``i``-th component has 2-norm ``Tr(p_i)^(1/2)``.
    """
    u = as_matrix(u)
    _check_orthogonal(d.projections)
    if side == "left":
        return [p @ u for p in d.projections]
    if side == "right":
        return [u @ p for p in d.projections]
    raise InvalidInput(f"side must be 'left' or 'right', got {side!r}")


def sphere_curve_length(points, d: SpectralDirection, side: str = "left") -> float:
    """Chordal 2-norm length of the image of a sampled curve in the product of spheres."""
    points = np.asarray(points, dtype=complex)
    _check_orthogonal(d.projections)
    steps = np.diff(points, axis=0)
    sq = np.zeros(steps.shape[0])
    for p in d.projections:
        part = p @ steps if side == "left" else steps @ p
        sq += hs_norm(part) ** 2
    return float(np.sum(np.sqrt(sq)))
