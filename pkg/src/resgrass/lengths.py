"""Schatten-norm lengths of sampled curves and trace inequalities.

Curve lengths are chordal sums ``sum_j ||x_{j+1} - x_j||_k``. Every chord is
no longer than the arc it replaces, so the sum is a lower bound for the true
length and increases under refinement.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .grassmannian import check_projection
from .linalg import (
    as_matrix,
    dagger,
    herm_eig,
    hs_norm,
    psd_power_trace,
    schatten_norm,
)

KINDS = ("unitary", "projection")


@dataclass(frozen=True)
class DiscretizedCurve:
    """Samples ``points[j]`` of a curve at increasing ``times[j]`` in ``[0, 1]``."""

    times: np.ndarray
    points: np.ndarray
    kind: str

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        points = as_matrix(self.points, "points")
        if self.kind not in KINDS:
            raise InvalidInput(f"kind must be one of {KINDS}, got {self.kind!r}")
        if times.ndim != 1 or times.size < 2 or points.shape[0] != times.size or points.ndim != 3:
            raise InvalidInput("need m+1 >= 2 times and one matrix per time")
        if np.any(np.diff(times) <= 0):
            raise InvalidInput("times must be strictly increasing")
        if abs(times[0]) > 1e-12 or abs(times[-1] - 1) > 1e-12:
            raise InvalidInput("times must span [0, 1]")
        if self.kind == "unitary":
            eye = np.eye(points.shape[-1])
            bad = np.max(np.abs(dagger(points) @ points - eye)) > 1e-8
        else:
            bad = (
                np.max(np.abs(points - dagger(points))) > 1e-8
                or np.max(np.abs(points @ points - points)) > 1e-8
            )
        if bad:
            raise InvalidInput(f"sample points are not {self.kind} matrices")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "points", points)

    @property
    def m(self) -> int:
        return self.times.size - 1


def chordal_length(points, k=2.0, hermitian: bool = False):
    """Chordal length of samples stacked along axis ``-3``.

    Extra leading axes are treated as a batch of curves.
    """
    if not (k >= 1):
        raise InvalidInput(f"Schatten index must be >= 1, got {k}")
    steps = np.diff(np.asarray(points, dtype=complex), axis=-3)
    if k == 2:
        chords = hs_norm(steps)
    else:
        chords = schatten_norm(steps, k, hermitian=hermitian)
    out = np.sum(chords, axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def curve_length(c: DiscretizedCurve, k=2.0) -> float:
    """Chordal ``L_k`` length of a sampled curve."""
    return chordal_length(c.points, k, hermitian=c.kind == "projection")


def _check_r(r):
    if not (r >= 1):
        raise InvalidInput(f"exponent r must be >= 1, got {r}")


def _check_psd(a):
    values = herm_eig(a).values
    if values[0] < -1e-12 * max(1.0, float(np.max(np.abs(values)))):
        raise InvalidInput("a is not positive semidefinite")


def jensen_compression_slack(p, a, r: float) -> float:
    """``Tr(p)^(r-1) Tr((pap)^r) - Tr(pap)^r``, non-negative for a projection ``p``."""
    _check_r(r)
    p, rank = check_projection(p, name="p")
    if rank < 1:
        raise InvalidInput("p must have rank >= 1")
    _check_psd(a)
    pap = p @ np.asarray(a, dtype=complex) @ p
    pap = (pap + dagger(pap)) / 2
    return rank ** (r - 1) * psd_power_trace(pap, r) - np.trace(pap).real ** r


def check_resolution(parts, atol=1e-8):
    """Validate projections that are pairwise orthogonal and sum to the identity."""
    parts = [check_projection(p, name="part")[0] for p in parts]
    if not parts:
        raise InvalidInput("need at least one part")
    n = parts[0].shape[0]
    if np.max(np.abs(sum(parts) - np.eye(n))) > atol:
        raise InvalidInput("parts do not sum to the identity")
    for i, p in enumerate(parts):
        for q in parts[i + 1 :]:
            if np.max(np.abs(p @ q)) > atol:
                raise InvalidInput("parts are not pairwise orthogonal")
    return parts


def jensen_pinch_slack(a, parts, r: float) -> float:
    """``Tr(a^r) - sum_j Tr((p_j a p_j)^r)``; pinching can only lower ``Tr(a^r)``."""
    _check_r(r)
    parts = check_resolution(parts)
    a = np.asarray(a, dtype=complex)
    _check_psd(a)
    pinched = 0.0
    for p in parts:
        block = p @ a @ p
        pinched += psd_power_trace((block + dagger(block)) / 2, r)
    return psd_power_trace(a, r) - pinched


def minkowski_slack(samples, k: float) -> float:
    """``int (sum_i f_i^k)^(1/k) - (sum_i (int f_i)^k)^(1/k)`` on ``[0, 1]``.

    ``samples[i, j]`` is ``f_i`` at the ``j``-th point of a uniform grid;
    integrals use the trapezoidal rule.
    """
    if not (k >= 1):
        raise InvalidInput(f"k must be >= 1, got {k}")
    f = np.atleast_2d(np.asarray(samples, dtype=float))
    if f.shape[1] < 2:
        raise InvalidInput("need at least two grid points")
    if np.any(f < 0):
        raise InvalidInput("samples must be non-negative")
    dx = 1.0 / (f.shape[1] - 1)
    lhs = np.trapezoid(np.sum(f**k, axis=0) ** (1 / k), dx=dx)
    rhs = np.sum(np.trapezoid(f, dx=dx, axis=1) ** k) ** (1 / k)
    return float(lhs - rhs)
