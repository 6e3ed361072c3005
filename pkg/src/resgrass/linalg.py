"""Dense complex matrix kernels.

Everything here works on plain ``numpy`` arrays. Functions that are used on
the hot path of the experiments (``herm_eig``, ``expm_skew``,
``schatten_norm``) also accept stacks of matrices with shape ``(..., n, n)``.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import InvalidInput, NumericalFailure, SingularInput

HERMITIAN_RTOL = 1e-10
UNITARY_ATOL = 1e-10
CLUSTER_RTOL = 1e-10
JACOBI_RTOL = 1e-13
JACOBI_MAX_SWEEPS = 100
# angles within this distance of -pi are moved to the +pi branch
BRANCH_ATOL = 1e-10


class EigenSystem(NamedTuple):
    """Eigenvalues in ascending order and the unitary of eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values[..., None, :]) @ dagger(self.vectors)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(a, -1, -2))


def eye_like(a: np.ndarray) -> np.ndarray:
    return np.eye(a.shape[-1], dtype=complex)


def _fro(a):
    return np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))


def as_matrix(a, name="matrix") -> np.ndarray:
    """Return ``a`` as a complex array of square matrices with finite entries."""
    a = np.asarray(a, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] < 1:
        raise InvalidInput(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} has non-finite entries")
    return a


def hermitian(a, rtol=HERMITIAN_RTOL, name="matrix") -> np.ndarray:
    """Validate that ``a`` is hermitian and return ``(a + a*) / 2``."""
    a = as_matrix(a, name)
    defect = _fro(a - dagger(a))
    if np.any(defect > rtol * np.maximum(_fro(a), np.finfo(float).tiny)):
        raise InvalidInput(f"{name} is not hermitian")
    return (a + dagger(a)) / 2


def skew(a, rtol=1e-8, name="matrix") -> np.ndarray:
    """Validate that ``a`` is anti-hermitian and return ``(a - a*) / 2``."""
    a = as_matrix(a, name)
    defect = _fro(a + dagger(a))
    if np.any(defect > rtol * np.maximum(_fro(a), np.finfo(float).tiny)):
        raise InvalidInput(f"{name} is not skew-hermitian")
    return (a - dagger(a)) / 2


def unitarity_defect(u) -> float:
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(dagger(u) @ u - eye_like(u))))


def check_unitary(u, atol=1e-8, name="matrix") -> np.ndarray:
    u = as_matrix(u, name)
    if unitarity_defect(u) > atol:
        raise InvalidInput(f"{name} is not unitary")
    return u


def reunitarize(u, atol=UNITARY_ATOL) -> np.ndarray:
    """Project ``u`` back onto the unitary group if it drifted more than ``atol``."""
    u = as_matrix(u)
    if unitarity_defect(u) <= atol:
        return u
    return polar_unitary(u)


def cluster_values(values, rtol=CLUSTER_RTOL) -> np.ndarray:
    """Replace each run of nearly equal sorted values by the run's mean.

    ``values`` has shape ``(..., n)`` and is sorted along the last axis. Two
    neighbours belong to the same cluster when their gap is at most
    ``rtol * max|values|`` of their row.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[-1]
    flat = values.reshape(-1, n)
    scale = np.max(np.abs(flat), axis=1, keepdims=True)
    breaks = np.diff(flat, axis=1) > rtol * scale
    ids = np.concatenate([np.zeros((flat.shape[0], 1), int), np.cumsum(breaks, axis=1)], axis=1)
    ids = ids + n * np.arange(flat.shape[0])[:, None]
    sums = np.bincount(ids.ravel(), weights=flat.ravel(), minlength=flat.size)
    counts = np.bincount(ids.ravel(), minlength=flat.size)
    means = sums[ids] / counts[ids]
    return means.reshape(values.shape)


def _offdiag_norm(a):
    return np.linalg.norm(a - np.diag(np.diag(a)))


def jacobi_eigh(a, rtol=JACOBI_RTOL, max_sweeps=JACOBI_MAX_SWEEPS) -> EigenSystem:
    """Cyclic Jacobi eigensolver for a single complex hermitian matrix.

    Rotations are applied in fixed row-cyclic order ``(0,1), (0,2), ...`` until
    the off-diagonal Frobenius norm drops below ``rtol * ||a||_F``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = rtol * np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = _offdiag_norm(a)
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                if abs(g) <= np.finfo(float).tiny:
                    continue
                # diag(1, e^{-i phi}) makes the pivot real, then a real rotation kills it
                mag = abs(g)
                phase = g / mag
                tau = (a[q, q].real - a[p, p].real) / (2 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1 / np.hypot(1.0, t)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = dagger(rot) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ rot
        a[np.diag_indices(n)] = np.diag(a).real
    else:
        off = _offdiag_norm(a)
        if off > threshold:
            raise NumericalFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    values = np.diag(a).real
    order = np.argsort(values, kind="stable")
    return EigenSystem(values[order], v[:, order])


def herm_eig(a, method: str = "lapack") -> EigenSystem:
    """Eigen-decomposition of a hermitian matrix (or stack of them).

    ``method="lapack"`` calls :func:`numpy.linalg.eigh` and handles stacks in
    one call; ``method="jacobi"`` uses :func:`jacobi_eigh` matrix by matrix.
    """
    a = hermitian(a)
    if method == "lapack":
        try:
            values, vectors = np.linalg.eigh(a)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(str(exc)) from exc
        return EigenSystem(values, vectors)
    if method == "jacobi":
        if a.ndim == 2:
            return jacobi_eigh(a)
        values = np.empty(a.shape[:-1])
        vectors = np.empty(a.shape, dtype=complex)
        for idx in np.ndindex(*a.shape[:-2]):
            values[idx], vectors[idx] = jacobi_eigh(a[idx])
        return EigenSystem(values, vectors)
    raise InvalidInput(f"unknown eigensolver {method!r}")


def polar_unitary(g) -> np.ndarray:
    """Unitary factor ``w`` of the polar decomposition ``g = w |g|``."""
    g = as_matrix(g)
    u, s, vh = np.linalg.svd(g)
    if np.any(s[..., -1] <= 1e-12 * s[..., 0]):
        raise SingularInput("matrix is singular to working precision")
    return u @ vh


def expm_skew(x) -> np.ndarray:
    """``e^x`` for anti-hermitian ``x`` via the spectrum of ``-i x``."""
    return expm_skew_unchecked(skew(x))


def expm_skew_unchecked(x) -> np.ndarray:
    """:func:`expm_skew` without input validation, for generators built in-house."""
    h = -1j * x
    try:
        values, vectors = np.linalg.eigh((h + dagger(h)) / 2)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(str(exc)) from exc
    values = cluster_values(values)
    return (vectors * np.exp(1j * values)[..., None, :]) @ dagger(vectors)


_PHASE_CANDIDATES = [0.0, np.pi, np.pi / 2, -np.pi / 2] + [
    np.pi * j / 2**level
    for level in range(2, 7)
    for j in range(-(2**level) + 1, 2**level, 2)
]


def _cayley_phase(u):
    # choose e^{i phi} so that -1 stays well away from the spectrum of e^{i phi} u
    best, best_gap = 0.0, -np.inf
    for phi in _PHASE_CANDIDATES:
        w = np.exp(1j * phi) * u
        gap = 1 + herm_eig((w + dagger(w)) / 2).values[0]
        if gap >= 0.5:
            return phi
        if gap > best_gap:
            best, best_gap = phi, gap
    return best


def logm_unitary(u) -> np.ndarray:
    """Anti-hermitian logarithm of a unitary with eigen-angles in ``(-pi, pi]``.

    Eigenvectors come from the hermitian Cayley transform of a phase-rotated
    copy of ``u``; eigenvalue ``-1`` is always mapped to angle ``+pi``.
    """
    u = check_unitary(u)
    eye = eye_like(u)
    w = np.exp(1j * _cayley_phase(u)) * u
    h = 1j * np.linalg.solve(eye + w, eye - w)
    _, vectors = herm_eig((h + dagger(h)) / 2)
    d = np.einsum("ji,jk,ki->i", np.conj(vectors), u, vectors)
    angles = np.angle(d)
    angles = np.where(angles <= -np.pi + BRANCH_ATOL, np.pi, angles)
    order = np.argsort(angles)
    clustered = np.empty_like(angles)
    clustered[order] = cluster_values(angles[order])
    clustered = np.minimum(clustered, np.pi)
    z = (vectors * (1j * clustered)) @ dagger(vectors)
    return (z - dagger(z)) / 2


def singular_values(a, hermitian: bool = False) -> np.ndarray:
    return np.linalg.svd(np.asarray(a), compute_uv=False, hermitian=hermitian)


def schatten_norm(a, k=2.0, hermitian: bool = False):
    """Schatten ``k``-norm ``(sum s_i^k)^(1/k)``; ``k=inf`` is the operator norm.

    Accepts stacks; returns a float for a single matrix.
    """
    if not (k >= 1):
        raise InvalidInput(f"Schatten index must be >= 1, got {k}")
    out = schatten_from_singular(singular_values(as_matrix(a), hermitian=hermitian), k)
    return float(out) if np.ndim(out) == 0 else out


def schatten_from_singular(s, k):
    """Schatten ``k``-norm from singular values along the last axis."""
    s = np.asarray(s, dtype=float)
    if np.isinf(k):
        return s.max(axis=-1)
    if k == 2:
        return np.sqrt(np.sum(s * s, axis=-1))
    # scale out the largest value so that large k does not overflow
    top = s.max(axis=-1, keepdims=True)
    safe = np.where(top > 0, top, 1.0)
    return top[..., 0] * np.sum((s / safe) ** k, axis=-1) ** (1 / k)


def opnorm(a) -> float:
    return schatten_norm(a, np.inf)


def hs_norm(a):
    """Hilbert-Schmidt (Frobenius) norm without an SVD."""
    out = _fro(np.asarray(a))
    return float(out) if np.ndim(out) == 0 else out


def trace_inner(a, b) -> complex:
    """Trace inner product ``<a, b> = Tr(b* a)``."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise InvalidInput(f"dimension mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(b, a))


def psd_power_trace(a, r: float) -> float:
    """``Tr(a^r)`` for positive semidefinite ``a`` and real ``r >= 1``.

    Eigenvalues down to ``-1e-12 * max(1, ||a||)`` are treated as zero.
    """
    values = herm_eig(a).values
    floor = -1e-12 * max(1.0, float(np.max(np.abs(values))))
    if values[0] < floor:
        raise InvalidInput("matrix is not positive semidefinite")
    return float(np.sum(np.clip(values, 0.0, None) ** r))
