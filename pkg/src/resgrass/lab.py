"""Randomized experiments that try to falsify minimality and metric bounds.

Every trial draws from its own counter-based generator (Philox keyed by
``seed + trial``), so reports are reproducible bit for bit and do not depend
on the order in which trials are evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidInput
from .grassmannian import (
    BRANCH_THRESHOLD,
    conjugate_by,
    projection_from_basis,
    solve_geodesic,
)
from .lengths import DiscretizedCurve, jensen_compression_slack, jensen_pinch_slack
from .linalg import (
    dagger,
    expm_skew,
    expm_skew_unchecked,
    hs_norm,
    opnorm,
    polar_unitary,
    schatten_from_singular,
    singular_values,
)
from .unitary import critical_ratio, unitary_distance, unitary_log_bv

SANDWICH_CONSTANT = float(np.sqrt(1 - np.pi**2 / 12))
DEVIATION_ATOL = 1e-3


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def _gaussian(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_unitary(rng, n) -> np.ndarray:
    """Unitary part of a complex Gaussian matrix."""
    return polar_unitary(_gaussian(rng, n))


def random_skew(rng, n) -> np.ndarray:
    g = _gaussian(rng, n)
    return (g - dagger(g)) / 2


def random_hermitian(rng, n) -> np.ndarray:
    g = _gaussian(rng, n)
    return (g + dagger(g)) / 2


def random_projection(rng, n, rank) -> np.ndarray:
    return projection_from_basis(random_unitary(rng, n)[:, :rank])


def _boundary_pair(rng, dim, rank):
    # q1 rotates range vector j of q0 towards kernel vector j; at least one
    # rotation is by exactly pi/2, which plants an orthogonal swap
    planes = min(rank, dim - rank)
    swaps = 1 + int(rng.integers(planes))
    angles = rng.uniform(0.05, 1.5, size=planes)
    cos, sin = np.cos(angles), np.sin(angles)
    cos[:swaps], sin[:swaps] = 0.0, 1.0
    base = random_unitary(rng, dim)
    cols = base[:, :rank].copy()
    cols[:, :planes] = cos * base[:, :planes] + sin * base[:, rank : rank + planes]
    return projection_from_basis(base[:, :rank]), projection_from_basis(cols)


def draw_projection_pair(rng, dim, rank, mode="generic"):
    if not 0 < rank < dim:
        raise InvalidInput(f"need 0 < rank < dim, got rank={rank}, dim={dim}")
    if mode == "generic":
        q0 = random_projection(rng, dim, rank)
        while True:
            q1 = random_projection(rng, dim, rank)
            if opnorm(q0 - q1) < BRANCH_THRESHOLD:
                return q0, q1
    if mode == "boundary":
        return _boundary_pair(rng, dim, rank)
    raise InvalidInput(f"mode must be 'generic' or 'boundary', got {mode!r}")


def random_projection_pair(dim: int, rank: int, mode: str = "generic", seed: int = 0):
    """Two projections of equal rank.

    ``mode="generic"`` gives ``||q0 - q1|| < 1``; ``mode="boundary"`` gives
    ``||q0 - q1|| = 1`` with at least one orthogonally swapped pair of lines.
    """
    return draw_projection_pair(make_rng(seed), dim, rank, mode)


def _bump(times):
    out = np.sin(np.pi * times)
    out[0] = out[-1] = 0.0
    return out


def _orbit(generators, q0):
    u = expm_skew_unchecked(generators)
    out = u @ q0 @ dagger(u)
    return (out + dagger(out)) / 2


def _perturbed_generators(direction, ys, amplitude, times):
    w = times[:, None, None] * direction
    if ys is None:
        return w
    return w[None] + amplitude * _bump(times)[None, :, None, None] * ys[:, None]


def competitor_curve(q0, z, y, amplitude: float, m: int) -> DiscretizedCurve:
    """Samples of ``e^{w(t)} q0 e^{-w(t)}`` with ``w(t) = t z + amplitude sin(pi t) y``.

    The curve stays on the orbit of ``q0`` and ends exactly where the
    geodesic with direction ``z`` does.
    """
    if m < 2:
        raise InvalidInput("need m >= 2")
    times = np.linspace(0.0, 1.0, m + 1)
    w = _perturbed_generators(np.asarray(z, dtype=complex), np.asarray(y)[None], amplitude, times)[0]
    return DiscretizedCurve(times, conjugate_by(expm_skew(w), q0), "projection")


@dataclass
class TrialReport:
    seed: int
    dim: int
    rank: int
    k: float
    geodesic_length: float
    best_competitor_length: float
    margin: float
    endpoint_error: float
    branch: str
    amplitude: float = 0.0
    tol_disc: float = 0.0
    closed_form_length: float = 0.0
    strict_fraction: float = 0.0
    uniqueness_failures: int = 0
    competitor_endpoint_error: float = 0.0
    critical_ratio: float | None = None
    critical_time: float | None = None

    @property
    def passed(self) -> bool:
        return self.margin >= -self.tol_disc


def _unit_skew(rng, n):
    y = random_skew(rng, n)
    return y / opnorm(y)


def _as_ks(k) -> list[float]:
    ks = [float(k)] if np.ndim(k) == 0 else [float(v) for v in k]
    if not ks:
        raise InvalidInput("need at least one k")
    return ks


def _check_common(trials, competitors, m, amplitude):
    if trials < 1 or competitors < 1:
        raise InvalidInput("trials and competitors must be positive")
    if m < 2:
        raise InvalidInput("need m >= 2")
    if not amplitude >= 0:
        raise InvalidInput("amplitude must be non-negative")


def _chord_spectra(geo_steps, comp_steps, ks, hermitian=False):
    if all(v == 2 for v in ks):
        # a single "singular value" equal to the Frobenius norm gives the same 2-norm
        return hs_norm(geo_steps)[..., None], hs_norm(comp_steps)[..., None]
    return singular_values(geo_steps, hermitian), singular_values(comp_steps, hermitian)


def _length_reports(base, ks, z_sv, geo_sv, comp_sv, deviation, amplitude):
    reports = []
    for k in ks:
        closed = float(schatten_from_singular(z_sv, k))
        geo_len = float(np.sum(schatten_from_singular(geo_sv, k)))
        comp_len = np.sum(schatten_from_singular(comp_sv, k), axis=-1)
        tol = 2 * max(closed - geo_len, 0.0) + 1e-12 * max(1.0, closed)
        margins = comp_len - geo_len
        failures = int(np.sum((margins < tol) & (deviation > DEVIATION_ATOL))) if amplitude > 0.1 else 0
        best = float(np.min(comp_len))
        reports.append(
            TrialReport(
                k=k,
                geodesic_length=geo_len,
                best_competitor_length=best,
                margin=best - geo_len,
                tol_disc=tol,
                closed_form_length=closed,
                strict_fraction=float(np.mean(margins > tol)),
                uniqueness_failures=failures,
                amplitude=amplitude,
                **base,
            )
        )
    return reports


def grassmann_trial(trial_seed, dim, rank, k, competitors, m, amplitude, mode="generic"):
    """One minimality trial on the projection orbit; one report per ``k``."""
    rng = make_rng(trial_seed)
    q0, q1 = draw_projection_pair(rng, dim, rank, mode)
    sol = solve_geodesic(q0, q1)
    ys = np.stack([_unit_skew(rng, dim) for _ in range(competitors)])
    times = np.linspace(0.0, 1.0, m + 1)
    geo = _orbit(_perturbed_generators(sol.z, None, amplitude, times), q0)
    comp = _orbit(_perturbed_generators(sol.z, ys, amplitude, times), q0)
    ends = np.maximum(hs_norm(comp[:, -1] - geo[-1]), hs_norm(comp[:, 0] - q0))
    base = dict(
        seed=int(trial_seed),
        dim=dim,
        rank=rank,
        endpoint_error=sol.endpoint_error,
        branch=sol.branch,
        competitor_endpoint_error=float(np.max(ends)),
    )
    ks = _as_ks(k)
    geo_sv, comp_sv = _chord_spectra(np.diff(geo, axis=0), np.diff(comp, axis=1), ks, hermitian=True)
    return _length_reports(
        base,
        ks,
        singular_values(sol.z),
        geo_sv,
        comp_sv,
        np.max(hs_norm(comp - geo[None]), axis=1),
        amplitude,
    )


def minimality_experiment(
    dim: int,
    rank: int,
    k=2.0,
    trials: int = 20,
    competitors_per_trial: int = 20,
    m: int = 512,
    amplitude: float = 0.3,
    seed: int = 0,
    mode: str = "generic",
) -> list[TrialReport]:
    """Compare geodesics between random projections with perturbed competitors.

    ``k`` may be a sequence, in which case every trial yields one report per
    value (the same sampled curves are measured in each norm).
    """
    ks = _as_ks(k)
    if any(not (2 <= v < np.inf) for v in ks):
        raise InvalidInput("minimality experiments need 2 <= k < inf")
    _check_common(trials, competitors_per_trial, m, amplitude)
    reports = []
    for i in range(trials):
        reports += grassmann_trial(seed + i, dim, rank, ks, competitors_per_trial, m, amplitude, mode)
    return reports


def _random_direction(rng, dim, kind):
    if kind == "rank-one":
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v /= np.linalg.norm(v)
        return 1j * np.pi * np.outer(v, np.conj(v))
    if kind != "random":
        raise InvalidInput(f"direction must be 'random' or 'rank-one', got {kind!r}")
    while True:
        x = random_skew(rng, dim)
        top = opnorm(x)
        if top > 1e-12:
            return x * (np.pi * rng.uniform(0.25, 1.0) / top)


def unitary_trial(trial_seed, dim, k, competitors, m, amplitude, direction="random"):
    """One minimality trial in the unitary group, starting at the identity."""
    rng = make_rng(trial_seed)
    x = _random_direction(rng, dim, direction)
    u1 = expm_skew(x)
    xb = unitary_log_bv(np.eye(dim), u1)
    ys = np.stack([_unit_skew(rng, dim) for _ in range(competitors)])
    times = np.linspace(0.0, 1.0, m + 1)
    geo = expm_skew_unchecked(_perturbed_generators(xb, None, amplitude, times))
    comp = expm_skew_unchecked(_perturbed_generators(xb, ys, amplitude, times))
    ends = np.maximum(hs_norm(comp[:, -1] - geo[-1]), hs_norm(comp[:, 0] - np.eye(dim)))
    ks = _as_ks(k)
    sv = singular_values(xb)
    geo_sv, comp_sv = _chord_spectra(np.diff(geo, axis=0), np.diff(comp, axis=1), ks)
    top = float(sv.max())
    base = dict(
        seed=int(trial_seed),
        dim=dim,
        rank=int(np.sum(sv > 1e-10 * top)),
        endpoint_error=hs_norm(expm_skew(xb) - u1),
        branch="A" if top < np.pi - 1e-10 else "B",
        competitor_endpoint_error=float(np.max(ends)),
        critical_ratio=critical_ratio(xb),
        critical_time=np.pi / top,
    )
    return _length_reports(
        base, ks, sv, geo_sv, comp_sv, np.max(hs_norm(comp - geo[None]), axis=1), amplitude
    )


def unitary_minimality_experiment(
    dim: int,
    trials: int = 20,
    competitors_per_trial: int = 20,
    m: int = 512,
    amplitude: float = 0.3,
    seed: int = 0,
    k=2.0,
    direction: str = "random",
) -> list[TrialReport]:
    """Geodesics ``e^{tx}`` with ``||x|| <= pi`` against perturbed competitors.

    Each report also carries ``critical_ratio = ||x||_2 / ||x||`` and
    ``critical_time = pi / ||x||``, the time up to which ``e^{tx}`` stays
    minimal.
    """
    ks = _as_ks(k)
    if any(not (2 <= v < np.inf) for v in ks):
        raise InvalidInput("minimality experiments need 2 <= k < inf")
    _check_common(trials, competitors_per_trial, m, amplitude)
    reports = []
    for i in range(trials):
        reports += unitary_trial(seed + i, dim, ks, competitors_per_trial, m, amplitude, direction)
    return reports


@dataclass
class SandwichReport:
    """Chord and geodesic distances for random unitary pairs."""

    distances: np.ndarray
    chords: np.ndarray
    constant: float = SANDWICH_CONSTANT

    @property
    def lower_slack(self) -> np.ndarray:
        return self.chords - self.constant * self.distances

    @property
    def upper_slack(self) -> np.ndarray:
        return self.distances - self.chords

    def passed(self, atol=1e-10) -> bool:
        return bool(self.lower_slack.min() >= -atol and self.upper_slack.min() >= -atol)


def metric_sandwich_experiment(dim: int, trials: int, seed: int = 0) -> SandwichReport:
    """Check ``sqrt(1 - pi^2/12) d(u, v) <= ||u - v||_2 <= d(u, v)`` on random pairs."""
    if trials < 1:
        raise InvalidInput("trials must be positive")
    distances, chords = np.empty(trials), np.empty(trials)
    for i in range(trials):
        rng = make_rng(seed + i)
        u, v = random_unitary(rng, dim), random_unitary(rng, dim)
        distances[i] = unitary_distance(u, v)
        chords[i] = hs_norm(u - v)
    return SandwichReport(distances, chords)


@dataclass
class InequalityRecord:
    seed: int
    dim: int
    r: float
    compression_slack: float
    pinch_slack: float
    commuting_pinch_slack: float
    scalar_compression_slack: float


@dataclass
class InequalityReport:
    records: list = field(default_factory=list)

    @property
    def min_slack(self) -> float:
        return min(min(rec.compression_slack, rec.pinch_slack) for rec in self.records)

    @property
    def max_equality_defect(self) -> float:
        return max(
            max(abs(rec.commuting_pinch_slack), abs(rec.scalar_compression_slack))
            for rec in self.records
        )

    def passed(self, atol=1e-10) -> bool:
        return self.min_slack >= -atol and self.max_equality_defect <= atol


def _random_partition(rng, dim):
    u = random_unitary(rng, dim)
    parts = int(rng.integers(2, dim + 1))
    cuts = np.sort(rng.choice(np.arange(1, dim), size=parts - 1, replace=False))
    blocks = np.split(np.arange(dim), cuts)
    return u, [projection_from_basis(u[:, b]) for b in blocks]


def inequality_experiment(
    trials: int, seed: int = 0, rs: Sequence[float] = (1.5, 2.0, 3.0), max_dim: int = 12
) -> InequalityReport:
    """Sweep both Jensen-type trace inequalities over random positive matrices.

    Besides the generic slacks, each record holds two equality cases: ``a``
    commuting with every part of the partition, and ``pap`` a multiple of ``p``.
    """
    if trials < 1:
        raise InvalidInput("trials must be positive")
    if max_dim < 2:
        raise InvalidInput("max_dim must be at least 2")
    report = InequalityReport()
    for i in range(trials):
        rng = make_rng(seed + i)
        dim = int(rng.integers(2, max_dim + 1))
        g = _gaussian(rng, dim)
        a = g @ dagger(g) / dim
        u, parts = _random_partition(rng, dim)
        rank = int(rng.integers(1, dim + 1))
        p = projection_from_basis(random_unitary(rng, dim)[:, :rank])
        commuting = (u * rng.uniform(0, 2, size=dim)) @ dagger(u)
        eye = np.eye(dim)
        scalar = rng.uniform(0.1, 2) * p + (eye - p) @ a @ (eye - p)
        for r in rs:
            report.records.append(
                InequalityRecord(
                    seed=seed + i,
                    dim=dim,
                    r=float(r),
                    compression_slack=jensen_compression_slack(p, a, r),
                    pinch_slack=jensen_pinch_slack(a, parts, r),
                    commuting_pinch_slack=jensen_pinch_slack(commuting, parts, r),
                    scalar_compression_slack=jensen_compression_slack(p, scalar, r),
                )
            )
    return report
