"""Acceptance sweeps at full size.

Each test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary under "acceptance criteria".
"""
import time

import numpy as np

from conftest import halmos_pair, record_criterion
from resgrass.grassmannian import (
    codiagonal_lift,
    grass_geodesic_eval,
    grass_log_bv,
    projection_from_basis,
    solve_geodesic,
    subspace_split,
    symmetry_differential,
    symmetry_embed,
    tangent_project,
)
from resgrass.lab import (
    SANDWICH_CONSTANT,
    draw_projection_pair,
    inequality_experiment,
    make_rng,
    metric_sandwich_experiment,
    minimality_experiment,
    random_hermitian,
    random_projection,
    random_skew,
    unitary_minimality_experiment,
)
from resgrass.lengths import chordal_length
from resgrass.linalg import expm_skew, hs_norm, logm_unitary, opnorm
from resgrass.unitary import unitary_distance

AMPLITUDES = (0.1, 0.3, 0.6)


def _scaled_skew(rng, n, top):
    x = random_skew(rng, n)
    return x * (top / opnorm(x))


def test_c01_exp_log_roundtrip():
    rng = make_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 17))
        z = _scaled_skew(rng, n, rng.uniform(0, 0.9 * np.pi))
        worst = max(worst, opnorm(logm_unitary(expm_skew(z)) - z))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 10
    record_criterion(1, "exp/log roundtrip", ok, f"max err {worst:.2e}, {elapsed:.1f}s")
    assert ok


def test_c02_arcsine_identity():
    rng = make_rng(102)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 17))
        x = _scaled_skew(rng, n, rng.uniform(0, np.pi))
        lhs = opnorm(expm_skew(x) - np.eye(n))
        worst = max(worst, abs(lhs - 2 * np.sin(opnorm(x) / 2)))
    ok = worst <= 1e-9
    record_criterion(2, "||e^x - 1|| = 2 sin(||x||/2)", ok, f"max err {worst:.2e}")
    assert ok


def _swap_block_norm(q0, q1, z):
    split = subspace_split(q0, q1)
    block = np.hstack([split.h01, split.h10])
    p = projection_from_basis(block)
    return opnorm(p @ z @ p)


def test_c03_geodesic_solver():
    rng = make_rng(103)
    start = time.perf_counter()
    worst = {"end": 0.0, "codiag": 0.0, "norm": 0.0, "swap": 0.0}
    for mode, count in (("generic", 500), ("boundary", 100)):
        for _ in range(count):
            q0, q1 = draw_projection_pair(rng, 8, 4, mode)
            sol = solve_geodesic(q0, q1)
            worst["end"] = max(worst["end"], sol.endpoint_error)
            worst["codiag"] = max(worst["codiag"], sol.codiagonality)
            worst["norm"] = max(worst["norm"], sol.norm_inf - np.pi / 2)
            if mode == "boundary":
                swap = _swap_block_norm(q0, q1, sol.z)
                worst["swap"] = max(worst["swap"], abs(swap - np.pi / 2))
    elapsed = time.perf_counter() - start
    ok = (
        worst["end"] <= 1e-8
        and worst["codiag"] <= 1e-8
        and worst["norm"] <= 1e-9
        and worst["swap"] <= 1e-8
        and elapsed < 30
    )
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {elapsed:.1f}s"
    record_criterion(3, "geodesic boundary-value solver", ok, detail)
    assert ok


def test_c04_closed_form_oracle():
    errors = []
    for theta in (0.3, 0.7, 1.2):
        p, q = halmos_pair(theta)
        sol = solve_geodesic(p, q)
        closed = np.sqrt(2) * theta
        pts = grass_geodesic_eval(p, sol.z, np.linspace(0, 1, 10**4 + 1))
        errors.append((abs(sol.norm_2 - closed), 1e-10))
        errors.append((abs(chordal_length(pts, 2) - closed), 1e-4))
    for r in (1, 2, 3):
        eye = np.eye(2 * r)
        q0, q1 = projection_from_basis(eye[:, :r]), projection_from_basis(eye[:, r:])
        errors.append((abs(solve_geodesic(q0, q1).norm_2 - np.pi / 2 * np.sqrt(2 * r)), 1e-8))
    ok = all(err <= tol for err, tol in errors)
    record_criterion(4, "closed-form distances", ok, f"max err {max(e for e, _ in errors):.1e}")
    assert ok


def _sweep(ks):
    start = time.perf_counter()
    reports = [
        r
        for a in AMPLITUDES
        for r in minimality_experiment(
            6, 3, k=ks, trials=100, competitors_per_trial=50, m=512, amplitude=a, seed=5000
        )
    ]
    return reports, time.perf_counter() - start


def test_c05_grassmann_minimality():
    reports, elapsed = _sweep(2.0)
    worst = min(r.margin + r.tol_disc for r in reports)
    strong = [r for r in reports if r.amplitude >= 0.3]
    strict = np.mean([r.margin > r.tol_disc for r in strong])
    unique_fail = np.mean([r.uniqueness_failures > 0 for r in reports if r.amplitude > 0.1])
    max_tol = max(r.tol_disc for r in reports)
    ok = worst >= 0 and strict >= 0.95 and unique_fail < 0.01 and elapsed < 180
    detail = (
        f"min margin+tol {worst:.2e}, max tol {max_tol:.1e}, strict {strict:.0%}, "
        f"uniqueness failures {unique_fail:.0%}, {elapsed:.0f}s"
    )
    record_criterion(5, "projection minimality, k = 2", ok, detail)
    assert ok


def test_c06_k_norm_minimality():
    reports, elapsed = _sweep((3.0, 4.0, 6.0))
    worst = min(r.margin + r.tol_disc for r in reports)
    ok = worst >= 0 and {r.k for r in reports} == {3.0, 4.0, 6.0}
    record_criterion(6, "projection minimality, k = 3, 4, 6", ok, f"min margin+tol {worst:.2e}, {elapsed:.0f}s")
    assert ok


def test_c07_unitary_minimality():
    m = 512
    reports = unitary_minimality_experiment(6, trials=100, competitors_per_trial=50, m=m, amplitude=0.3, seed=7000)
    worst = min(r.margin + r.tol_disc for r in reports)
    grid = []
    for r in reports:
        top = np.pi / r.critical_time
        tol = r.closed_form_length * top**2 / (24 * m**2) + 1e-12
        grid.append(abs(r.geodesic_length - r.closed_form_length) / tol)
    ok = worst >= 0 and max(grid) <= 1
    detail = f"min margin+tol {worst:.2e}, grid defect/tol {max(grid):.2f}"
    record_criterion(7, "unitary minimality", ok, detail)
    assert ok


def test_c08_metric_sandwich():
    report = metric_sandwich_experiment(8, 1000, seed=8000)
    worst = float(min(report.lower_slack.min(), report.upper_slack.min()))
    u, v = -np.eye(2), np.eye(2)
    d, chord = unitary_distance(u, v), hs_norm(u - v)
    closed = abs(d - np.pi * np.sqrt(2)) <= 1e-10 and abs(chord - 2 * np.sqrt(2)) <= 1e-10
    ok = worst >= -1e-10 and closed and SANDWICH_CONSTANT * d <= chord
    record_criterion(8, "metric sandwich", ok, f"min slack {worst:.2e}, antipodal d2 {d:.10f}")
    assert ok


def test_c09_jensen_suite():
    report = inequality_experiment(1000, seed=9000, rs=(1.5, 2.0, 3.0), max_dim=12)
    ok = report.min_slack >= -1e-10 and report.max_equality_defect <= 1e-10
    detail = f"min slack {report.min_slack:.2e}, equality defect {report.max_equality_defect:.1e}"
    record_criterion(9, "Jensen trace inequalities", ok, detail)
    assert ok


def test_c10_symmetry_map():
    rng = make_rng(10000)
    worst_flow = worst_diff = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 11))
        r = int(rng.integers(1, n))
        q0, p = random_projection(rng, n, r), random_projection(rng, n, r)
        z = codiagonal_lift(q0, tangent_project(q0, random_hermitian(rng, n)))
        for t in (0.25, 0.5, 1.0):
            lhs = symmetry_embed(grass_geodesic_eval(q0, z, t), p)
            rhs = expm_skew(2 * t * z) @ symmetry_embed(q0, p)
            worst_flow = max(worst_flow, hs_norm(lhs - rhs))
        v = tangent_project(q0, random_hermitian(rng, n))
        worst_diff = max(worst_diff, abs(hs_norm(symmetry_differential(v, p)) - 2 * hs_norm(v)))
    ok = worst_flow <= 1e-9 and worst_diff <= 1e-12
    record_criterion(10, "symmetry embedding", ok, f"flow err {worst_flow:.1e}, differential err {worst_diff:.1e}")
    assert ok


def test_c11_branch_agreement():
    rng = make_rng(11000)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 11))
        q0, q1 = draw_projection_pair(rng, n, int(rng.integers(1, n)), "generic")
        za = grass_log_bv(q0, q1, branch="A")
        zb = grass_log_bv(q0, q1, branch="B")
        worst = max(worst, opnorm(za - zb))
    ok = worst <= 1e-8
    record_criterion(11, "half-log vs principal-angle directions", ok, f"max diff {worst:.1e}")
    assert ok
