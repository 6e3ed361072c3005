"""Trying to beat a geodesic.

Perturb the geodesic generator by amplitude * sin(pi t) * y. The endpoints
do not move and every sample stays on the orbit, so each competitor is a
fair challenger. None of them should be shorter, in any k-norm with k >= 2.
"""

from resgrass import competitor_curve, curve_length, grass_log_bv, minimality_experiment, random_projection_pair
from resgrass.lab import make_rng, random_skew
from resgrass.linalg import opnorm, schatten_norm

q0, q1 = random_projection_pair(6, 3, seed=1)
z = grass_log_bv(q0, q1)
y = random_skew(make_rng(2), 6)
y /= opnorm(y)

for k in (2, 4):
    print(f"k={k}: closed form", schatten_norm(z, k))
    for a in (0.0, 0.1, 0.3, 0.6):
        c = competitor_curve(q0, z, y, a, 512)
        print(f"   amplitude {a:.1f}: length {curve_length(c, k):.6f}")

reports = minimality_experiment(6, 3, k=(2, 3, 4, 6), trials=10, competitors_per_trial=20, m=256, seed=0)
for k in (2.0, 3.0, 4.0, 6.0):
    margins = [r.margin for r in reports if r.k == k]
    print(f"k={k:.0f}: smallest margin over 10 trials {min(margins):.4f}")
