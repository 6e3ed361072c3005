"""One-parameter groups and the chord/arc sandwich in the unitary group.

e^{tx} is minimal while t ||x|| <= pi. Its 2-norm length from 1 to e^x is
||x||_2, and the straight chord ||e^x - 1||_2 is never shorter than
sqrt(1 - pi^2/12) times that.
"""
import numpy as np

from resgrass import metric_sandwich_experiment, unitary_distance, unitary_minimality_experiment
from resgrass.lab import SANDWICH_CONSTANT
from resgrass.linalg import hs_norm

print("sandwich constant:", SANDWICH_CONSTANT)
u = -np.eye(2)
d = unitary_distance(np.eye(2), u)
print(f"antipodal pair: d2 = {d:.6f}, chord = {hs_norm(u - np.eye(2)):.6f}, lower bound = {SANDWICH_CONSTANT * d:.6f}")

report = metric_sandwich_experiment(8, 200, seed=3)
ratio = report.chords / report.distances
print(f"chord / d2 over 200 random pairs: min {ratio.min():.4f}, max {ratio.max():.4f}")

reports = unitary_minimality_experiment(6, trials=10, competitors_per_trial=20, m=256, seed=0)
for r in reports[:5]:
    print(
        f"||x||_2 = {r.closed_form_length:.4f}  margin = {r.margin:.4f}  "
        f"||x||_2/||x|| = {r.critical_ratio:.3f}  minimal until t = {r.critical_time:.3f}"
    )
