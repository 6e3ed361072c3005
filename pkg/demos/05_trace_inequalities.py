"""Jensen-type trace inequalities behind the k-norm results.

Compressing a positive matrix to a subspace and pinching it along a
resolution of the identity both lower power traces in a controlled way.
"""
import numpy as np

from resgrass import inequality_experiment, jensen_compression_slack, jensen_pinch_slack

a = np.array([[2.0, 1.0], [1.0, 2.0]])
parts = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
print("Tr(a^2) - Tr(pinched^2) =", jensen_pinch_slack(a, parts, 2.0))
print("full compression of diag(1, 2), r = 2:", jensen_compression_slack(np.eye(2), np.diag([1.0, 2.0]), 2.0))

report = inequality_experiment(300, seed=0)
by_r = {}
for rec in report.records:
    by_r.setdefault(rec.r, []).append(min(rec.compression_slack, rec.pinch_slack))
for r, slacks in sorted(by_r.items()):
    print(f"r = {r}: smallest slack {min(slacks):.3e} over {len(slacks)} matrices")
print("equality cases, largest defect:", report.max_equality_defect)
