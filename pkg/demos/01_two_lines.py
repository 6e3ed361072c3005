"""Two lines in the plane: the smallest case where everything is explicit.

A line at angle theta from the x-axis is reached from the x-axis by the
rotation generator z = [[0, -theta], [theta, 0]]. Its 2-norm length is
sqrt(2) * theta, which we recover three ways.
"""
import numpy as np

from resgrass import grass_geodesic_eval, grass_log_bv, solve_geodesic, subspace_split
from resgrass.lengths import chordal_length

theta = 0.7
c, s = np.cos(theta), np.sin(theta)
p = np.diag([1.0, 0.0]).astype(complex)
q = np.array([[c * c, c * s], [c * s, s * s]], dtype=complex)

sol = solve_geodesic(p, q)
print("branch:", sol.branch)
print("z =\n", np.round(sol.z.real, 12))
print("closed form  sqrt(2)*theta =", np.sqrt(2) * theta)
print("||z||_2                    =", sol.norm_2)

# sample the geodesic and add up chords
for m in (10, 100, 1000, 10000):
    pts = grass_geodesic_eval(p, sol.z, np.linspace(0, 1, m + 1))
    print(f"chordal length, m={m:>5}:", chordal_length(pts, 2))

# the principal-angle route sees the same angle
split = subspace_split(p, q)
print("principal angle:", split.angles)
print("both routes agree:", np.allclose(grass_log_bv(p, q, "A"), grass_log_bv(p, q, "B")))
