"""When a range direction meets the kernel head on.

If ran q0 and ker q1 share a direction, ||q0 - q1|| = 1 and the half-log
formula is out of reach. The minimal geodesic still exists: on the
swapped block it rotates by exactly pi/2. Several such geodesics exist,
all of the same length.
"""
import numpy as np

from resgrass import random_projection_pair, solve_geodesic, subspace_split
from resgrass.linalg import opnorm

q0, q1 = random_projection_pair(6, 3, mode="boundary", seed=4)
print("||q0 - q1|| =", opnorm(q0 - q1))

split = subspace_split(q0, q1)
print("block dimensions:", split.dims)
print("generic angles:", np.round(split.angles, 6))

sol = solve_geodesic(q0, q1)
print("branch:", sol.branch)
print("||z||  =", sol.norm_inf, " pi/2 =", np.pi / 2)
print("endpoint error:", sol.endpoint_error)

# the swap contributes pi/2 on 2 * dim(h01) singular values
swaps = split.dims["h01"]
closed = np.sqrt(2 * swaps * (np.pi / 2) ** 2 + 2 * np.sum(split.angles**2))
print("||z||_2 =", sol.norm_2, " from angles:", closed)
