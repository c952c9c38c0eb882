"""
Project stress
==============

Stress compares path durations with the path durations obtained when every
activity takes its maximum duration.  A value of 1 means every path is at
its maximum.
"""

import math

import numpy as np

import routespec as rs
from routespec.generators import toy_network

t_max = np.array([6.0, 6, 3, 6, 6])
net = toy_network(max_durations=t_max)
R = rs.enumerate_paths(net)

for p in (1, 2, math.inf):
    print(f"p={p}: S(t)={rs.project_stress(R, net.durations, t_max, p):.4f}",
          f"S(t_max)={rs.project_stress(R, t_max, t_max, p):.1f}")

# configurations that differ by a nullspace vector share their stress
delta = np.array(rs.nullspace_basis(R).vectors[0], dtype=float) * 0.5
shifted, _ = rs.apply_duration_shift(net.durations, delta, R)
print("after a nullspace shift:", rs.project_stress(R, shifted, t_max, 2))

# stress grows as durations approach their maxima
for frac in np.linspace(0, 1, 6):
    print(f"{frac:.1f} * t_max -> {rs.project_stress(R, frac * t_max, t_max, 2):.3f}")
