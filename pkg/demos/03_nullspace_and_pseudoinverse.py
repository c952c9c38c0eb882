"""
Duration shifts that leave every path unchanged
===============================================

Vectors in the nullspace of R change activity durations without changing any
path duration.  The pseudoinverse goes the other way: from a wanted vector of
path durations to the smallest duration vector that produces it.
"""

import numpy as np

import routespec as rs
from routespec.generators import toy_network

net = toy_network()
R = rs.enumerate_paths(net)
t1 = net.durations

basis = rs.nullspace_basis(R)
print("nullspace dimension:", basis.dimension)
for v in basis.vectors:
    print("  ", v)

# move one unit along the first basis vector: A1 shorter, A3 and A4 longer
t, same = rs.apply_duration_shift(t1, basis.vectors[0], R)
print("shifted durations:", t, "path durations unchanged:", same, rs.path_durations(R, t))

# a shift outside the nullspace changes the schedule
print("lengthening A1 keeps paths:", rs.apply_duration_shift(t1, [1, 0, 0, 0, 0], R)[1])

# minimum-norm durations that give the path durations (10, 12, 10)
P = rs.pseudoinverse(R)
print("R+ * 8 =\n", np.round(P * 8, 12))
t2 = rs.least_squares_durations(R, [10, 12, 10])
print("t* =", t2, " |t*|^2 =", t2 @ t2, " vs |t1|^2 =", t1 @ t1)
print("t1 - t* lies in the nullspace:", rs.apply_duration_shift(t2, t1 - t2, R)[1])

# with as many independent paths as the rank, every target is reachable
print(rs.reachability(R, [3, 1, 4]))

# duplicate rows make some targets impossible
print(rs.reachability([[1, 1, 0], [1, 1, 0], [0, 1, 1]], [3, 4, 1]))
