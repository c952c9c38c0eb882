"""
Topological relevance and spectral networks
===========================================

The SVD of the route matrix ranks paths and activities by how much of the
network's structure they carry.  Keeping only the leading rank-one terms and
thresholding gives a compressed picture of the network.
"""

import numpy as np

import routespec as rs
from routespec.generators import diamond_chain, toy_network

net = toy_network()
R = rs.enumerate_paths(net)
dec = rs.svd(R)
np.set_printoptions(precision=3, suppress=True)

print("singular values:", dec.sigma)
print("U =\n", dec.U)
print("Vt =\n", dec.Vt)

# the dominant singular vectors point at the most relevant path and activities
rel = rs.relevance(dec)
print("path scores:", rel.path_scores, "-> most relevant:", [f"R{i + 1}" for i in rel.top_paths])
print("activity scores:", rel.activity_scores, "-> most relevant:", rel.top_activity_ids)

# each term sigma_i u_i v_i is a "spectral network"
exp = rs.spectral_networks(dec)
for i, G in enumerate(exp.terms, start=1):
    print(f"G{i} =\n", G)

# thresholding the partial sums
for k in range(1, exp.rank + 1):
    print(f"k={k}, threshold 0.6:\n", rs.threshold_reconstruct(exp, k, 0.6))
print("smallest k reproducing R at 0.6:", rs.minimal_spectral_order(exp, 0.6))
print("smallest k reproducing R at 0.95:", rs.minimal_spectral_order(exp, 0.95))

# a longer chain of diamonds: how many terms are needed?
chain = rs.enumerate_paths(diamond_chain(4))
cexp = rs.spectral_networks(rs.svd(chain))
print("diamond chain: rank", cexp.rank, "paths", chain.n_paths,
      "minimal order at 0.5:", rs.minimal_spectral_order(cexp, 0.5))
