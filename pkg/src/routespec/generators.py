"""Synthetic project networks for experiments and tests."""

from __future__ import annotations

import numpy as np

from .network import ProjectNetwork
from .paths import count_paths


def toy_network(durations=(5, 5, 2, 5, 5), max_durations=None) -> ProjectNetwork:
    """The four-node, five-activity example network used throughout the docs."""
    arcs = [("n1", "n2"), ("n1", "n3"), ("n2", "n3"), ("n2", "n4"), ("n3", "n4")]
    mx = max_durations if max_durations is not None else [None] * 5
    return ProjectNetwork.from_activities(
        [(f"A{j + 1}", s, f, d, m) for j, ((s, f), d, m) in enumerate(zip(arcs, durations, mx))])


def diamond_chain(k: int, duration: float = 1.0) -> ProjectNetwork:
    """k diamonds in series; 2**k paths, each of 2k activities."""
    acts = []
    for i in range(k):
        a, b, c, d = f"v{2 * i}", f"u{i}", f"w{i}", f"v{2 * i + 2}"
        acts += [(f"D{i}a", a, b, duration), (f"D{i}b", a, c, duration),
                 (f"D{i}c", b, d, duration), (f"D{i}d", c, d, duration)]
    return ProjectNetwork.from_activities(acts)


def random_network(rng: np.random.Generator, n_nodes: int, edge_prob: float = 0.3,
                   max_activities: int | None = None, low: float = 0.0, high: float = 10.0,
                   parallel_prob: float = 0.0) -> ProjectNetwork:
    """Random valid network on nodes ``0..n_nodes-1`` in topological order.

    Every node except the first gets an arc from an earlier node and every
    node except the last gets an arc to a later one, so node 0 is the unique
    start, the last node the unique finish, and nothing dangles.  Extra arcs
    are added with probability ``edge_prob`` until ``max_activities``.
    Durations are uniform on ``[low, high]``.
    """
    arcs = set()
    for j in range(1, n_nodes):
        arcs.add((int(rng.integers(0, j)), j))
    for i in range(n_nodes - 1):
        if not any(s == i for s, _ in arcs):
            arcs.add((i, int(rng.integers(i + 1, n_nodes))))
    cap = max_activities if max_activities is not None else n_nodes * n_nodes
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if len(arcs) >= cap:
                break
            if (i, j) not in arcs and rng.random() < edge_prob:
                arcs.add((i, j))
    arcs = sorted(arcs)
    arcs += [a for a in arcs if rng.random() < parallel_prob]
    order = rng.permutation(len(arcs))
    acts = [(f"A{k + 1}", f"n{arcs[i][0]}", f"n{arcs[i][1]}", float(rng.uniform(low, high)))
            for k, i in enumerate(order)]
    return ProjectNetwork.from_activities(acts, nodes=[f"n{i}" for i in range(n_nodes)])


def random_networks(rng: np.random.Generator, count: int, min_nodes: int = 4, max_nodes: int = 12,
                    max_paths: int = 500, **kwargs):
    """Yield ``count`` random networks whose path count is at most ``max_paths``."""
    made = 0
    while made < count:
        n = int(rng.integers(min_nodes, max_nodes + 1))
        net = random_network(rng, n, **kwargs)
        if count_paths(net) <= max_paths:
            made += 1
            yield net
