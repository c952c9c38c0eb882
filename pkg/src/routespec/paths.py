"""Simple start-to-finish paths and the 0/1 route matrix built from them."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .errors import PathBudgetExceeded, RouteSpecError, ValidationError
from .network import ProjectNetwork, topological_order, validate

DEFAULT_MAX_PATHS = 100_000
ENV_MAX_PATHS = "ROUTESPEC_MAX_PATHS"


@dataclass(frozen=True)
class SimplePath:
    index: int
    activity_sequence: tuple[str, ...]


@dataclass(frozen=True)
class RouteMatrix:
    """Rows are simple paths, columns are activities in declaration order."""

    paths: tuple[SimplePath, ...]
    matrix: np.ndarray
    activity_ids: tuple[str, ...]

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def n_paths(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_activities(self) -> int:
        return self.matrix.shape[1]

    def to_json(self) -> str:
        doc = {
            "activities": list(self.activity_ids),
            "paths": [list(p.activity_sequence) for p in self.paths],
            "matrix": self.matrix.astype(int).tolist(),
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.activity_ids)
        w.writerows(self.matrix.astype(int).tolist())
        return buf.getvalue()


def default_max_paths() -> int:
    """Path budget from ``ROUTESPEC_MAX_PATHS`` if set, else the built-in default."""
    raw = os.environ.get(ENV_MAX_PATHS)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise RouteSpecError(f"{ENV_MAX_PATHS} must be an integer, got {raw!r}") from None
    return DEFAULT_MAX_PATHS


def _require_valid(network):
    report = validate(network)
    if not report.ok:
        raise ValidationError("invalid project network: " + "; ".join(report.violations),
                              report.violations)


def count_paths(network: ProjectNetwork, limit: int | None = None) -> int:
    """Number of simple start-to-finish paths, by dynamic programming over
    the topological order (no enumeration).

    Python integers do not overflow; ``limit`` (default ``sys.maxsize``) is
    the representable range and a larger count raises OverflowError.
    """
    _require_valid(network)
    limit = sys.maxsize if limit is None else limit
    ways = dict.fromkeys(network.nodes, 0)
    ways[network.start_node] = 1
    out = network.out_activities()
    for n in topological_order(network):
        for a in out[n]:
            ways[a.sink] += ways[n]
    total = ways[network.finish_node]
    if total > limit:
        raise OverflowError(f"path count {total} exceeds representable range {limit}")
    return total


def downstream_counts(network: ProjectNetwork) -> dict[str, int]:
    """Number of paths from each node to the finish node."""
    ways = dict.fromkeys(network.nodes, 0)
    ways[network.finish_node] = 1
    out = network.out_activities()
    for n in reversed(topological_order(network)):
        for a in out[n]:
            ways[n] += ways[a.sink]
    return ways


def enumerate_paths(network: ProjectNetwork, max_paths: int | None = None) -> RouteMatrix:
    """Depth-first enumeration of every simple path.

    At each node the outgoing activities are expanded narrowest branch
    first: ascending number of paths from the activity's sink to the finish,
    ties by declaration order.  The row order is therefore reproducible.
    Raises PathBudgetExceeded before enumerating if the path count is above
    ``max_paths``.
    """
    budget = default_max_paths() if max_paths is None else max_paths
    total = count_paths(network)
    if total > budget:
        raise PathBudgetExceeded(total, budget)

    ways = downstream_counts(network)
    out = {n: sorted(acts, key=lambda a: (ways[a.sink], a.index))
           for n, acts in network.out_activities().items()}
    finish = network.finish_node
    rows = []
    # stack of (node, iterator over its unexplored outgoing activities)
    stack = [(network.start_node, iter(out[network.start_node]))]
    trail = []
    while stack:
        node, it = stack[-1]
        a = next(it, None)
        if a is None:
            stack.pop()
            if trail:
                trail.pop()
            continue
        trail.append(a)
        if a.sink == finish:
            rows.append(tuple(trail))
            trail.pop()
        else:
            stack.append((a.sink, iter(out[a.sink])))

    R = np.zeros((len(rows), network.n_activities), dtype=np.int64)
    paths = []
    for i, seq in enumerate(rows):
        for a in seq:
            R[i, a.index] = 1
        paths.append(SimplePath(i, tuple(a.id for a in seq)))
    R.setflags(write=False)
    return RouteMatrix(tuple(paths), R, tuple(network.activity_ids))


def route_matrix_from_array(matrix, activity_ids=None) -> RouteMatrix:
    """Wrap a raw 0/1 array as a RouteMatrix (no network behind it)."""
    R = np.asarray(matrix, dtype=np.int64)
    if R.ndim != 2 or not np.isin(R, (0, 1)).all():
        raise ValueError("route matrix must be a 2-D 0/1 array")
    ids = tuple(activity_ids) if activity_ids is not None else tuple(f"A{j + 1}" for j in range(R.shape[1]))
    paths = tuple(SimplePath(i, tuple(ids[j] for j in np.flatnonzero(R[i]))) for i in range(R.shape[0]))
    R = R.copy()
    R.setflags(write=False)
    return RouteMatrix(paths, R, ids)
