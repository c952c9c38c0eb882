"""Completion time, critical paths, floats and stress of a scheduled network.

Route matrices may be passed as :class:`~routespec.paths.RouteMatrix` or as
plain 2-D arrays; duration vectors are 1-D float arrays in column order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, RouteSpecError
from .network import ProjectNetwork, topological_order
from .paths import RouteMatrix


@dataclass(frozen=True)
class ScheduleReport:
    completion_time: float
    early_times: dict = field(default_factory=dict)
    critical_path_indices: tuple[int, ...] = ()
    total_float: np.ndarray | None = None

    def to_json(self, activity_ids=None) -> str:
        doc = {
            "completion_time": self.completion_time,
            "early_times": dict(self.early_times),
            "critical_path_indices": list(self.critical_path_indices),
        }
        if self.total_float is not None:
            fl = [float(x) for x in self.total_float]
            doc["total_float"] = dict(zip(activity_ids, fl)) if activity_ids else fl
        return json.dumps(doc, indent=2) + "\n"


def as_matrix(R) -> np.ndarray:
    M = R.matrix if isinstance(R, RouteMatrix) else np.asarray(R)
    if M.ndim != 2:
        raise DimensionError(f"route matrix must be 2-D, got shape {M.shape}")
    return M


def _vector(t, n, what="duration vector"):
    v = np.asarray(t, dtype=float)
    if v.ndim != 1 or v.shape[0] != n:
        raise DimensionError(f"{what} has shape {v.shape}, expected ({n},)")
    return v


def path_durations(R, t) -> np.ndarray:
    """Duration of every path, the product R t."""
    M = as_matrix(R)
    return M @ _vector(t, M.shape[1])


def completion_time(R, t) -> float:
    """Project completion time max(R t).

    For t >= 0 every path duration is nonnegative, so the maximum entry is
    the infinity norm of R t.
    """
    return float(np.max(path_durations(R, t)))


def forward_pass(network: ProjectNetwork, t=None) -> ScheduleReport:
    """Classical early-time forward pass in topological order."""
    t = network.durations if t is None else _vector(t, network.n_activities)
    early = {network.start_node: 0.0}
    incoming = network.in_activities()
    for n in topological_order(network):
        if n == network.start_node:
            continue
        early[n] = max(early[a.source] + float(t[a.index]) for a in incoming[n])
    early = {n: early[n] for n in network.nodes}
    return ScheduleReport(completion_time=early[network.finish_node], early_times=early)


def default_tie_tol(tau: float) -> float:
    return 1e-9 * max(1.0, abs(tau))


def critical_paths(R, t, tie_tol: float | None = None) -> tuple[int, ...]:
    """Row indices of every path within ``tie_tol`` of the completion time."""
    d = path_durations(R, t)
    tau = float(d.max())
    tol = default_tie_tol(tau) if tie_tol is None else tie_tol
    return tuple(int(i) for i in np.flatnonzero(d >= tau - tol))


def total_float(R, t) -> np.ndarray:
    """Path float of every activity: completion time minus the longest path
    that contains the activity."""
    M = as_matrix(R)
    d = path_durations(M, t)
    on_path = M.astype(bool)
    missing = np.flatnonzero(~on_path.any(axis=0))
    if missing.size:
        raise RouteSpecError(f"activities {missing.tolist()} lie on no path")
    longest = np.where(on_path, d[:, None], -np.inf).max(axis=0)
    return np.maximum(d.max() - longest, 0.0)


def schedule(network: ProjectNetwork, R, t=None, tie_tol=None) -> ScheduleReport:
    """Forward pass plus critical paths and floats in one report."""
    t = network.durations if t is None else t
    fp = forward_pass(network, t)
    return ScheduleReport(
        completion_time=completion_time(R, t),
        early_times=fp.early_times,
        critical_path_indices=critical_paths(R, t, tie_tol),
        total_float=total_float(R, t),
    )


def _norm(v, p):
    return float(np.linalg.norm(v, ord=np.inf if math.isinf(p) else p))


def project_stress(R, t, t_max, p=2) -> float:
    """Stress ``||R t||_p / ||R t_max||_p`` of a duration configuration."""
    if t_max is None:
        raise RouteSpecError("stress needs maximum durations for every activity")
    p = float(p)
    if not p >= 1:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    M = as_matrix(R)
    t = _vector(t, M.shape[1])
    t_max = _vector(t_max, M.shape[1], "maximum duration vector")
    if (t < 0).any() or (t > t_max).any():
        raise ValueError("durations must satisfy 0 <= t <= t_max")
    den = _norm(M @ t_max, p)
    if den == 0:
        raise ZeroDivisionError("every path has zero maximum duration")
    return _norm(M @ t, p) / den


def apply_duration_shift(t, delta, R, tol: float = 1e-9):
    """Return ``(t + delta, same_tau)``.

    ``same_tau`` is true when ``||R delta||_inf <= tol * max(1, max(R t))``,
    i.e. the shift lies numerically in the nullspace and no path duration
    changes.
    """
    M = as_matrix(R)
    t = _vector(t, M.shape[1])
    delta = _vector(delta, M.shape[1], "shift vector")
    shifted = t + delta
    if (shifted < 0).any():
        raise ValueError(f"shift makes durations negative at {np.flatnonzero(shifted < 0).tolist()}")
    scale = max(1.0, float(np.abs(M @ t).max(initial=0.0)))
    same = float(np.abs(M @ delta).max(initial=0.0)) <= tol * scale
    return shifted, bool(same)
