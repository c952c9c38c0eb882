"""Assemble every analysis of one network into a serializable report."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .network import ProjectNetwork
from .paths import RouteMatrix, enumerate_paths
from .schedule import (critical_paths, forward_pass, path_durations, project_stress,
                       total_float)
from .spectral import (least_squares_durations, minimal_spectral_order, nullspace_basis,
                       reachability, relevance, spectral_networks, svd)


@dataclass
class AnalysisOptions:
    max_paths: int | None = None
    rank_tol: float | None = None
    tie_tol: float | None = None
    score_tol: float = 1e-6
    threshold: float = 0.5
    stress_p: float = 2.0
    target_tau: list | None = None


@dataclass
class AnalysisReport:
    """Plain-data analysis results; ``data`` holds JSON-compatible values."""

    data: dict = field(default_factory=dict)

    def to_json(self, digits: int = 12) -> str:
        return json.dumps(round_floats(self.data, digits), indent=2) + "\n"

    def to_text(self) -> str:
        return render_text(self.data)


def round_floats(obj, digits=12):
    """Round every float to ``digits`` significant digits; infinities become strings."""
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        r = float(f"{obj:.{digits}g}")
        return 0.0 if r == 0 else r
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def _floats(a):
    return [float(x) for x in np.asarray(a).ravel()]


def analyze(network: ProjectNetwork, options: AnalysisOptions | None = None,
            route: RouteMatrix | None = None) -> AnalysisReport:
    opt = options or AnalysisOptions()
    R = route if route is not None else enumerate_paths(network, opt.max_paths)
    ids = list(network.activity_ids)
    t = network.durations
    d = path_durations(R, t)
    fp = forward_pass(network, t)
    crit = critical_paths(R, t, opt.tie_tol)
    fl = total_float(R, t)
    dec = svd(R, opt.rank_tol)
    rel = relevance(dec, opt.score_tol)
    ns = nullspace_basis(R)

    data = {
        "network": {
            "nodes": list(network.nodes),
            "start_node": network.start_node,
            "finish_node": network.finish_node,
            "activity_count": network.n_activities,
            "notes": list(network.notes),
        },
        "route_matrix": {
            "activities": ids,
            "paths": [list(p.activity_sequence) for p in R.paths],
            "matrix": R.matrix.astype(int).tolist(),
        },
        "schedule": {
            "durations": _floats(t),
            "path_durations": _floats(d),
            "completion_time": float(d.max()),
            "forward_pass_completion_time": fp.completion_time,
            "early_times": {n: float(v) for n, v in fp.early_times.items()},
            "critical_paths": list(crit),
            "critical_path_activities": [list(R.paths[i].activity_sequence) for i in crit],
            "total_float": dict(zip(ids, _floats(fl))),
        },
        "svd": {
            "singular_values": _floats(dec.sigma),
            "numerical_rank": dec.numerical_rank,
            "rank_tol": dec.rank_tol,
        },
        "relevance": {
            "dominant_index": rel.dominant_index,
            "path_scores": _floats(rel.path_scores),
            "activity_scores": dict(zip(ids, _floats(rel.activity_scores))),
            "top_paths": list(rel.top_paths),
            "top_activities": [ids[j] for j in rel.top_activities],
        },
        "spectral": {
            "threshold": float(opt.threshold),
            "minimal_order": (minimal_spectral_order(spectral_networks(dec), opt.threshold)
                              if dec.numerical_rank else None),
        },
        "nullspace": {
            "dimension": ns.dimension,
            "basis": [list(v) for v in ns.vectors],
        },
        "stress": None,
        "reachability": {
            "full_row_rank": dec.numerical_rank == R.n_paths,
        },
        "target": None,
    }
    t_max = network.max_durations
    if t_max is not None:
        data["stress"] = {"p": float(opt.stress_p),
                          "value": project_stress(R, t, t_max, opt.stress_p)}
    if opt.target_tau is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            t_star = least_squares_durations(dec, opt.target_tau)
        reach = reachability(dec, opt.target_tau)
        data["target"] = {
            "tau": _floats(opt.target_tau),
            "durations": _floats(t_star),
            "has_negative": bool((t_star < 0).any()),
            "reachable": reach.reachable,
            "residual": reach.residual,
        }
    return AnalysisReport(data)


def _fmt(x):
    if isinstance(x, str):
        return x
    return f"{x:.4g}"


def render_text(data: dict) -> str:
    net, sch, rm = data["network"], data["schedule"], data["route_matrix"]
    out = [f"network: {len(net['nodes'])} nodes, {net['activity_count']} activities, "
           f"start {net['start_node']}, finish {net['finish_node']}"]
    out += [f"  note: {n}" for n in net["notes"]]
    out.append(f"paths: {len(rm['paths'])}")
    for i, (p, dur) in enumerate(zip(rm["paths"], sch["path_durations"])):
        mark = "*" if i in sch["critical_paths"] else " "
        out.append(f" {mark} R{i + 1}: {' -> '.join(p)}  ({_fmt(dur)})")
    out.append(f"completion time: {_fmt(sch['completion_time'])}")
    out.append("total float: " + ", ".join(f"{k}={_fmt(v)}" for k, v in sch["total_float"].items()))
    sv = data["svd"]
    out.append("singular values: " + ", ".join(_fmt(s) for s in sv["singular_values"])
               + f"  (rank {sv['numerical_rank']})")
    rel = data["relevance"]
    out.append("most relevant paths: " + ", ".join(f"R{i + 1}" for i in rel["top_paths"]))
    out.append("most relevant activities: " + ", ".join(rel["top_activities"]))
    sp = data["spectral"]
    out.append(f"minimal spectral order at threshold {_fmt(sp['threshold'])}: {sp['minimal_order']}")
    ns = data["nullspace"]
    out.append(f"nullspace dimension {ns['dimension']}")
    out += ["  " + str(tuple(v)) for v in ns["basis"]]
    if data["stress"] is not None:
        p = data["stress"]["p"]
        out.append(f"stress (p={'inf' if p == float('inf') else _fmt(p)}): {_fmt(data['stress']['value'])}")
    out.append("every target path-duration vector reachable: "
               + ("yes" if data["reachability"]["full_row_rank"] else "no"))
    tg = data["target"]
    if tg is not None:
        out.append("target durations: " + ", ".join(_fmt(x) for x in tg["durations"])
                   + ("  (negative entries)" if tg["has_negative"] else ""))
        out.append(f"target reachable: {'yes' if tg['reachable'] else 'no'} (residual {_fmt(tg['residual'])})")
    return "\n".join(out) + "\n"
