"""Longest-path linear program in CPLEX LP text format.

Maximize the total duration of a unit flow from the start node to the
finish node; the optimum equals the project completion time.  The model is
written out for an external solver, nothing is solved here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .network import ProjectNetwork, flow_rhs, incidence_matrix


@dataclass(frozen=True)
class LpModel:
    objective: np.ndarray
    constraints: np.ndarray
    rhs: np.ndarray
    node_order: tuple[str, ...]

    @property
    def variables(self) -> list[str]:
        return [f"x_{j + 1}" for j in range(len(self.objective))]

    def to_lp(self) -> str:
        names = self.variables
        lines = ["\\ longest-path model: maximize total duration of a unit start-finish flow",
                 "\\ rows: " + " ".join(f"c{i + 1}={n}" for i, n in enumerate(self.node_order)),
                 "Maximize",
                 " obj: " + _linear(self.objective, names, keep_zeros=True),
                 "Subject To"]
        for i, node in enumerate(self.node_order):
            lines.append(f" c{i + 1}: {_linear(self.constraints[i], names)} = {_num(self.rhs[i])}")
        lines.append("Bounds")
        lines.extend(f" {v} >= 0" for v in names)
        lines.append("End")
        return "\n".join(lines) + "\n"


def _num(x) -> str:
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def _linear(coefs, names, keep_zeros=False) -> str:
    parts = []
    for c, name in zip(coefs, names):
        if c == 0 and not keep_zeros:
            continue
        mag = abs(float(c))
        sign = "-" if c < 0 else "+"
        term = name if mag == 1 else f"{_num(mag)} {name}"
        if not parts:
            parts.append(term if sign == "+" else f"- {term}")
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts) if parts else f"0 {names[0]}"


def build_lp(network: ProjectNetwork, t=None) -> LpModel:
    """Assemble the model: objective t, coefficients from the ungrounded
    incidence matrix, right-hand side +1 at start and -1 at finish."""
    t = network.durations if t is None else np.asarray(t, dtype=float)
    if t.shape != (network.n_activities,):
        raise DimensionError(f"duration vector has shape {t.shape}, expected ({network.n_activities},)")
    H = incidence_matrix(network, grounded=False)
    return LpModel(t.copy(), H.matrix, flow_rhs(network, H.node_order), H.node_order)


def export_lp(network: ProjectNetwork, t=None) -> str:
    return build_lp(network, t).to_lp()
