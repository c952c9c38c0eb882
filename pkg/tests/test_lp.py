import re

import numpy as np
import pytest

from routespec import (ProjectNetwork, build_lp, completion_time, enumerate_paths, export_lp,
                       incidence_matrix)
from routespec.generators import random_networks

from conftest import T1


def parse_constraints(text):
    """Read back ``name: terms = rhs`` rows of the Subject To section."""
    body = text.split("Subject To")[1].split("Bounds")[0]
    rows = []
    for line in body.strip().splitlines():
        lhs, rhs = line.split(":", 1)[1].rsplit("=", 1)
        coefs = {}
        for sign, coef, var in re.findall(r"([+-]?)\s*(\d*\.?\d*)\s*x_(\d+)", lhs):
            c = float(coef) if coef else 1.0
            coefs[int(var)] = -c if sign == "-" else c
        rows.append((coefs, float(rhs)))
    return rows


def test_toy_lp_text(toy):
    text = export_lp(toy, T1)
    assert "Maximize\n obj: 5 x_1 + 5 x_2 + 2 x_3 + 5 x_4 + 5 x_5\n" in text
    for line in [" c1: x_1 + x_2 = 1", " c2: - x_1 + x_3 + x_4 = 0",
                 " c3: - x_2 - x_3 + x_5 = 0", " c4: - x_4 - x_5 = -1"]:
        assert line + "\n" in text
    assert text.index("Maximize") < text.index("Subject To") < text.index("Bounds") < text.index("End")
    assert export_lp(toy, T1) == text


def test_single_activity_lp():
    net = ProjectNetwork.from_activities([("A1", "s", "f", 3)])
    text = export_lp(net)
    assert " obj: 3 x_1\n" in text and " c1: x_1 = 1\n" in text and " c2: - x_1 = -1\n" in text


def test_coefficients_twelve_significant_digits():
    net = ProjectNetwork.from_activities([("A1", "s", "f", 1 / 3)])
    assert " obj: 0.333333333333 x_1\n" in export_lp(net)


def test_constraints_are_incidence_matrix():
    rng = np.random.default_rng(2)
    for net in random_networks(rng, 20):
        model = build_lp(net)
        H = incidence_matrix(net).matrix
        np.testing.assert_array_equal(model.constraints, H)
        assert sorted(model.rhs.tolist()) == [-1] + [0] * (len(net.nodes) - 2) + [1]
        back = np.zeros_like(H, dtype=float)
        rhs = []
        for i, (coefs, b) in enumerate(parse_constraints(model.to_lp())):
            for j, c in coefs.items():
                back[i, j - 1] = c
            rhs.append(b)
        np.testing.assert_array_equal(back, H)
        np.testing.assert_array_equal(rhs, model.rhs)


def solve_lp_file(path):
    highspy = pytest.importorskip("highspy")
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    assert h.readModel(str(path)) == highspy.HighsStatus.kOk
    h.run()
    assert h.getModelStatus() == highspy.HighsModelStatus.kOptimal
    return h.getInfo().objective_function_value


def test_external_solver_optimum(tmp_path, toy):
    path = tmp_path / "toy.lp"
    path.write_text(export_lp(toy, T1))
    assert abs(solve_lp_file(path) - 12) <= 1e-6
    rng = np.random.default_rng(4)
    for k, net in enumerate(random_networks(rng, 20)):
        path = tmp_path / f"net{k}.lp"
        path.write_text(export_lp(net))
        assert abs(solve_lp_file(path) - completion_time(enumerate_paths(net), net.durations)) <= 1e-6
