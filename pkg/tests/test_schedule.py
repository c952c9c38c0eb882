import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from routespec import (DimensionError, ProjectNetwork, RouteSpecError, apply_duration_shift,
                       completion_time, critical_paths, enumerate_paths, forward_pass,
                       nullspace_basis, path_durations, project_stress, schedule, total_float)
from routespec.generators import random_network, random_networks

from conftest import T1, T2, TOY_R


def test_path_durations_toy():
    np.testing.assert_array_equal(path_durations(TOY_R, T1), [10, 12, 10])
    np.testing.assert_allclose(path_durations(TOY_R, T2), [10, 12, 10], rtol=0, atol=1e-12)
    np.testing.assert_array_equal(path_durations(TOY_R, np.zeros(5)), np.zeros(3))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        path_durations(TOY_R, [1, 2, 3])


def test_completion_time():
    t = T1
    assert completion_time(TOY_R, t) == max(t[1] + t[4], t[0] + t[2] + t[4], t[0] + t[3]) == 12
    assert completion_time([[1]], [7.0]) == 7


def test_forward_pass_toy(toy):
    rep = forward_pass(toy, T1)
    assert rep.early_times == {"n1": 0, "n2": 5, "n3": 7, "n4": 12}
    assert rep.completion_time == 12
    single = ProjectNetwork.from_activities([("A1", "s", "f", 7)])
    assert forward_pass(single).early_times == {"s": 0, "f": 7}


def test_forward_pass_matches_route_matrix_on_random_networks():
    rng = np.random.default_rng(7)
    for net in random_networks(rng, 200, max_paths=500):
        R = enumerate_paths(net)
        t = rng.uniform(0, 10, net.n_activities)
        assert abs(forward_pass(net, t).completion_time - completion_time(R, t)) <= 1e-12


def test_critical_paths():
    assert critical_paths(TOY_R, T1) == (1,)
    assert critical_paths(TOY_R, np.ones(5)) == (1,)
    parallel = enumerate_paths(ProjectNetwork.from_activities([("A1", "s", "f", 2), ("A2", "s", "f", 2)]))
    assert critical_paths(parallel, [2.0, 2.0]) == (0, 1)
    assert critical_paths(TOY_R, [5, 5, 2 - 1e-12, 5, 5]) == (1,)
    assert critical_paths(TOY_R, [5, 5, 0, 5, 5], tie_tol=0) == (0, 1, 2)


def test_total_float():
    np.testing.assert_array_equal(total_float(TOY_R, T1), [0, 2, 0, 2, 0])
    np.testing.assert_array_equal(total_float([[1]], [4.0]), [0])
    np.testing.assert_array_equal(total_float(TOY_R, np.ones(5)), [0, 1, 0, 1, 0])
    with pytest.raises(RouteSpecError):
        total_float([[1, 0]], [1.0, 1.0])


def test_total_float_equals_backward_pass_float():
    rng = np.random.default_rng(3)
    for net in random_networks(rng, 50, max_paths=200):
        t = rng.uniform(0, 10, net.n_activities)
        R = enumerate_paths(net)
        early = forward_pass(net, t).early_times
        late = dict.fromkeys(net.nodes, math.inf)
        late[net.finish_node] = early[net.finish_node]
        out = net.out_activities()
        for n in sorted(net.nodes, key=lambda v: -early[v]):
            for a in out[n]:
                late[n] = min(late[n], late[a.sink] - t[a.index])
        classical = [late[a.sink] - early[a.source] - t[a.index] for a in net.activities]
        np.testing.assert_allclose(total_float(R, t), classical, atol=1e-9)


def test_schedule_report(toy, toy_R):
    rep = schedule(toy, toy_R)
    assert rep.completion_time == 12 and rep.critical_path_indices == (1,)
    fl = rep.total_float
    assert fl.min() == 0
    for i in rep.critical_path_indices:
        assert (fl[TOY_R[i] == 1] == 0).all()


def test_stress_examples():
    for p in (1, 2, 3.5, math.inf):
        assert project_stress(TOY_R, T1, T1, p) == 1.0
    tmax = np.array([6.0, 6, 3, 6, 6])
    assert project_stress(TOY_R, T1, tmax, 2) == pytest.approx(math.sqrt(344) / math.sqrt(513), abs=1e-12)
    assert math.isclose(math.sqrt(344 / 513), 0.8189, abs_tol=1e-4)


def test_stress_errors():
    with pytest.raises(RouteSpecError):
        project_stress(TOY_R, T1, None)
    with pytest.raises(ValueError):
        project_stress(TOY_R, T1, T1, 0.5)
    with pytest.raises(ValueError):
        project_stress(TOY_R, T1 + 1, T1)
    with pytest.raises(ZeroDivisionError):
        project_stress(TOY_R, np.zeros(5), np.zeros(5))


def test_duration_shift():
    t, same = apply_duration_shift(T1, [-1, 0, 1, 1, 0], TOY_R)
    np.testing.assert_array_equal(t, [4, 5, 3, 6, 5])
    assert same
    np.testing.assert_array_equal(path_durations(TOY_R, t), [10, 12, 10])

    t, same = apply_duration_shift(T1, np.zeros(5), TOY_R)
    np.testing.assert_array_equal(t, T1)
    assert same

    np.testing.assert_array_equal(TOY_R @ [1, 0, 0, 0, 0], [0, 1, 1])
    assert not apply_duration_shift(T1, [1, 0, 0, 0, 0], TOY_R)[1]

    with pytest.raises(ValueError):
        apply_duration_shift(T1, [-6, 0, 0, 0, 0], TOY_R)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_nullspace_shift_invariance(seed):
    rng = np.random.default_rng(seed)
    net = random_network(rng, int(rng.integers(3, 10)), edge_prob=0.4)
    R = enumerate_paths(net)
    basis = nullspace_basis(R).as_array().astype(float)
    t = rng.uniform(20, 30, net.n_activities)
    delta = rng.uniform(-1, 1, basis.shape[0]) @ basis if basis.size else np.zeros(net.n_activities)
    shifted, same = apply_duration_shift(t, delta, R)
    assert same
    assert np.abs(R.matrix @ shifted - R.matrix @ t).max() <= 1e-9


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), p=st.sampled_from([1.0, 1.5, 2.0, 4.0, math.inf]))
def test_stress_is_monotone(seed, p):
    rng = np.random.default_rng(seed)
    net = random_network(rng, int(rng.integers(2, 9)), edge_prob=0.4)
    R = enumerate_paths(net)
    t_max = rng.uniform(1, 10, net.n_activities)
    t_hi = rng.uniform(0, 1, net.n_activities) * t_max
    t_lo = rng.uniform(0, 1, net.n_activities) * t_hi
    s_lo, s_hi = project_stress(R, t_lo, t_max, p), project_stress(R, t_hi, t_max, p)
    assert 0 <= s_lo <= s_hi + 1e-12
    assert s_hi <= 1 + 1e-12
