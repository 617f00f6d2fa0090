import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzyswarm.algorithms import (Algorithm, GpsParams, GsaParams, PsoParams,
                                   PsogsaParams, compute_gsa_kinematics,
                                   compute_masses, gps_velocity,
                                   gravitational_constant, gsa_velocity,
                                   inertia_weight, position_update,
                                   pso_velocity, psogsa_velocity, step)
from fuzzyswarm.core import (SearchSpace, evaluate_swarm, initialize_population,
                             make_rng)
from fuzzyswarm.functions import benchmark


class ConstRng:
    """Stub stream returning a fixed value for every draw."""

    def __init__(self, value):
        self.value = value

    def random(self, size=None):
        if size is None:
            return self.value
        return np.full(size, self.value)


def make_state(positions, fitness, space=None):
    positions = np.asarray(positions, dtype=float)
    space = space or SearchSpace.box(-100, 100, positions.shape[1])
    state = initialize_population(space, positions.shape[0], make_rng(0))
    state.positions = positions.copy()
    state.pbest_positions = positions.copy()
    state.fitness = np.asarray(fitness, dtype=float)
    state.pbest_fitness = state.fitness.copy()
    i = int(np.argmin(state.fitness))
    state.gbest_position = positions[i].copy()
    state.gbest_fitness = float(state.fitness[i])
    return state


# --- gravitational constant ---

def test_gravitational_constant_values():
    p = GsaParams(g0=100.0, alpha_g=20.0)
    assert gravitational_constant(0, 500, p) == 100.0
    expected = 100.0 * math.exp(-20.0)
    assert gravitational_constant(500, 500, p) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        gravitational_constant(0, 0, p)


def test_gravitational_constant_strictly_decreasing():
    p = GsaParams()
    values = [gravitational_constant(t, 100, p) for t in range(0, 101, 5)]
    assert all(a > b for a, b in zip(values, values[1:]))


# --- masses ---

def test_masses_hand_case_minimize():
    raw, masses = compute_masses([1.0, 2.0, 3.0], "minimize")
    assert np.allclose(raw, [1.0, 0.5, 0.0])
    assert np.allclose(masses, [2 / 3, 1 / 3, 0.0])


def test_masses_hand_case_maximize():
    _, masses = compute_masses([1.0, 2.0, 3.0], "maximize")
    assert np.allclose(masses, [0.0, 1 / 3, 2 / 3])


def test_masses_degenerate_equal():
    _, masses = compute_masses([4.0, 4.0, 4.0, 4.0])
    assert np.allclose(masses, 0.25)


@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=40))
@settings(max_examples=200, deadline=None)
def test_mass_normalization_property(fitnesses):
    _, masses = compute_masses(fitnesses)
    assert abs(masses.sum() - 1.0) <= 1e-12
    assert np.all(masses >= 0.0) and np.all(masses <= 1.0 + 1e-15)


# --- kinematics ---

def test_kinematics_identical_positions_finite():
    state = make_state([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])
    kin = compute_gsa_kinematics(state, GsaParams(), 0, 100, ConstRng(1.0))
    assert np.all(np.isfinite(kin.total_force))
    assert np.all(kin.total_force == 0.0)  # x_j - x_i = 0 everywhere


def test_kinematics_zero_mass_agent_zero_acceleration():
    state = make_state([[0.0], [1.0], [2.0]], [1.0, 2.0, 3.0])
    kin = compute_gsa_kinematics(state, GsaParams(), 0, 100, ConstRng(1.0))
    assert np.all(kin.acceleration[2] == 0.0)  # worst agent has mass 0


def test_kinematics_three_agents_hand_computed():
    # agents on a line at 0, 1, 2 with fitnesses 1, 2, 3 -> masses 2/3, 1/3, 0
    eps = 1e-10
    g = 100.0  # t=0 so the exponential is 1
    state = make_state([[0.0], [1.0], [2.0]], [1.0, 2.0, 3.0])
    kin = compute_gsa_kinematics(state, GsaParams(g0=100.0, alpha_g=20.0, epsilon=eps),
                                 0, 500, ConstRng(1.0))
    f0 = g * ((2 / 3) * (1 / 3)) / (1.0 + eps) * (1.0 - 0.0)
    f1 = g * ((1 / 3) * (2 / 3)) / (1.0 + eps) * (0.0 - 1.0)
    assert kin.total_force[0, 0] == pytest.approx(f0, abs=1e-12)
    assert kin.total_force[1, 0] == pytest.approx(f1, abs=1e-12)
    assert kin.total_force[2, 0] == pytest.approx(0.0, abs=1e-12)
    assert kin.acceleration[0, 0] == pytest.approx(f0 / (2 / 3), abs=1e-12)
    assert kin.acceleration[1, 0] == pytest.approx(f1 / (1 / 3), abs=1e-12)
    assert kin.acceleration[2, 0] == 0.0
    assert kin.g_now == 100.0


def test_pairwise_distance_matrix_properties():
    rng = make_rng(123)
    state = make_state(rng.uniform(-5, 5, (6, 3)), rng.random(6))
    kin = compute_gsa_kinematics(state, GsaParams(), 3, 10, make_rng(1))
    d = kin.pairwise_distance
    assert np.allclose(d, d.T)
    assert np.all(np.diag(d) == 0.0)
    assert np.all(d >= 0.0)
    # spot-check one entry against the direct norm
    direct = np.linalg.norm(state.positions[0] - state.positions[3])
    assert d[0, 3] == pytest.approx(direct, rel=1e-12)


# --- velocity rules ---

def test_pso_velocity_fixed_point():
    # agent sitting on its own pbest = gbest with zero velocity stays put
    x = np.array([[2.0, -1.0]])
    v = pso_velocity(np.zeros((1, 2)), x, x.copy(), x[0].copy(), 0, 10,
                     PsoParams(), make_rng(0))
    assert np.all(v == 0.0)


def test_pso_velocity_pure_inertia():
    v0 = np.array([[1.0, -2.0]])
    p = PsoParams(c1=0.0, c2=0.0, w_start=0.9, w_end=0.4)
    v = pso_velocity(v0, np.zeros((1, 2)), np.ones((1, 2)), np.ones(2), 0, 10, p, make_rng(0))
    assert np.allclose(v, 0.9 * v0)


def test_pso_velocity_hand_case():
    # w=1, c1=2, c2=0, r forced to 0.5, pbest - x = 4 -> v' = v + 2*0.5*4
    p = PsoParams(c1=2.0, c2=0.0, w_start=1.0, w_end=1.0)
    v = pso_velocity(np.array([[1.0]]), np.array([[0.0]]), np.array([[4.0]]),
                     np.array([0.0]), 0, 10, p, ConstRng(0.5))
    assert v[0, 0] == pytest.approx(1.0 + 2.0 * 0.5 * 4.0)


def test_inertia_weight_schedule():
    p = PsoParams()
    assert inertia_weight(0, 100, p) == 0.9
    assert inertia_weight(100, 100, p) == pytest.approx(0.4)
    assert inertia_weight(50, 100, p) == pytest.approx(0.65)


def test_gsa_velocity_cases():
    a = np.array([[3.0]])
    assert gsa_velocity(np.zeros((1, 1)), a, make_rng(0))[0, 0] == 3.0
    v = gsa_velocity(np.array([[2.0]]), np.zeros((1, 1)), ConstRng(1.0))
    assert v[0, 0] == 2.0
    v = gsa_velocity(np.array([[2.0]]), np.array([[3.0]]), ConstRng(0.5))
    assert v[0, 0] == 4.0


def test_gps_velocity_limits():
    v_pso = np.array([[2.0]])
    v_gsa = np.array([[4.0]])
    p = GpsParams(c3=1.0, c4=1.0)
    assert gps_velocity(v_pso, v_gsa, p, ConstRng(1.0))[0, 0] == 2.0
    assert gps_velocity(v_pso, v_gsa, p, ConstRng(0.0))[0, 0] == 4.0
    assert gps_velocity(v_pso, v_gsa, p, ConstRng(0.5))[0, 0] == 3.0


def test_psogsa_velocity_cases():
    p = PsogsaParams(c1=1.0, c2=1.0)
    v = psogsa_velocity(np.array([[1.0]]), np.array([[0.0]]), np.array([[2.0]]),
                        np.array([3.0]), p, ConstRng(1.0))
    assert v[0, 0] == 6.0
    # at gbest with zero acceleration: v' = rand * v
    v = psogsa_velocity(np.array([[2.0]]), np.array([[3.0]]), np.zeros((1, 1)),
                        np.array([3.0]), p, ConstRng(0.25))
    assert v[0, 0] == 0.5
    # c1 = c2 = 0: pure damped inertia
    p0 = PsogsaParams(c1=0.0, c2=0.0)
    v = psogsa_velocity(np.array([[4.0]]), np.array([[0.0]]), np.array([[9.0]]),
                        np.array([7.0]), p0, ConstRng(0.5))
    assert v[0, 0] == 2.0


def test_velocity_updates_affine_in_previous_velocity():
    # doubling the previous velocity doubles the inertia contribution exactly
    p = PsogsaParams(c1=0.0, c2=0.0)
    v1 = psogsa_velocity(np.array([[1.5]]), np.zeros((1, 1)), np.zeros((1, 1)),
                         np.zeros(1), p, ConstRng(0.5))
    v2 = psogsa_velocity(np.array([[3.0]]), np.zeros((1, 1)), np.zeros((1, 1)),
                         np.zeros(1), p, ConstRng(0.5))
    assert v2[0, 0] == 2.0 * v1[0, 0]


def test_position_update_clamps():
    space = SearchSpace.box(-5, 5, 1)
    assert position_update(np.array([[0.0]]), np.array([[1.0]]), space)[0, 0] == 1.0
    assert position_update(np.array([[4.0]]), np.array([[3.0]]), space)[0, 0] == 5.0
    assert position_update(np.array([[2.0]]), np.array([[0.0]]), space)[0, 0] == 2.0


# --- full steps ---

def test_step_gbest_monotone_for_all_algorithms():
    problem = benchmark("F9")
    for algo in (Algorithm.PSO, Algorithm.GSA, Algorithm.GPS, Algorithm.PSOGSA):
        rng = make_rng(17)
        state = initialize_population(problem.space, 20, rng)
        evaluate_swarm(state, problem, rng)
        params = {"PSO": PsoParams(), "GSA": GsaParams(), "GPS": GpsParams(),
                  "PSOGSA": PsogsaParams()}[algo.value]
        history = [state.gbest_fitness]
        for t in range(50):
            step(algo, state, params, t, 50, problem, rng)
            history.append(state.gbest_fitness)
        assert all(a >= b for a, b in zip(history, history[1:])) or \
            np.all(np.diff(history) <= 0)
        assert state.iteration == 50
        assert np.all(state.positions >= problem.space.lower)
        assert np.all(state.positions <= problem.space.upper)


def test_step_rejects_mutated_ids_and_unknown():
    problem = benchmark("F1")
    rng = make_rng(0)
    state = initialize_population(problem.space, 5, rng)
    evaluate_swarm(state, problem, rng)
    with pytest.raises(ValueError):
        step(Algorithm.MGPS, state, GpsParams(), 0, 10, problem, rng)
    with pytest.raises(ValueError):
        step("NOPE", state, GpsParams(), 0, 10, problem, rng)


def test_gps_step_reduces_to_pso_and_gsa():
    # r3 forced to 1 with c3=1 reproduces the PSO velocity; r3=0, c4=1 the GSA one
    problem = benchmark("F16")
    rng = make_rng(4)
    state = initialize_population(problem.space, 8, rng)
    evaluate_swarm(state, problem, rng)
    kin = compute_gsa_kinematics(state, GsaParams(), 2, 10, ConstRng(0.7))
    v_pso = pso_velocity(state.velocities, state.positions, state.pbest_positions,
                         state.gbest_position, 2, 10, PsoParams(), ConstRng(0.3))
    v_gsa = gsa_velocity(state.velocities, kin.acceleration, ConstRng(0.6))
    p = GpsParams(c3=1.0, c4=1.0)
    assert np.allclose(gps_velocity(v_pso, v_gsa, p, ConstRng(1.0)), v_pso)
    assert np.allclose(gps_velocity(v_pso, v_gsa, p, ConstRng(0.0)), v_gsa)
