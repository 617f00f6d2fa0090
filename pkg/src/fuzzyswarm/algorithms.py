"""Per-iteration update rules for PSO, GSA and their hybrids GPS and PSOGSA.

All velocity functions operate on whole-population arrays and consume the
run's random stream in a fixed, documented order so runs are reproducible:

* gravitational kinematics: one (N, N) uniform block, one draw per ordered
  (i, j) pair shared across dimensions;
* PSO velocities: one (N, D) block for the personal pull, then one for the
  social pull;
* GSA velocities: one (N, D) block for the inertia damping;
* GPS blending: one (N, 1) block, one draw per agent;
* PSOGSA velocities: one (N, D) block for the inertia damping.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import (Problem, RngStream, Sense, SwarmState, clamp_to_bounds,
                   evaluate_swarm, find_extremes)


class Algorithm(str, Enum):
    PSO = "PSO"
    GSA = "GSA"
    GPS = "GPS"
    PSOGSA = "PSOGSA"
    MGPS = "MGPS"
    MPSOGSA = "MPSOGSA"

    @property
    def base(self) -> "Algorithm":
        """Update rule actually stepped; mutation variants share their ancestor's."""
        return {Algorithm.MGPS: Algorithm.GPS, Algorithm.MPSOGSA: Algorithm.PSOGSA}.get(self, self)

    @property
    def mutated(self) -> bool:
        return self in (Algorithm.MGPS, Algorithm.MPSOGSA)


@dataclass(frozen=True)
class GsaParams:
    g0: float = 100.0
    alpha_g: float = 20.0
    epsilon: float = 1e-10

    def __post_init__(self):
        if self.g0 <= 0 or self.alpha_g <= 0 or self.epsilon <= 0:
            raise ValueError("g0, alpha_g and epsilon must all be positive")


@dataclass(frozen=True)
class PsoParams:
    c1: float = 2.0
    c2: float = 2.0
    w_start: float = 0.9
    w_end: float = 0.4

    def __post_init__(self):
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("acceleration coefficients must be non-negative")
        if not self.w_start >= self.w_end >= 0:
            raise ValueError("inertia schedule needs w_start >= w_end >= 0")


@dataclass(frozen=True)
class PsogsaParams:
    c1: float = 0.5
    c2: float = 1.5
    gsa: GsaParams = field(default_factory=GsaParams)

    def __post_init__(self):
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("acceleration coefficients must be non-negative")


@dataclass(frozen=True)
class GpsParams:
    c3: float = 1.0
    c4: float = 1.0
    pso: PsoParams = field(default_factory=PsoParams)
    gsa: GsaParams = field(default_factory=GsaParams)

    def __post_init__(self):
        if self.c3 < 0 or self.c4 < 0:
            raise ValueError("blend coefficients must be non-negative")


@dataclass
class GsaKinematics:
    """Masses, pairwise geometry and resulting accelerations for one iteration."""

    raw_masses: np.ndarray        # (N,)
    masses: np.ndarray            # (N,), normalized to sum 1
    pairwise_distance: np.ndarray  # (N, N) Euclidean, zero diagonal
    total_force: np.ndarray       # (N, D)
    acceleration: np.ndarray      # (N, D)
    g_now: float


def gravitational_constant(t: int, max_iter: int, p: GsaParams) -> float:
    """Exponentially decaying gravitational constant, g0 at t=0."""
    if max_iter <= 0:
        raise ValueError("max_iter must be positive")
    return p.g0 * float(np.exp(-p.alpha_g * t / max_iter))


def inertia_weight(t: int, max_iter: int, p: PsoParams) -> float:
    """Linear w_start -> w_end schedule over the run."""
    if max_iter <= 0:
        raise ValueError("max_iter must be positive")
    return p.w_start + (p.w_end - p.w_start) * t / max_iter


def compute_masses(fitnesses, sense: Sense = "minimize") -> tuple[np.ndarray, np.ndarray]:
    """Fitness-derived masses: best agent 1, worst 0, then normalized to sum 1.

    When all fitnesses are equal every agent gets mass 1/N (equal agents
    attract equally).
    """
    values = np.asarray(fitnesses, dtype=float)
    ext = find_extremes(values, sense)
    if ext.best == ext.worst:
        raw = np.ones_like(values)
    else:
        raw = (values - ext.worst) / (ext.best - ext.worst)
    return raw, raw / raw.sum()


def compute_gsa_kinematics(state: SwarmState, p: GsaParams, t: int, max_iter: int,
                           rng: RngStream) -> GsaKinematics:
    """Pairwise gravitational pull, randomly weighted per (i, j) pair, and the
    resulting accelerations. Zero-mass agents get zero acceleration."""
    x = state.positions
    n = state.n
    raw, masses = compute_masses(state.fitness, state.sense)
    g_now = gravitational_constant(t, max_iter, p)

    gram = x @ x.T
    sq = np.diag(gram)
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * gram, 0.0)
    dist = np.sqrt(d2)
    np.fill_diagonal(dist, 0.0)
    pair_weight = rng.random((n, n))  # rand per (i, j), all dims
    coef = g_now * (masses[:, None] * masses[None, :]) / (dist + p.epsilon) * pair_weight
    np.fill_diagonal(coef, 0.0)
    # sum_j coef_ij * (x_j - x_i), without materializing the (N, N, D) tensor
    force = coef @ x - coef.sum(axis=1)[:, None] * x

    accel = np.zeros_like(force)
    np.divide(force, masses[:, None], out=accel, where=masses[:, None] > 0)
    return GsaKinematics(raw, masses, dist, force, accel, g_now)


def pso_velocity(velocities, positions, pbest_positions, gbest_position,
                 t: int, max_iter: int, p: PsoParams, rng: RngStream) -> np.ndarray:
    """Inertia plus personal and social pulls, fresh randoms per agent per dim."""
    w = inertia_weight(t, max_iter, p)
    r1 = rng.random(velocities.shape)
    r2 = rng.random(velocities.shape)
    return (w * velocities
            + p.c1 * r1 * (pbest_positions - positions)
            + p.c2 * r2 * (gbest_position - positions))


def gsa_velocity(velocities, acceleration, rng: RngStream) -> np.ndarray:
    """Randomly damped inertia plus gravitational acceleration."""
    return rng.random(velocities.shape) * velocities + acceleration


def gps_velocity(v_pso, v_gsa, p: GpsParams, rng: RngStream) -> np.ndarray:
    """Stochastic convex-style blend of the two candidate velocities,
    one blend draw per agent."""
    r3 = rng.random((v_pso.shape[0], 1))
    return p.c3 * r3 * v_pso + p.c4 * (1.0 - r3) * v_gsa


def psogsa_velocity(velocities, positions, acceleration, gbest_position,
                    p: PsogsaParams, rng: RngStream) -> np.ndarray:
    """Randomly damped inertia, gravitational acceleration and a global-best pull."""
    return (rng.random(velocities.shape) * velocities
            + p.c1 * acceleration
            + p.c2 * (gbest_position - positions))


def position_update(positions, velocities, space) -> np.ndarray:
    """positions + velocities, clipped into the box."""
    return clamp_to_bounds(positions + velocities, space)


def _new_velocities(algorithm: Algorithm, state: SwarmState, params, t, max_iter,
                    rng: RngStream) -> np.ndarray:
    if algorithm == Algorithm.PSO:
        return pso_velocity(state.velocities, state.positions, state.pbest_positions,
                            state.gbest_position, t, max_iter, params, rng)
    if algorithm == Algorithm.GSA:
        kin = compute_gsa_kinematics(state, params, t, max_iter, rng)
        return gsa_velocity(state.velocities, kin.acceleration, rng)
    if algorithm == Algorithm.GPS:
        kin = compute_gsa_kinematics(state, params.gsa, t, max_iter, rng)
        v_pso = pso_velocity(state.velocities, state.positions, state.pbest_positions,
                             state.gbest_position, t, max_iter, params.pso, rng)
        v_gsa = gsa_velocity(state.velocities, kin.acceleration, rng)
        return gps_velocity(v_pso, v_gsa, params, rng)
    if algorithm == Algorithm.PSOGSA:
        kin = compute_gsa_kinematics(state, params.gsa, t, max_iter, rng)
        return psogsa_velocity(state.velocities, state.positions, kin.acceleration,
                               state.gbest_position, params, rng)
    raise ValueError(f"unknown algorithm '{algorithm}'")


def default_params(algorithm: Algorithm):
    """Factory-default parameter set for an algorithm id."""
    base = algorithm.base
    return {
        Algorithm.PSO: PsoParams,
        Algorithm.GSA: GsaParams,
        Algorithm.GPS: GpsParams,
        Algorithm.PSOGSA: PsogsaParams,
    }[base]()


def step(algorithm: Algorithm, state: SwarmState, params, t: int, max_iter: int,
         problem: Problem, rng: RngStream, mutate=None) -> int:
    """One full iteration in place: velocities, positions, optional mutation,
    re-evaluation and best-memory refresh.

    ``mutate``, when given, is called as ``mutate(state, rng)`` after clamped
    position updates and before re-evaluation, and returns the number of
    mutated agents. Returns that count (0 without mutation).
    """
    algorithm = Algorithm(algorithm)
    if algorithm.mutated:
        raise ValueError("step() takes a base update rule; pass the mutation hook separately")
    state.velocities = _new_velocities(algorithm, state, params, t, max_iter, rng)
    state.positions = position_update(state.positions, state.velocities, problem.space)
    mutated = mutate(state, rng) if mutate is not None else 0
    evaluate_swarm(state, problem, rng)
    state.iteration += 1
    return mutated
