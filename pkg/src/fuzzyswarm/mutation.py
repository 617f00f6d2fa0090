"""Centroid-based fuzzy mutation.

An agent's mutation probability blends two cues: proximity to the population
centroid (close agents are likely trapped together) and how long the global
best has been stale. The perturbation magnitude follows a quadratically
decaying cap on each dimension's range, further limited by the coordinate's
own magnitude, and is added or subtracted per dimension with equal chance.

Random draw order per swarm pass, fixed for reproducibility: for each agent
in index order, one decision draw; if it mutates, one block of D sign draws
in dimension order. A probability override of exactly 0 disables the whole
operator without consuming any draws, which keeps the mutated variants
bit-identical to their ancestors under the same seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import RngStream, SearchSpace, Sense, SwarmState, clamp_to_bounds, is_better


@dataclass(frozen=True)
class MutationParams:
    alpha_mut: float = 4.0
    beta_mut: float = 5.0
    a: float = 0.5
    b: float = 0.5
    rho: float = 0.6
    phi: float = 0.4
    # Eq-by-the-book mode: limit |step| by the raw (possibly negative)
    # coordinate instead of its absolute value.
    raw_coordinate: bool = False
    # Pin every agent's mutation probability; exactly 0 disables the operator.
    probability_override: float | None = None

    def replace(self, **kw) -> "MutationParams":
        from dataclasses import replace as _replace
        return _replace(self, **kw)


@dataclass
class MutationState:
    """Global staleness counter: iterations since the swarm best last improved."""

    unchanged: int = 0
    last_gbest_fitness: float = math.inf


@dataclass
class MutationStep:
    """Intermediates of one agent's mutation decision, for diagnostics."""

    dist: float
    p_d: float
    p_c: float
    p_i: float
    delta_q: np.ndarray
    delta_p: np.ndarray | None
    mutated: bool


def distance_contribution(dist: float) -> float:
    """1 / (1 + dist): 1 at the centroid, decaying with distance."""
    if dist < 0:
        raise ValueError("distance must be non-negative")
    return 1.0 / (1.0 + dist)


def history_contribution(unchanged: int, p: MutationParams) -> float:
    """Staleness sigmoid a + b*tanh(unchanged/alpha - beta); 0.5 at alpha*beta."""
    return p.a + p.b * math.tanh(unchanged / p.alpha_mut - p.beta_mut)


def mutation_probability(p_d: float, p_c: float, p: MutationParams) -> float:
    """Weighted blend rho*P_d + phi*P_c."""
    return p.rho * p_d + p.phi * p_c


def magnitude_cap(space: SearchSpace, count: int, total_iters: int) -> np.ndarray:
    """Per-dimension step cap 0.5 * range * (1 - count/total)^2, hitting 0 at the end."""
    if total_iters <= 0:
        raise ValueError("total_iters must be positive")
    if not 0 <= count <= total_iters:
        raise ValueError("count must lie in [0, total_iters]")
    return 0.5 * space.range * (1.0 - count / total_iters) ** 2


def mutation_magnitude(space: SearchSpace, d: int, count: int, total_iters: int,
                       x: float, raw_coordinate: bool = False) -> float:
    """Step size for one coordinate: the decayed cap, limited by the coordinate
    itself (|x| by default, the raw value in raw_coordinate mode)."""
    cap = float(magnitude_cap(space, count, total_iters)[d])
    limit = x if raw_coordinate else abs(x)
    return min(cap, limit)


def apply_mutation(position: np.ndarray, p_i: float, space: SearchSpace,
                   count: int, total_iters: int, rng: RngStream,
                   params: MutationParams, dist: float = 0.0, p_d: float = 0.0,
                   p_c: float = 0.0) -> tuple[np.ndarray, MutationStep]:
    """Randomized perturbation of a single agent.

    Consumes one decision draw; when it fires, one sign draw per dimension.
    The returned position is clipped into the box.
    """
    delta_q = magnitude_cap(space, count, total_iters)
    if rng.random() >= p_i:
        return position, MutationStep(dist, p_d, p_c, p_i, delta_q, None, False)
    limit = position if params.raw_coordinate else np.abs(position)
    delta_p = np.minimum(delta_q, limit)
    sign = np.where(rng.random(position.size) < 0.5, 1.0, -1.0)
    mutated = clamp_to_bounds(position + sign * delta_p, space)
    return mutated, MutationStep(dist, p_d, p_c, p_i, delta_q, delta_p, True)


def update_unchanged(state: MutationState, gbest_fitness_now: float,
                     sense: Sense = "minimize") -> MutationState:
    """Reset the staleness counter on strict improvement, else increment."""
    if is_better(gbest_fitness_now, state.last_gbest_fitness, sense):
        state.unchanged = 0
        state.last_gbest_fitness = gbest_fitness_now
    else:
        state.unchanged += 1
    return state


@dataclass
class SwarmMutationStats:
    """Per-iteration mutation diagnostics."""

    count: int = 0
    p_c: float = 0.0
    mean_p_d: float = 0.0
    mean_p_i: float = 0.0
    mean_delta_q: float = 0.0


def mutate_swarm(state: SwarmState, m_state: MutationState, params: MutationParams,
                 space: SearchSpace, count: int, total_iters: int,
                 rng: RngStream) -> SwarmMutationStats:
    """Run the operator over every agent against the current population centroid.

    Mutates positions in place (never the best memories). With a probability
    override of exactly 0 this is a draw-free no-op.
    """
    if params.probability_override == 0.0:
        return SwarmMutationStats()
    center = state.positions.mean(axis=0)
    dists = np.sqrt(np.sum((state.positions - center) ** 2, axis=1))
    p_d = 1.0 / (1.0 + dists)
    p_c = history_contribution(m_state.unchanged, params)
    if params.probability_override is not None:
        p_i = np.full(state.n, params.probability_override)
    else:
        p_i = params.rho * p_d + params.phi * p_c

    delta_q = magnitude_cap(space, count, total_iters)
    mutated = 0
    for i in range(state.n):
        if rng.random() >= p_i[i]:
            continue
        pos = state.positions[i]
        limit = pos if params.raw_coordinate else np.abs(pos)
        delta_p = np.minimum(delta_q, limit)
        sign = np.where(rng.random(state.dim) < 0.5, 1.0, -1.0)
        state.positions[i] = clamp_to_bounds(pos + sign * delta_p, space)
        mutated += 1
    return SwarmMutationStats(mutated, p_c, float(p_d.mean()), float(p_i.mean()),
                              float(delta_q.mean()))
