"""Shared optimizer plumbing: search spaces, swarm state, RNG, fitness bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Protocol, runtime_checkable

import numpy as np

Sense = Literal["minimize", "maximize"]

RngStream = np.random.Generator


def make_rng(seed: int) -> RngStream:
    """Seeded uniform stream; same seed gives a bit-identical draw sequence."""
    return np.random.Generator(np.random.PCG64(seed))


def is_better(a: float, b: float, sense: Sense = "minimize") -> bool:
    """Strict improvement of a over b."""
    return a < b if sense == "minimize" else a > b


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned box; lower[d] < upper[d] required in every dimension."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-D vectors of equal length")
        if lower.size == 0:
            raise ValueError("search space needs at least one dimension")
        if not np.all(lower < upper):
            raise ValueError("every dimension needs lower < upper")

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def range(self) -> np.ndarray:
        return self.upper - self.lower

    @classmethod
    def box(cls, low: float, high: float, dim: int) -> "SearchSpace":
        """Uniform box [low, high]^dim."""
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @classmethod
    def from_bounds(cls, bounds) -> "SearchSpace":
        """From a sequence of (low, high) pairs."""
        arr = np.asarray(bounds, dtype=float)
        return cls(arr[:, 0], arr[:, 1])

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


def clamp_to_bounds(position: np.ndarray, space: SearchSpace) -> np.ndarray:
    """Clip coordinates into the box; accepts a single vector or an (N, D) block."""
    return np.clip(position, space.lower, space.upper)


@dataclass
class Agent:
    """One population member's position, velocity and personal-best memory."""

    position: np.ndarray
    velocity: np.ndarray
    fitness: float
    pbest_position: np.ndarray
    pbest_fitness: float


@dataclass
class SwarmState:
    """Whole-population state plus global-best memory, stored as arrays.

    ``fitness``/``pbest_fitness`` start at +/-inf until the first evaluation;
    ``gbest_fitness`` always equals the best personal best and is monotone
    over iterations.
    """

    positions: np.ndarray
    velocities: np.ndarray
    fitness: np.ndarray
    pbest_positions: np.ndarray
    pbest_fitness: np.ndarray
    gbest_position: np.ndarray
    gbest_fitness: float
    iteration: int = 0
    sense: Sense = "minimize"

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    def agent(self, i: int) -> Agent:
        """Copy of agent i, mainly for inspection and tests."""
        return Agent(
            position=self.positions[i].copy(),
            velocity=self.velocities[i].copy(),
            fitness=float(self.fitness[i]),
            pbest_position=self.pbest_positions[i].copy(),
            pbest_fitness=float(self.pbest_fitness[i]),
        )

    @property
    def agents(self) -> list[Agent]:
        return [self.agent(i) for i in range(self.n)]


@dataclass(frozen=True)
class FitnessExtremes:
    best: float
    worst: float


@runtime_checkable
class Problem(Protocol):
    """Anything the optimizers can run on: a box plus an evaluation rule."""

    id: str
    space: SearchSpace

    def evaluate(self, x: np.ndarray, rng: RngStream | None = None): ...


def initialize_population(space: SearchSpace, n: int, rng: RngStream) -> SwarmState:
    """Fill positions uniformly inside the box; velocities start at zero.

    Consumes one (n, dim) uniform block from ``rng``. Fitness fields are left
    at +inf/-inf sentinels until the first call to :func:`evaluate_swarm`.
    """
    if n < 2:
        raise ValueError("population size must be >= 2 (centroid and pairwise forces need it)")
    d = space.dim
    positions = rng.uniform(space.lower, space.upper, size=(n, d))
    unset = np.inf  # minimization sentinel; evaluate_swarm fixes sense
    return SwarmState(
        positions=positions,
        velocities=np.zeros((n, d)),
        fitness=np.full(n, unset),
        pbest_positions=positions.copy(),
        pbest_fitness=np.full(n, unset),
        gbest_position=positions[0].copy(),
        gbest_fitness=unset,
    )


def evaluate_swarm(state: SwarmState, problem: Problem, rng: RngStream | None = None) -> None:
    """Evaluate all agents (agent-major draw order for stochastic objectives),
    then refresh personal-best and global-best memories in place."""
    values = np.asarray(problem.evaluate(state.positions, rng), dtype=float)
    state.fitness = values
    if state.sense == "minimize":
        improved = values < state.pbest_fitness
    else:
        improved = values > state.pbest_fitness
    improved |= ~np.isfinite(state.pbest_fitness)  # first evaluation
    state.pbest_positions[improved] = state.positions[improved]
    state.pbest_fitness[improved] = values[improved]
    idx = int(np.argmin(state.pbest_fitness) if state.sense == "minimize"
              else np.argmax(state.pbest_fitness))
    if is_better(float(state.pbest_fitness[idx]), state.gbest_fitness, state.sense) \
            or not np.isfinite(state.gbest_fitness):
        state.gbest_fitness = float(state.pbest_fitness[idx])
        state.gbest_position = state.pbest_positions[idx].copy()


def find_extremes(fitnesses, sense: Sense = "minimize") -> FitnessExtremes:
    """Population best/worst in the given sense (best = min when minimizing)."""
    values = np.asarray(fitnesses, dtype=float)
    if values.size == 0:
        raise ValueError("cannot take extremes of an empty fitness list")
    lo, hi = float(values.min()), float(values.max())
    return FitnessExtremes(lo, hi) if sense == "minimize" else FitnessExtremes(hi, lo)


def centroid(state: SwarmState) -> np.ndarray:
    """Coordinate-wise mean of all agent positions."""
    if state.n == 0:
        raise ValueError("empty population has no centroid")
    return state.positions.mean(axis=0)
