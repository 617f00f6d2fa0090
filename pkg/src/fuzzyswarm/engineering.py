"""Five classic engineering design objectives EF1..EF5.

Each problem runs in one of two modes:

* paper mode (default): box bounds only, which is what the reference result
  tables evidently used (several reported optima sit on the lower corner of
  the box and are unreachable under the usual inequality constraints);
* constrained mode: the standard literature inequality sets with a static
  penalty added to the objective. The gear-train problem's constraints are
  its variable bounds; the closed-coil spring has no published set here, so
  it stays box-only in both modes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import RngStream, SearchSpace

# Welded-beam constants (load, beam geometry, material limits).
_WB_P = 6000.0
_WB_L = 14.0
_WB_E = 30e6
_WB_G = 12e6
_WB_TAU_MAX = 13600.0
_WB_SIGMA_MAX = 30000.0
_WB_DELTA_MAX = 0.25


def spring_weight(x):
    """Tension/compression spring weight, x = [wire d, coil D, active coils N]."""
    x = np.asarray(x)
    return (x[..., 2] + 2.0) * x[..., 1] * x[..., 0] ** 2


def gear_ratio_cost(x):
    """Squared deviation of the gear ratio from 1/6.931, x = [nA, nB, nD, nF]."""
    x = np.asarray(x)
    return (1.0 / 6.931 - x[..., 2] * x[..., 1] / (x[..., 0] * x[..., 3])) ** 2


def welded_beam_cost(x):
    """Weld plus bar material cost, x = [h, l, t, b]."""
    x = np.asarray(x)
    return (1.1047 * x[..., 0] ** 2 * x[..., 1]
            + 0.04811 * x[..., 2] * x[..., 3] * (14.0 + x[..., 1]))


def pressure_vessel_cost(x):
    """Material, forming and welding cost, x = [Ts, Th, R, L]."""
    x = np.asarray(x)
    return (0.6224 * x[..., 0] * x[..., 2] * x[..., 3]
            + 1.7781 * x[..., 1] * x[..., 2] ** 2
            + 3.1661 * x[..., 0] ** 2 * x[..., 3]
            + 19.84 * x[..., 0] ** 2 * x[..., 2])


def helical_spring_volume(x):
    """Closed coil helical spring volume, x = [wire d, coil D, coils Nc]."""
    x = np.asarray(x)
    return (math.pi ** 2 / 4.0) * (x[..., 2] + 2.0) * x[..., 1] * x[..., 0] ** 2


# --- standard inequality sets, g(x) <= 0 feasible, batch-evaluable ---

def _spring_constraints(x):
    x = np.asarray(x)
    d, D, N = x[..., 0], x[..., 1], x[..., 2]
    g1 = 1.0 - D ** 3 * N / (71785.0 * d ** 4)
    g2 = ((4.0 * D ** 2 - d * D) / (12566.0 * (D * d ** 3 - d ** 4))
          + 1.0 / (5108.0 * d ** 2) - 1.0)
    g3 = 1.0 - 140.45 * d / (D ** 2 * N)
    g4 = (D + d) / 1.5 - 1.0
    return np.stack([g1, g2, g3, g4], axis=-1)


def _gear_constraints(x):
    # Eq-form of the 12 <= x_i <= 60 tooth-count bounds.
    x = np.asarray(x)
    return np.concatenate([12.0 - x, x - 60.0], axis=-1)


def _welded_beam_constraints(x):
    x = np.asarray(x)
    h, l, t, b = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    tau1 = _WB_P / (math.sqrt(2.0) * h * l)
    moment = _WB_P * (_WB_L + l / 2.0)
    radius = np.sqrt(l ** 2 / 4.0 + ((h + t) / 2.0) ** 2)
    polar = 2.0 * (h * l * math.sqrt(2.0) * (l ** 2 / 12.0 + ((h + t) / 2.0) ** 2))
    tau2 = moment * radius / polar
    tau = np.sqrt(tau1 ** 2 + 2.0 * tau1 * tau2 * l / (2.0 * radius) + tau2 ** 2)
    sigma = 6.0 * _WB_P * _WB_L / (b * t ** 2)
    delta = 4.0 * _WB_P * _WB_L ** 3 / (_WB_E * t ** 3 * b)
    p_crit = (4.013 * _WB_E * np.sqrt(t ** 2 * b ** 6 / 36.0) / _WB_L ** 2
              * (1.0 - t / (2.0 * _WB_L) * math.sqrt(_WB_E / (4.0 * _WB_G))))
    g1 = tau - _WB_TAU_MAX
    g2 = sigma - _WB_SIGMA_MAX
    g3 = h - b
    g4 = 0.10471 * h ** 2 + 0.04811 * t * b * (14.0 + l) - 5.0
    g5 = 0.125 - h
    g6 = delta - _WB_DELTA_MAX
    g7 = _WB_P - p_crit
    return np.stack([g1, g2, g3, g4, g5, g6, g7], axis=-1)


def _pressure_vessel_constraints(x):
    x = np.asarray(x)
    ts, th, r, ln = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    g1 = -ts + 0.0193 * r
    g2 = -th + 0.00954 * r
    g3 = -math.pi * r ** 2 * ln - 4.0 / 3.0 * math.pi * r ** 3 + 1296000.0
    g4 = ln - 240.0
    return np.stack([g1, g2, g3, g4], axis=-1)


@dataclass(frozen=True)
class DesignProblem:
    """One design objective with optional inequality constraints and penalty."""

    id: str
    space: SearchSpace
    objective_fn: object
    constraint_fn: object = None  # x -> (..., K) stack of g values, or None
    penalty_coefficient: float = 1e6
    integer_round: bool = False  # gear teeth as integers

    def _decision(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.space.dim:
            raise ValueError(f"{self.id} expects dimension {self.space.dim}, got {x.shape[-1]}")
        return np.round(x) if self.integer_round else x

    def objective(self, x):
        return self.objective_fn(self._decision(x))

    def constraint_violations(self, x):
        """max(0, g_k) per constraint; shape (..., K), K=0 without constraints."""
        x = self._decision(x)
        if self.constraint_fn is None:
            return np.zeros(x.shape[:-1] + (0,))
        return np.maximum(self.constraint_fn(x), 0.0)

    def penalized_fitness(self, x):
        v = self.constraint_violations(x)
        return self.objective(x) + self.penalty_coefficient * np.sum(v ** 2, axis=-1)

    def evaluate(self, x: np.ndarray, rng: RngStream | None = None):
        return self.penalized_fitness(x)


_SPECS = {
    "EF1": (spring_weight, _spring_constraints,
            [(0.05, 2.0), (0.25, 1.3), (2.0, 15.0)]),
    "EF2": (gear_ratio_cost, _gear_constraints,
            [(12.0, 60.0)] * 4),
    "EF3": (welded_beam_cost, _welded_beam_constraints,
            [(0.1, 2.0), (0.1, 10.0), (0.1, 10.0), (0.1, 2.0)]),
    "EF4": (pressure_vessel_cost, _pressure_vessel_constraints,
            [(0.0, 99.0), (0.0, 99.0), (10.0, 200.0), (10.0, 200.0)]),
    "EF5": (helical_spring_volume, None,
            [(0.508, 1.016), (1.27, 7.62), (15.0, 25.0)]),
}


def design(pid: str, constrained: bool = False, integer_gears: bool = False,
           penalty_coefficient: float = 1e6) -> DesignProblem:
    """Build EF1..EF5; ``constrained`` switches on the inequality sets."""
    try:
        obj, cons, bounds = _SPECS[pid]
    except KeyError:
        raise ValueError(f"unknown design problem '{pid}'") from None
    return DesignProblem(
        id=pid,
        space=SearchSpace.from_bounds(bounds),
        objective_fn=obj,
        constraint_fn=cons if constrained else None,
        penalty_coefficient=penalty_coefficient,
        integer_round=integer_gears and pid == "EF2",
    )


def registry(constrained: bool = False) -> list[DesignProblem]:
    """All five design problems in id order."""
    return [design(pid, constrained=constrained) for pid in _SPECS]
