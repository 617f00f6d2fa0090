"""The 23 classic single-objective benchmarks, batch-evaluable with numpy.

Every function accepts a single point of shape (D,) or a population block of
shape (N, D) and reduces over the last axis. Registry metadata records the
box domain, the best-known optimum value and (where known) a minimizer, used
by the optimum-consistency tests.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import RngStream, SearchSpace

# --- fixed-dimension coefficient tables (standard published constants) ---

# Shekel's foxholes: a[0] cycles -32..32, a[1] repeats each value 5 times.
_FOXHOLES_BASE = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])
FOXHOLES_A = np.stack([
    np.tile(_FOXHOLES_BASE, 5),
    np.repeat(_FOXHOLES_BASE, 5),
])  # shape (2, 25)

KOWALIK_A = np.array([
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
    0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
])
KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])

HARTMANN3_A = np.array([
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
])
HARTMANN3_P = 1e-4 * np.array([
    [3689.0, 1170.0, 2673.0],
    [4699.0, 4387.0, 7470.0],
    [1091.0, 8732.0, 5547.0],
    [381.0, 5743.0, 8828.0],
])
HARTMANN_C = np.array([1.0, 1.2, 3.0, 3.2])

HARTMANN6_A = np.array([
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
])
HARTMANN6_P = 1e-4 * np.array([
    [1312.0, 1696.0, 5569.0, 124.0, 8283.0, 5886.0],
    [2329.0, 4135.0, 8307.0, 3736.0, 1004.0, 9991.0],
    [2348.0, 1451.0, 3522.0, 2883.0, 3047.0, 6650.0],
    [4047.0, 8828.0, 8732.0, 5743.0, 1091.0, 381.0],
])

SHEKEL_A = np.array([
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
])
SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])


# --- high-dimensional functions ---

def sphere(x):
    return np.sum(x * x, axis=-1)


def schwefel_222(x):
    ax = np.abs(x)
    return np.sum(ax, axis=-1) + np.prod(ax, axis=-1)


def schwefel_12(x):
    return np.sum(np.cumsum(x, axis=-1) ** 2, axis=-1)


def schwefel_221(x):
    return np.max(np.abs(x), axis=-1)


def rosenbrock(x):
    x = np.asarray(x)
    head, tail = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (tail - head ** 2) ** 2 + (head - 1.0) ** 2, axis=-1)


def step(x):
    # De Jong's step: floored coordinates, so the minimum plateau contains 0
    return np.sum(np.floor(x + 0.5) ** 2, axis=-1)


def quartic(x):
    # noise term handled by the registry wrapper, not here
    x = np.asarray(x)
    i = np.arange(1, x.shape[-1] + 1, dtype=float)
    return np.sum(i * x ** 4, axis=-1)


def schwefel(x):
    return np.sum(-x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def rastrigin(x):
    return np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def ackley(x):
    x = np.asarray(x)
    n = x.shape[-1]
    return (-20.0 * np.exp(-0.2 * np.sqrt(np.sum(x * x, axis=-1) / n))
            - np.exp(np.sum(np.cos(2.0 * np.pi * x), axis=-1) / n) + 20.0 + np.e)


def griewank(x):
    x = np.asarray(x)
    i = np.sqrt(np.arange(1, x.shape[-1] + 1, dtype=float))
    return np.sum(x * x, axis=-1) / 4000.0 - np.prod(np.cos(x / i), axis=-1) + 1.0


def penalty_u(x, a: float, k: float, m: float):
    """Out-of-band penalty: zero on [-a, a], k*(|x|-a)^m outside, symmetric."""
    if a <= 0 or k <= 0:
        raise ValueError("penalty parameters a and k must be positive")
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) > a, k * (np.abs(x) - a) ** m, 0.0)


def penalized_1(x):
    x = np.asarray(x)
    n = x.shape[-1]
    y = 1.0 + (x + 1.0) / 4.0
    head, tail = y[..., :-1], y[..., 1:]
    core = (10.0 * np.sin(np.pi * y[..., 0]) ** 2
            + np.sum((head - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * tail) ** 2), axis=-1)
            + (y[..., -1] - 1.0) ** 2)
    return np.pi / n * core + np.sum(penalty_u(x, 10.0, 100.0, 4.0), axis=-1)


def penalized_2(x):
    x = np.asarray(x)
    head, tail = x[..., :-1], x[..., 1:]
    core = (np.sin(3.0 * np.pi * x[..., 0]) ** 2
            + np.sum((head - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * tail) ** 2), axis=-1)
            + (x[..., -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[..., -1]) ** 2))
    return 0.1 * core + np.sum(penalty_u(x, 5.0, 100.0, 4.0), axis=-1)


# --- fixed-dimension functions ---

def foxholes(x):
    x = np.asarray(x)
    diff = x[..., :, None] - FOXHOLES_A  # (..., 2, 25)
    denom = np.arange(1, 26, dtype=float) + np.sum(diff ** 6, axis=-2)
    return 1.0 / (1.0 / 500.0 + np.sum(1.0 / denom, axis=-1))


def kowalik(x):
    x = np.asarray(x)
    b, b2 = KOWALIK_B, KOWALIK_B ** 2
    num = x[..., 0, None] * (b2 + b * x[..., 1, None])
    den = b2 + b * x[..., 2, None] + x[..., 3, None]
    return np.sum((KOWALIK_A - num / den) ** 2, axis=-1)


def six_hump_camel(x):
    x1, x2 = np.asarray(x)[..., 0], np.asarray(x)[..., 1]
    return (4.0 * x1 ** 2 - 2.1 * x1 ** 4 + x1 ** 6 / 3.0
            + x1 * x2 - 4.0 * x2 ** 2 + 4.0 * x2 ** 4)


def branin(x):
    x1, x2 = np.asarray(x)[..., 0], np.asarray(x)[..., 1]
    return ((x2 - 5.1 / (4.0 * np.pi ** 2) * x1 ** 2 + 5.0 / np.pi * x1 - 6.0) ** 2
            + 10.0 * (1.0 - 1.0 / (8.0 * np.pi)) * np.cos(x1) + 10.0)


def goldstein_price(x):
    x1, x2 = np.asarray(x)[..., 0], np.asarray(x)[..., 1]
    a = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1 ** 2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 ** 2)
    b = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1 ** 2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 ** 2)
    return a * b


def _hartmann(x, a, p):
    x = np.asarray(x)
    inner = np.sum(a * (x[..., None, :] - p) ** 2, axis=-1)
    return -np.sum(HARTMANN_C * np.exp(-inner), axis=-1)


def hartmann_3(x):
    return _hartmann(x, HARTMANN3_A, HARTMANN3_P)


def hartmann_6(x):
    return _hartmann(x, HARTMANN6_A, HARTMANN6_P)


def _shekel(x, m):
    x = np.asarray(x)
    diff = x[..., None, :] - SHEKEL_A[:m]
    return -np.sum(1.0 / (np.sum(diff ** 2, axis=-1) + SHEKEL_C[:m]), axis=-1)


def shekel_5(x):
    return _shekel(x, 5)


def shekel_7(x):
    return _shekel(x, 7)


def shekel_10(x):
    return _shekel(x, 10)


# --- registry ---

@dataclass(frozen=True)
class BenchmarkProblem:
    """One benchmark: evaluation rule, box domain and best-known optimum."""

    id: str
    space: SearchSpace
    fn: object
    known_optimum: float
    optimum_position: np.ndarray | None
    category: str  # unimodal | multimodal | fixed_dim
    noisy: bool = False

    def evaluate(self, x: np.ndarray, rng: RngStream | None = None):
        """Value at x; (N, D) blocks give an (N,) vector.

        The stochastic term of F7 is added only when a stream is supplied
        (one uniform draw per point, agent-major order).
        """
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.space.dim:
            raise ValueError(f"{self.id} expects dimension {self.space.dim}, got {x.shape[-1]}")
        value = self.fn(x)
        if self.noisy and rng is not None:
            value = value + rng.random(value.shape if value.ndim else None)
        return value


def _cube(low, high, dim):
    return SearchSpace.box(low, high, dim)


def _make_registry() -> list[BenchmarkProblem]:
    ones = np.ones(30)
    zeros = np.zeros(30)
    entries = [
        # unimodal, D=30
        ("F1", sphere, _cube(-100, 100, 30), 0.0, zeros, "unimodal", False),
        ("F2", schwefel_222, _cube(-10, 10, 30), 0.0, zeros, "unimodal", False),
        ("F3", schwefel_12, _cube(-100, 100, 30), 0.0, zeros, "unimodal", False),
        ("F4", schwefel_221, _cube(-100, 100, 30), 0.0, zeros, "unimodal", False),
        ("F5", rosenbrock, _cube(-30, 30, 30), 0.0, ones, "unimodal", False),
        ("F6", step, _cube(-100, 100, 30), 0.0, zeros, "unimodal", False),
        ("F7", quartic, _cube(-1.28, 1.28, 30), 0.0, zeros, "unimodal", True),
        # multimodal, D=30
        ("F8", schwefel, _cube(-500, 500, 30), -12569.5, np.full(30, 420.96), "multimodal", False),
        ("F9", rastrigin, _cube(-5.12, 5.12, 30), 0.0, zeros, "multimodal", False),
        ("F10", ackley, _cube(-32, 32, 30), 0.0, zeros, "multimodal", False),
        ("F11", griewank, _cube(-600, 600, 30), 0.0, zeros, "multimodal", False),
        ("F12", penalized_1, _cube(-50, 50, 30), 0.0, -ones, "multimodal", False),
        ("F13", penalized_2, _cube(-50, 50, 30), 0.0, ones, "multimodal", False),
        # fixed dimension
        ("F14", foxholes, _cube(-65.53, 65.53, 2), 0.9980038,
         np.array([-32.0, -32.0]), "fixed_dim", False),
        ("F15", kowalik, _cube(-5, 5, 4), 3.0749e-4,
         np.array([0.1928, 0.1908, 0.1231, 0.1358]), "fixed_dim", False),
        ("F16", six_hump_camel, _cube(-5, 5, 2), -1.0316285,
         np.array([0.0898, -0.7126]), "fixed_dim", False),
        ("F17", branin, SearchSpace(np.array([-5.0, 0.0]), np.array([10.0, 15.0])),
         0.39788736, np.array([np.pi, 2.275]), "fixed_dim", False),
        ("F18", goldstein_price, _cube(-5, 5, 2), 3.0,
         np.array([0.0, -1.0]), "fixed_dim", False),
        ("F19", hartmann_3, _cube(0, 1, 3), -3.86278,
         np.array([0.114614, 0.555649, 0.852547]), "fixed_dim", False),
        ("F20", hartmann_6, _cube(0, 1, 6), -3.32237,
         np.array([0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573]),
         "fixed_dim", False),
        ("F21", shekel_5, _cube(0, 10, 4), -10.1532, np.full(4, 4.0), "fixed_dim", False),
        ("F22", shekel_7, _cube(0, 10, 4), -10.402941, np.full(4, 4.0), "fixed_dim", False),
        ("F23", shekel_10, _cube(0, 10, 4), -10.53641, np.full(4, 4.0), "fixed_dim", False),
    ]
    return [
        BenchmarkProblem(fid, space, fn, opt, pos, cat, noisy)
        for fid, fn, space, opt, pos, cat, noisy in entries
    ]


_REGISTRY = {p.id: p for p in _make_registry()}


def registry() -> list[BenchmarkProblem]:
    """All 23 benchmarks in id order."""
    return list(_REGISTRY.values())


def benchmark(fid: str) -> BenchmarkProblem:
    """Lookup by id F1..F23."""
    try:
        return _REGISTRY[fid]
    except KeyError:
        raise ValueError(f"unknown benchmark function '{fid}'") from None
