"""Seeded initialization, exact parameter-shift gradients, and the
gradient-descent loop with its two stopping rules.

Every trainable parameter enters the circuit once, as a rotation angle of
a single U3 gate, so both costs are single-frequency trigonometric in each
parameter and the pi/2 shift rule gives the exact derivative.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np


class StopMode(Enum):
    HST_EPS = "hst_eps"
    OBSERVABLE_FLOOR = "observable_floor"


class StopReason(Enum):
    CONVERGED = "converged"
    MAX_STEPS = "max_steps"


class NonFiniteCostError(RuntimeError):
    """Raised when the cost turns NaN/Inf; carries the offending step and params."""

    def __init__(self, step: int, params: np.ndarray, value: float):
        super().__init__(
            f"cost became non-finite ({value!r}) at step {step}; "
            f"params snapshot attached"
        )
        self.step = step
        self.params = np.array(params)
        self.value = value


@dataclass(frozen=True)
class OptimizerConfig:
    learning_rate: float = 0.01
    max_steps: int = 500
    hst_stop_eps: float = 1e-6
    observable_stop_eps: float = 1e-3  # stop once cost <= -1 + eps
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")
        if self.hst_stop_eps <= 0 or self.observable_stop_eps <= 0:
            raise ValueError("stop thresholds must be > 0")

    def threshold(self, stop_mode: StopMode) -> float:
        if stop_mode is StopMode.HST_EPS:
            return self.hst_stop_eps
        return -1.0 + self.observable_stop_eps


@dataclass(frozen=True)
class OptimizationTrace:
    """Cost before each update plus the final cost, and where we stopped."""

    costs: np.ndarray
    final_params: np.ndarray
    stop_reason: StopReason

    @property
    def steps_taken(self) -> int:
        return len(self.costs) - 1

    @property
    def final_cost(self) -> float:
        return float(self.costs[-1])


def init_params(count: int, seed: int) -> np.ndarray:
    """count i.i.d. uniform angles on [0, 2*pi) from a seeded generator."""
    if count < 0:
        raise ValueError(f"parameter count must be >= 0, got {count}")
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 2.0 * np.pi, size=count)


def param_shift_gradient(cost, params) -> np.ndarray:
    """Exact gradient via [cost(+pi/2) - cost(-pi/2)] / 2 per component."""
    params = np.asarray(params, dtype=np.float64)
    grad = np.empty_like(params)
    for j in range(params.size):
        shifted = params.copy()
        shifted[j] += np.pi / 2.0
        plus = cost(shifted)
        shifted[j] -= np.pi
        minus = cost(shifted)
        grad[j] = 0.5 * (plus - minus)
    return grad


def finite_diff_gradient(cost, params, h: float = 1e-5) -> np.ndarray:
    """Central differences [cost(+h) - cost(-h)] / 2h per component."""
    if h <= 0:
        raise ValueError(f"step h must be > 0, got {h}")
    params = np.asarray(params, dtype=np.float64)
    grad = np.empty_like(params)
    for j in range(params.size):
        shifted = params.copy()
        shifted[j] += h
        plus = cost(shifted)
        shifted[j] -= 2.0 * h
        minus = cost(shifted)
        grad[j] = (plus - minus) / (2.0 * h)
    return grad


def _checked(cost, params, step):
    value = float(cost(params))
    if not np.isfinite(value):
        raise NonFiniteCostError(step, params, value)
    return value


def gradient_descent(
    cost, init_params, config: OptimizerConfig, stop_mode: StopMode
) -> OptimizationTrace:
    """Plain gradient descent with parameter-shift gradients.

    Stops when the method's threshold is met (Converged) or after
    config.max_steps updates (MaxSteps). The trace records the cost before
    every update plus the final cost, so it has steps_taken + 1 entries.
    """
    params = np.array(init_params, dtype=np.float64)
    threshold = config.threshold(stop_mode)
    costs = [_checked(cost, params, 0)]
    if costs[0] <= threshold:
        return OptimizationTrace(np.array(costs), params, StopReason.CONVERGED)
    for step in range(1, config.max_steps + 1):
        grad = param_shift_gradient(cost, params)
        params = params - config.learning_rate * grad
        costs.append(_checked(cost, params, step))
        if costs[-1] <= threshold:
            return OptimizationTrace(np.array(costs), params, StopReason.CONVERGED)
    return OptimizationTrace(np.array(costs), params, StopReason.MAX_STEPS)
