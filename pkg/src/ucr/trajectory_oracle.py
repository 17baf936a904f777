"""Independent verification path: exact single-particle trajectories whose
time averages over one period must reproduce the ensemble moments.

The trajectories are piecewise analytic, not ODE solutions, so any
disagreement with the quadrature moments indicts the quadrature or scaling
code rather than this oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .classical_ensemble import (
    BouncingBall,
    HarmonicOscillator,
    InfiniteWell,
    PotentialModel,
    ScaledMoments,
)

__all__ = ["Trajectory", "build_trajectory", "trajectory_moments"]


@dataclass(frozen=True)
class Trajectory:
    model: PotentialModel
    energy: float
    period: float
    turning_point: float
    position_of_time: Callable[[np.ndarray], np.ndarray]
    momentum_of_time: Callable[[np.ndarray], np.ndarray]


def build_trajectory(model: PotentialModel, energy: float) -> Trajectory:
    """Exact one-period trajectory at energy E, starting from the phase
    convention x(0) = 0 moving in the positive direction (bouncer: launch
    from the floor)."""
    if not energy > 0:
        raise ValueError(f"energy must be positive, got {energy}")
    variant = model.variant

    if isinstance(variant, HarmonicOscillator):
        m, omega = variant.m, variant.omega
        amplitude = math.sqrt(2.0 * energy / (m * omega ** 2))
        period = 2.0 * math.pi / omega

        def position(t: np.ndarray) -> np.ndarray:
            return amplitude * np.sin(omega * np.asarray(t))

        def momentum(t: np.ndarray) -> np.ndarray:
            return m * omega * amplitude * np.cos(omega * np.asarray(t))

        return Trajectory(model, energy, period, amplitude, position, momentum)

    if isinstance(variant, InfiniteWell):
        m, L = variant.m, variant.L
        speed = math.sqrt(2.0 * energy / m)
        period = 2.0 * L / speed

        def position(t: np.ndarray) -> np.ndarray:
            # triangle wave: 0 -> L/2 -> -L/2 -> 0 over one period
            phase = np.mod(np.asarray(t), period) / period  # in [0, 1)
            return (L / 2.0) * (4.0 * np.abs(np.mod(phase + 0.75, 1.0) - 0.5) - 1.0)

        def momentum(t: np.ndarray) -> np.ndarray:
            phase = np.mod(np.asarray(t), period) / period
            return m * speed * np.where((phase < 0.25) | (phase >= 0.75), 1.0, -1.0)

        return Trajectory(model, energy, period, L / 2.0, position, momentum)

    m, g = variant.m, variant.g
    v0 = math.sqrt(2.0 * energy / m)
    period = 2.0 * v0 / g
    apex = energy / (m * g)

    def position(t: np.ndarray) -> np.ndarray:
        tt = np.mod(np.asarray(t), period)
        return v0 * tt - 0.5 * g * tt ** 2

    def momentum(t: np.ndarray) -> np.ndarray:
        tt = np.mod(np.asarray(t), period)
        return m * (v0 - g * tt)

    return Trajectory(model, energy, period, apex, position, momentum)


def trajectory_moments(traj: Trajectory, samples: int, rule: str = "midpoint") -> ScaledMoments:
    """Scaled moments as time averages over one period at uniformly spaced
    sample times; "midpoint" offsets the samples by half a step, which keeps
    the well's square-wave momentum away from the wall discontinuities."""
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    if rule == "midpoint":
        t = (np.arange(samples) + 0.5) * (traj.period / samples)
    elif rule == "uniform-time":
        t = np.arange(samples) * (traj.period / samples)
    else:
        raise ValueError(f"unknown sampling rule: {rule!r}")
    x = traj.position_of_time(t) / traj.turning_point
    p = traj.momentum_of_time(t) / math.sqrt(2.0 * traj.model.mass * traj.energy)
    return ScaledMoments(
        mean_x=float(np.mean(x)),
        mean_x2=float(np.mean(x ** 2)),
        mean_p=float(np.mean(p)),
        mean_p2=float(np.mean(p ** 2)),
        realm="classical",
        method="trajectory",
    )
