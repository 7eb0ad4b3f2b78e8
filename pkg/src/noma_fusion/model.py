"""Problem instances, sensor statistics, and superimposed constellation geometry.

A problem instance is two binary sensors observing one uniform source bit
through independent binary symmetric channels (crossover probabilities
``eps1 < eps2``), each transmitting an antipodal two-point constellation over
a shared Gaussian multiple access channel.  Sensor 1 signals on the real axis
with power ``p1``; sensor 2 signals with power ``p2`` on an axis rotated by
``theta``.  The receiver sees the superposition of both signals plus complex
Gaussian noise of total power ``n0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Received channel values are plain Python/numpy complex scalars (or arrays
# of them); no wrapper type is used.
ComplexSample = complex


def _check_crossovers(eps1: float, eps2: float) -> None:
    if not (0.0 < eps1 < eps2 < 0.5):
        raise ValueError(
            f"sensor crossover probabilities must satisfy 0 < eps1 < eps2 < 0.5, "
            f"got eps1={eps1}, eps2={eps2}"
        )


@dataclass(frozen=True)
class SystemParams:
    """The five scalars defining a fusion problem instance.

    eps1, eps2
        Sensor crossover probabilities; sensor 1 is the better-correlated one,
        so ``0 < eps1 < eps2 < 0.5`` is enforced at construction.
    p1, p2
        Per-sensor transmit powers (linear scale).
    n0
        Total channel noise power; each noise component has variance ``n0/2``.
    """

    eps1: float
    eps2: float
    p1: float
    p2: float
    n0: float

    def __post_init__(self) -> None:
        _check_crossovers(self.eps1, self.eps2)
        for name in ("p1", "p2", "n0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value}")

    @property
    def sigma(self) -> float:
        """Per-component noise standard deviation, sqrt(n0 / 2)."""
        return math.sqrt(self.n0 / 2.0)


@dataclass(frozen=True)
class ConditionalPmf:
    """Sensor-pair probabilities given the source: ``table[l, m, i] = Pr(X1=l, X2=m | X=i)``."""

    table: np.ndarray

    def p(self, l: int, m: int, i: int) -> float:
        return float(self.table[l, m, i])

    def given(self, i: int) -> np.ndarray:
        """The 2x2 joint pmf of (X1, X2) conditioned on X = i."""
        return self.table[:, :, i].copy()

    def weights(self, i: int) -> np.ndarray:
        """Flat [p00, p01, p10, p11] for hypothesis i, matching point order in SuperConstellation."""
        return self.table[:, :, i].reshape(4).copy()


def conditional_pmf(eps1: float, eps2: float) -> ConditionalPmf:
    """Joint sensor-pair probabilities implied by two independent crossovers.

    Given the source bit 0, sensor s reports 1 with probability eps_s, so the
    four joint entries are products of per-sensor flip/no-flip probabilities.
    The i=1 entries mirror the i=0 ones: Pr(l, m | 1) = Pr(1-l, 1-m | 0),
    stored as the identical floats so the symmetry is exact.
    """
    _check_crossovers(eps1, eps2)
    table = np.empty((2, 2, 2))
    table[0, 0, 0] = (1.0 - eps1) * (1.0 - eps2)
    table[0, 1, 0] = (1.0 - eps1) * eps2
    table[1, 0, 0] = eps1 * (1.0 - eps2)
    table[1, 1, 0] = eps1 * eps2
    for l in (0, 1):
        for m in (0, 1):
            table[l, m, 1] = table[1 - l, 1 - m, 0]
    table.setflags(write=False)
    return ConditionalPmf(table)


@dataclass(frozen=True)
class SuperConstellation:
    """The four superimposed points a_lm = (2l-1)·sqrt(p1) + (2m-1)·sqrt(p2)·e^{j·theta}.

    Only a11 and a01 are stored; the other two points are their exact
    negations, which makes the antipodal symmetry hold bit-for-bit.
    """

    theta: float
    a01: complex
    a11: complex

    @property
    def a00(self) -> complex:
        return -self.a11

    @property
    def a10(self) -> complex:
        return -self.a01

    def point(self, l: int, m: int) -> complex:
        return ((self.a00, self.a01), (self.a10, self.a11))[l][m]

    def points(self) -> np.ndarray:
        """All four points ordered [a00, a01, a10, a11] (index k = 2l + m)."""
        return np.array([self.a00, self.a01, self.a10, self.a11])


def super_constellation(params: SystemParams, theta: float) -> SuperConstellation:
    """Superimpose the two sensor constellations at rotation ``theta`` (radians).

    Any finite real angle is accepted; callers that reason over a canonical
    interval fold it themselves (the geometry is even and 2*pi-periodic).
    """
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta}")
    sp1 = math.sqrt(params.p1)
    sp2 = math.sqrt(params.p2)
    rot = complex(sp2 * math.cos(theta), sp2 * math.sin(theta))
    return SuperConstellation(theta=theta, a01=-sp1 + rot, a11=sp1 + rot)
