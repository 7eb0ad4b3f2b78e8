"""Closed-form planar error bound, its derivative, and the optimal rotation.

Restricting the decision regions to the left/right half-planes gives a
closed-form upper bound on the error probability as a function of the
rotation angle.  The bound is minimized at arccos of the power-correlation
factor (clamped at 1), where the true ML regions are themselves planar, so
the bound is exact at its own minimizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import erfc

from .model import SystemParams

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def q_function(x):
    """Standard normal tail probability Q(x) = Pr(N(0,1) > x), via erfc."""
    return 0.5 * erfc(x / _SQRT2)


def normal_pdf(x):
    """Standard normal density."""
    return _INV_SQRT_2PI * np.exp(-0.5 * np.square(x))


def pcf(params: SystemParams) -> float:
    """Power-correlation factor n0/(4 sqrt(p1 p2)) * ln((1-eps1-eps2)/(eps2-eps1)).

    Strictly positive; values above 1 mean the bound is minimized at zero
    rotation.  Reported unclamped so callers can see that regime directly.
    """
    log_rho = math.log((1.0 - params.eps2 - params.eps1) / (params.eps2 - params.eps1))
    return params.n0 / (4.0 * math.sqrt(params.p1 * params.p2)) * log_rho


def planar_upper_bound(theta, params: SystemParams):
    """Half-plane error bound at rotation theta (radians; scalar or array).

    eps1 + (1-eps1-eps2) Q((sqrt(p1)+sqrt(p2) cos t)/sigma)
         + (eps2-eps1)   Q((sqrt(p1)-sqrt(p2) cos t)/sigma)
    """
    sp1 = math.sqrt(params.p1)
    sp2 = math.sqrt(params.p2)
    sigma = params.sigma
    c = np.cos(theta)
    return (
        params.eps1
        + (1.0 - params.eps1 - params.eps2) * q_function((sp1 + sp2 * c) / sigma)
        + (params.eps2 - params.eps1) * q_function((sp1 - sp2 * c) / sigma)
    )


def bound_derivative(theta, params: SystemParams):
    """d/dtheta of planar_upper_bound, in closed form.

    Vanishes at theta in {0, pi} (sin factor) and, when pcf <= 1, at
    arccos(pcf).
    """
    sp1 = math.sqrt(params.p1)
    sp2 = math.sqrt(params.p2)
    sigma = params.sigma
    c = np.cos(theta)
    scale = np.sin(theta) * sp2 / sigma
    return scale * (
        (1.0 - params.eps1 - params.eps2) * normal_pdf((sp1 + sp2 * c) / sigma)
        - (params.eps2 - params.eps1) * normal_pdf((sp1 - sp2 * c) / sigma)
    )


@dataclass(frozen=True)
class OptimalDesign:
    """Bound-minimizing rotation and its bound value.

    ``clamped`` is set when the power-correlation factor exceeds 1, in which
    case zero rotation is optimal.
    """

    pcf: float
    theta_star: float
    pe_ub_star: float
    clamped: bool


def optimal_design(params: SystemParams) -> OptimalDesign:
    """Minimize the planar bound over rotation: theta* = arccos(min(pcf, 1)).

    The arccos argument is additionally clamped against floating-point drift.
    """
    factor = pcf(params)
    arg = min(max(factor, -1.0), 1.0)
    theta_star = math.acos(arg)
    return OptimalDesign(
        pcf=factor,
        theta_star=theta_star,
        pe_ub_star=float(planar_upper_bound(theta_star, params)),
        clamped=factor > 1.0,
    )


class BoundCurvePoint(NamedTuple):
    theta: float
    pe_ub: float


def bound_curve(params: SystemParams, thetas) -> list[BoundCurvePoint]:
    """The bound evaluated along a sequence of angles."""
    values = planar_upper_bound(np.asarray(thetas, dtype=np.float64), params)
    return [BoundCurvePoint(float(t), float(v)) for t, v in zip(np.asarray(thetas), values)]


# SNR convention: geometric mean of the two sensor powers over the noise power,
# reported in dB.  All SNR<->n0 conversions go through these two helpers.

def snr_db_to_n0(p1: float, p2: float, snr_db: float) -> float:
    return math.sqrt(p1 * p2) / 10.0 ** (snr_db / 10.0)


def n0_to_snr_db(p1: float, p2: float, n0: float) -> float:
    return 10.0 * math.log10(math.sqrt(p1 * p2) / n0)


def params_from_snr_db(eps1: float, eps2: float, p1: float, p2: float, snr_db: float) -> SystemParams:
    """Build a problem instance with the noise power implied by an SNR in dB."""
    return SystemParams(eps1=eps1, eps2=eps2, p1=p1, p2=p2, n0=snr_db_to_n0(p1, p2, snr_db))
