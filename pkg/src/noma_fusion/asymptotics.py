"""Vanishing-noise behavior: limiting regions, angle, and error floor.

As the noise power goes to zero the ML regions converge to the
nearest-neighbour cells of the better sensor's bit: decode 1 wherever the
closest superimposed point has X1 = 1.  The limiting decode-1 region is
bounded by two vertical lines at x = +-sqrt(p2) cos(theta) plus one diagonal
through the origin (a third vertical at x = 0 when theta = 0), and does not
depend on the crossover probabilities or the noise level.  The optimal
rotation tends to pi/2 (orthogonal signaling) and the bound value to eps1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bound import OptimalDesign, optimal_design
from .model import SystemParams, _check_crossovers, super_constellation


@dataclass(frozen=True)
class HighSnrRegion:
    """Line description of the limiting decode-1 region at rotation theta.

    x_right/x_left are the vertical boundary lines; diag_slope is the slope
    of the dividing line through the origin, meaningful when ``vertical`` is
    False.  ``vertical`` marks the theta = 0 degenerate case, where the
    diagonal is replaced by a third vertical line at x = 0.  The two
    generating points (a10, a11) are kept for membership tests.
    """

    x_right: float
    x_left: float
    diag_slope: float
    vertical: bool
    theta: float
    a10: complex
    a11: complex


def high_snr_region(params: SystemParams, theta: float) -> HighSnrRegion:
    """Analytic limiting decode-1 region for theta in [0, pi/2].

    Independent of eps1, eps2 and n0; only the powers and the angle enter.
    """
    if not (0.0 <= theta <= math.pi / 2.0):
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    sp2 = math.sqrt(params.p2)
    points = super_constellation(params, theta)
    x_right = sp2 * math.cos(theta)
    if theta == 0.0:
        return HighSnrRegion(
            x_right=x_right, x_left=-x_right, diag_slope=0.0, vertical=True,
            theta=theta, a10=points.a10, a11=points.a11,
        )
    sp1 = math.sqrt(params.p1)
    slope = (sp1 - sp2 * math.cos(theta)) / (sp2 * math.sin(theta))
    return HighSnrRegion(
        x_right=x_right, x_left=-x_right, diag_slope=slope, vertical=False,
        theta=theta, a10=points.a10, a11=points.a11,
    )


def high_snr_decide_batch(re, im, region: HighSnrRegion) -> np.ndarray:
    """Membership of samples in the limiting decode-1 region.

    Decode 1 iff the nearest of the four superimposed points carries X1 = 1,
    i.e. min(|r-a10|, |r-a11|) < min(|r+a10|, |r+a11|); ties decode to 0.
    """
    re = np.asarray(re, dtype=np.float64)
    im = np.asarray(im, dtype=np.float64)
    d = []
    for a in (region.a10, region.a11, -region.a10, -region.a11):
        d.append((re - a.real) ** 2 + (im - a.imag) ** 2)
    d1 = np.minimum(d[0], d[1])
    d0 = np.minimum(d[2], d[3])
    return (d1 < d0).astype(np.uint8)


def high_snr_decide(r, region: HighSnrRegion) -> int:
    """Scalar form of high_snr_decide_batch."""
    c = complex(r)
    return int(high_snr_decide_batch(np.array([c.real]), np.array([c.imag]), region)[0])


def rasterize_high_snr(region: HighSnrRegion, bounds, nx: int, ny: int):
    """Limiting-region bits on a cell-center grid; returns (xs, ys, cells)."""
    x_min, x_max, y_min, y_max = (float(v) for v in bounds)
    if not (x_max > x_min and y_max > y_min) or nx < 2 or ny < 2:
        raise ValueError(f"degenerate raster spec {bounds}, {nx}x{ny}")
    xs = x_min + (x_max - x_min) / nx * (np.arange(nx) + 0.5)
    ys = y_min + (y_max - y_min) / ny * (np.arange(ny) + 0.5)
    gx, gy = np.meshgrid(xs, ys)
    cells = high_snr_decide_batch(gx.ravel(), gy.ravel(), region).reshape(ny, nx)
    return xs, ys, cells


def boundary_band_mask(region: HighSnrRegion, xs: np.ndarray, ys: np.ndarray, width: float) -> np.ndarray:
    """True for grid cells within ``width`` of any boundary line of the region."""
    gx, gy = np.meshgrid(xs, ys)
    near = np.abs(gx - region.x_right) < width
    near |= np.abs(gx - region.x_left) < width
    if region.vertical:
        near |= np.abs(gx) < width
    else:
        s = region.diag_slope
        near |= np.abs(s * gx - gy) / math.hypot(s, 1.0) < width
    return near


def region_agreement(params: SystemParams, theta: float, bounds, nx: int, ny: int) -> float:
    """Fraction of raster cells where the ML decision matches the limiting
    region, excluding a one-cell-wide band around the analytic boundary lines.
    """
    from .decoder import rasterize_regions

    region = high_snr_region(params, theta)
    xs, ys, analytic = rasterize_high_snr(region, bounds, nx, ny)
    ml = rasterize_regions(params, theta, bounds, nx, ny).cells
    x_min, x_max, y_min, y_max = (float(v) for v in bounds)
    width = max((x_max - x_min) / nx, (y_max - y_min) / ny)
    keep = ~boundary_band_mask(region, xs, ys, width)
    return float(np.mean(analytic[keep] == ml[keep]))


def asymptotic_limits(eps1: float, eps2: float, p1: float, p2: float):
    """Vanishing-noise limits (pcf, optimal rotation, bound value).

    The factor goes to 0 linearly in n0, the optimal rotation to pi/2, and
    the bound value to eps1: asymptotically the system performs exactly as
    well as listening to the better sensor alone.
    """
    _check_crossovers(eps1, eps2)
    if not (p1 > 0.0 and p2 > 0.0):
        raise ValueError(f"powers must be positive, got p1={p1}, p2={p2}")
    return 0.0, math.pi / 2.0, eps1


def design_sequence(eps1: float, eps2: float, p1: float, p2: float, n0_values) -> list[OptimalDesign]:
    """Optimal designs along a sequence of noise powers (convergence checks)."""
    return [optimal_design(SystemParams(eps1, eps2, p1, p2, n0)) for n0 in n0_values]
