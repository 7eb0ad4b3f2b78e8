"""Fused-bit ML decoding: likelihoods, two equivalent rule forms, region rasters.

The receiver recovers the source bit (not the individual sensor bits) from
one complex channel sample.  Two mathematically equivalent decision rules are
provided: ``ml_decide`` sums the four mixture terms directly (the reference
rule, used by the simulator), and ``ml_decide_tanh`` evaluates the reduced
tanh-threshold form (used to validate the algebra and to trace the decision
boundary cheaply).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import SystemParams, conditional_pmf, super_constellation


def decode_arrays(params: SystemParams, theta: float):
    """Kernel inputs for (params, theta): point coordinates, weights, 1/n0.

    Points are ordered [a00, a01, a10, a11]; weights w_i[k] are the sensor-pair
    probabilities given hypothesis i in the same order.
    """
    points = super_constellation(params, theta).points()
    pmf = conditional_pmf(params.eps1, params.eps2)
    a_re = np.ascontiguousarray(points.real)
    a_im = np.ascontiguousarray(points.imag)
    w0 = np.ascontiguousarray(pmf.weights(0))
    w1 = np.ascontiguousarray(pmf.weights(1))
    return a_re, a_im, w0, w1, 1.0 / params.n0


def _split(r):
    """Complex scalar-or-array -> contiguous (re, im) float64 arrays."""
    arr = np.atleast_1d(np.asarray(r, dtype=np.complex128))
    return np.ascontiguousarray(arr.real), np.ascontiguousarray(arr.imag)


def scaled_likelihoods(r, params: SystemParams, theta: float):
    """Max-factored likelihood pair (s0, s1, m) for sample(s) r.

    The conditional density of r given X=i is proportional to s_i * exp(m);
    the common factor exp(m) is the largest mixture exponential and cancels
    in any comparison between the two hypotheses, so s0, s1 stay positive and
    finite even where the raw densities underflow.
    """
    re, im = _split(r)
    a_re, a_im, w0, w1, inv_n0 = decode_arrays(params, theta)
    return _kernels.scaled_sums(re, im, a_re, a_im, w0, w1, inv_n0)


def likelihood(r, i: int, params: SystemParams, theta: float):
    """Mixture likelihood sum_lm p_lm|i * exp(-|r - a_lm|^2 / n0).

    Computed with max-exponent factoring, so no term spuriously underflows
    before the sum; the final value itself can still be below the smallest
    double for extreme |r|/n0 (use log_likelihood there).
    """
    s0, s1, m = scaled_likelihoods(r, params, theta)
    out = (s1 if i else s0) * np.exp(m)
    return float(out[0]) if np.isscalar(r) or np.asarray(r).ndim == 0 else out


def log_likelihood(r, i: int, params: SystemParams, theta: float):
    """log of `likelihood`, finite wherever r is finite."""
    s0, s1, m = scaled_likelihoods(r, params, theta)
    out = np.log(s1 if i else s0) + m
    return float(out[0]) if np.isscalar(r) or np.asarray(r).ndim == 0 else out


def decide_batch(re: np.ndarray, im: np.ndarray, params: SystemParams, theta: float) -> np.ndarray:
    """ML decisions for arrays of sample coordinates (uint8 bits)."""
    a_re, a_im, w0, w1, inv_n0 = decode_arrays(params, theta)
    return _kernels.decide(
        np.ascontiguousarray(re, dtype=np.float64),
        np.ascontiguousarray(im, dtype=np.float64),
        a_re, a_im, w0, w1, inv_n0,
    )


def ml_decide(r, params: SystemParams, theta: float) -> int:
    """Decode one sample to the source bit: 1 iff the X=1 likelihood is
    strictly larger, exact ties resolving to 0."""
    re, im = _split(r)
    return int(decide_batch(re, im, params, theta)[0])


@dataclass(frozen=True)
class BoundaryConstants:
    """The two boundary weights K0, K1 and their normalized difference.

    k0 = (eps2 - eps1) * exp(-|a01|^2 / n0)
    k1 = (1 - eps1 - eps2) * exp(-|a11|^2 / n0)
    ratio = (k0 - k1) / (k0 + k1), evaluated as tanh((log k0 - log k1) / 2)
    so it stays accurate when both exponentials underflow.
    """

    k0: float
    k1: float
    ratio: float

    @classmethod
    def from_params(cls, params: SystemParams, theta: float) -> "BoundaryConstants":
        c = super_constellation(params, theta)
        k0 = (params.eps2 - params.eps1) * math.exp(-abs(c.a01) ** 2 / params.n0)
        k1 = (1.0 - params.eps1 - params.eps2) * math.exp(-abs(c.a11) ** 2 / params.n0)
        ratio = math.tanh(0.5 * _log_k0_minus_log_k1(params, theta))
        return cls(k0=k0, k1=k1, ratio=ratio)


def _log_k0_minus_log_k1(params: SystemParams, theta: float) -> float:
    # |a11|^2 - |a01|^2 = 4 sqrt(p1 p2) cos(theta)
    gap = 4.0 * math.sqrt(params.p1 * params.p2) * math.cos(theta)
    return (
        math.log(params.eps2 - params.eps1)
        - math.log(1.0 - params.eps1 - params.eps2)
        + gap / params.n0
    )


def _tanh_terms(r, params: SystemParams, theta: float):
    re, im = _split(r)
    sp1 = math.sqrt(params.p1)
    sp2 = math.sqrt(params.p2)
    # A = 2 Re(r conj(c11)) / n0 with c11 = sqrt(p1); B likewise for c12 = sqrt(p2) e^{j theta}
    a = 2.0 * re * sp1 / params.n0
    b = 2.0 * sp2 * (re * math.cos(theta) + im * math.sin(theta)) / params.n0
    ratio = math.tanh(0.5 * _log_k0_minus_log_k1(params, theta))
    return np.tanh(a), np.tanh(b), ratio


def boundary_residual(r, params: SystemParams, theta: float):
    """tanh A(r) - tanh B(r, theta) * (K0 - K1)/(K0 + K1).

    Positive strictly inside the decode-1 region, negative inside decode-0,
    and zero exactly on the ML decision boundary.
    """
    ta, tb, ratio = _tanh_terms(r, params, theta)
    out = ta - tb * ratio
    return float(out[0]) if np.isscalar(r) or np.asarray(r).ndim == 0 else out


def tanh_decide_batch(re: np.ndarray, im: np.ndarray, params: SystemParams, theta: float) -> np.ndarray:
    """Batch form of ml_decide_tanh."""
    r = np.asarray(re, dtype=np.float64) + 1j * np.asarray(im, dtype=np.float64)
    ta, tb, ratio = _tanh_terms(r, params, theta)
    return (ta > tb * ratio).astype(np.uint8)


def ml_decide_tanh(r, params: SystemParams, theta: float) -> int:
    """Decode one sample via the reduced threshold rule
    tanh A(r) > tanh B(r, theta) * (K0 - K1)/(K0 + K1); ties decode to 0.

    Agrees with ml_decide everywhere off the decision boundary.
    """
    ta, tb, ratio = _tanh_terms(r, params, theta)
    return int(ta[0] > tb[0] * ratio)


@dataclass(frozen=True)
class RegionRaster:
    """Decoded bits sampled at the cell centers of a rectangular grid.

    ``cells[iy, ix]`` is the decision at center (xs[ix], ys[iy]); rows are
    written x-fastest.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    cells: np.ndarray
    theta: float
    params: SystemParams

    @property
    def xs(self) -> np.ndarray:
        dx = (self.x_max - self.x_min) / self.nx
        return self.x_min + dx * (np.arange(self.nx) + 0.5)

    @property
    def ys(self) -> np.ndarray:
        dy = (self.y_max - self.y_min) / self.ny
        return self.y_min + dy * (np.arange(self.ny) + 0.5)


def _check_bounds(bounds, nx: int, ny: int) -> None:
    x_min, x_max, y_min, y_max = bounds
    if not (x_max > x_min and y_max > y_min):
        raise ValueError(f"degenerate raster bounds {bounds}")
    if nx < 2 or ny < 2:
        raise ValueError(f"raster needs nx, ny >= 2, got {nx}x{ny}")


def rasterize_regions(params: SystemParams, theta: float, bounds, nx: int, ny: int) -> RegionRaster:
    """Sample the ML decision at every cell center of a bounds-aligned grid.

    Cell centers (never corners) are used so the measure-zero boundary is not
    sampled systematically.
    """
    _check_bounds(bounds, nx, ny)
    x_min, x_max, y_min, y_max = (float(v) for v in bounds)
    xs = x_min + (x_max - x_min) / nx * (np.arange(nx) + 0.5)
    ys = y_min + (y_max - y_min) / ny * (np.arange(ny) + 0.5)
    gx, gy = np.meshgrid(xs, ys)
    bits = decide_batch(gx.ravel(), gy.ravel(), params, theta).reshape(ny, nx)
    bits.setflags(write=False)
    return RegionRaster(
        x_min=x_min, x_max=x_max, y_min=y_min, y_max=y_max,
        nx=nx, ny=ny, cells=bits, theta=theta, params=params,
    )


def write_cells_csv(xs: np.ndarray, ys: np.ndarray, cells: np.ndarray, fh) -> None:
    """CSV rows ``x,y,bit`` for a cell grid, x fastest, 9 significant digits."""
    fh.write("x,y,bit\n")
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            fh.write(f"{x:.9g},{y:.9g},{int(cells[iy, ix])}\n")


def write_raster_csv(raster: RegionRaster, fh) -> None:
    write_cells_csv(raster.xs, raster.ys, raster.cells, fh)
