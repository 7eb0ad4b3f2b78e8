# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled decision kernel: fused batched ML decisions over received samples.

Arithmetic mirrors the numpy fallback: squared distances to the four
superimposed points, max-exponent factoring, antipodal-pair summation order.
"""

from libc.math cimport exp, log

import numpy as np


def decide(const double[::1] re, const double[::1] im,
           const double[::1] a_re, const double[::1] a_im,
           const double[::1] w0, const double[::1] w1,
           double inv_n0):
    """ML decisions for a batch of received samples; ties decode to 0."""
    cdef Py_ssize_t n = re.shape[0]
    out = np.empty(n, dtype=np.uint8)
    cdef unsigned char[::1] ov = out
    cdef double a0r = a_re[0], a1r = a_re[1], a2r = a_re[2], a3r = a_re[3]
    cdef double a0i = a_im[0], a1i = a_im[1], a2i = a_im[2], a3i = a_im[3]
    cdef double w00 = w0[0], w01 = w0[1], w02 = w0[2], w03 = w0[3]
    cdef double w10 = w1[0], w11 = w1[1], w12 = w1[2], w13 = w1[3]
    cdef double x, y, dx, dy, e0, e1, e2, e3, m, t0, t1, t2, t3, s0, s1
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            x = re[i]
            y = im[i]
            dx = x - a0r; dy = y - a0i
            e0 = -(dx * dx + dy * dy) * inv_n0
            dx = x - a1r; dy = y - a1i
            e1 = -(dx * dx + dy * dy) * inv_n0
            dx = x - a2r; dy = y - a2i
            e2 = -(dx * dx + dy * dy) * inv_n0
            dx = x - a3r; dy = y - a3i
            e3 = -(dx * dx + dy * dy) * inv_n0
            m = e0
            if e1 > m: m = e1
            if e2 > m: m = e2
            if e3 > m: m = e3
            t0 = exp(e0 - m)
            t1 = exp(e1 - m)
            t2 = exp(e2 - m)
            t3 = exp(e3 - m)
            s0 = (w00 * t0 + w03 * t3) + (w01 * t1 + w02 * t2)
            s1 = (w10 * t0 + w13 * t3) + (w11 * t1 + w12 * t2)
            ov[i] = 1 if s1 > s0 else 0
    return out


def scaled_sums(const double[::1] re, const double[::1] im,
                const double[::1] a_re, const double[::1] a_im,
                const double[::1] w0, const double[::1] w1,
                double inv_n0):
    """Max-factored likelihood sums (s0, s1, m) for a batch of samples."""
    cdef Py_ssize_t n = re.shape[0]
    s0_arr = np.empty(n, dtype=np.float64)
    s1_arr = np.empty(n, dtype=np.float64)
    m_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] s0v = s0_arr
    cdef double[::1] s1v = s1_arr
    cdef double[::1] mv = m_arr
    cdef double a0r = a_re[0], a1r = a_re[1], a2r = a_re[2], a3r = a_re[3]
    cdef double a0i = a_im[0], a1i = a_im[1], a2i = a_im[2], a3i = a_im[3]
    cdef double w00 = w0[0], w01 = w0[1], w02 = w0[2], w03 = w0[3]
    cdef double w10 = w1[0], w11 = w1[1], w12 = w1[2], w13 = w1[3]
    cdef double x, y, dx, dy, e0, e1, e2, e3, m, t0, t1, t2, t3
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            x = re[i]
            y = im[i]
            dx = x - a0r; dy = y - a0i
            e0 = -(dx * dx + dy * dy) * inv_n0
            dx = x - a1r; dy = y - a1i
            e1 = -(dx * dx + dy * dy) * inv_n0
            dx = x - a2r; dy = y - a2i
            e2 = -(dx * dx + dy * dy) * inv_n0
            dx = x - a3r; dy = y - a3i
            e3 = -(dx * dx + dy * dy) * inv_n0
            m = e0
            if e1 > m: m = e1
            if e2 > m: m = e2
            if e3 > m: m = e3
            t0 = exp(e0 - m)
            t1 = exp(e1 - m)
            t2 = exp(e2 - m)
            t3 = exp(e3 - m)
            s0v[i] = (w00 * t0 + w03 * t3) + (w01 * t1 + w02 * t2)
            s1v[i] = (w10 * t0 + w13 * t3) + (w11 * t1 + w12 * t2)
            mv[i] = m
    return s0_arr, s1_arr, m_arr
