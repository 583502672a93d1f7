# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for the exact 1D total-variation prox.

Solves argmin_x  gamma * sum_i |x[i+1] - x[i]| + 1/2 * ||x - z||^2 per row
with a direct taut-string pass: the current segment carries running lower
and upper value candidates (vmin, vmax) plus dual accumulators (umin, umax),
and the segment is flushed as soon as a jump becomes unavoidable.  No inner
tolerance; the output satisfies the dual optimality certificate to machine
precision.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef void _solve(const double* y, double lam, double* x, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t k = 0, k0 = 0, km = 0, kp = 0
    cdef double vmin, vmax, umin, umax
    cdef double twolam = 2.0 * lam

    if n == 1:
        x[0] = y[0]
        return

    vmin = y[0] - lam
    vmax = y[0] + lam
    umin = lam
    umax = -lam

    while True:
        while k == n - 1:
            # right boundary: close the open segment
            if umin < 0.0:
                # negative slack at the right end: ride vmin through km,
                # jump down, and restart fresh on the rest (the jump pins
                # the dual, decoupling what remains)
                while True:
                    x[k0] = vmin
                    k0 += 1
                    if k0 > km:
                        break
                if k0 == n:
                    return
                k = k0
                km = k0
                kp = k0
                vmin = y[k]
                vmax = vmin + twolam
                umin = lam
                umax = -lam
            elif umax > 0.0:
                # positive slack at the right end: ride vmax through kp
                # and jump up
                while True:
                    x[k0] = vmax
                    k0 += 1
                    if k0 > kp:
                        break
                if k0 == n:
                    return
                k = k0
                km = k0
                kp = k0
                vmax = y[k]
                vmin = vmax - twolam
                umin = lam
                umax = -lam
            else:
                vmin += umin / (k - k0 + 1)
                while True:
                    x[k0] = vmin
                    k0 += 1
                    if k0 > k:
                        break
                return

        umin += y[k + 1] - vmin
        if umin < -lam:
            # negative jump: flush segment at vmin up to km
            while True:
                x[k0] = vmin
                k0 += 1
                if k0 > km:
                    break
            if k0 == n:
                return
            k = k0
            km = k0
            kp = k0
            vmin = y[k]
            vmax = vmin + twolam
            umin = lam
            umax = -lam
        else:
            umax += y[k + 1] - vmax
            if umax > lam:
                # positive jump: flush segment at vmax up to kp
                while True:
                    x[k0] = vmax
                    k0 += 1
                    if k0 > kp:
                        break
                if k0 == n:
                    return
                k = k0
                km = k0
                kp = k0
                vmax = y[k]
                vmin = vmax - twolam
                umin = lam
                umax = -lam
            else:
                # no jump: extend the segment, clamp the duals
                k += 1
                if umin >= lam:
                    km = k
                    vmin += (umin - lam) / (k - k0 + 1)
                    umin = lam
                if umax <= -lam:
                    kp = k
                    vmax += (umax + lam) / (k - k0 + 1)
                    umax = -lam


def prox_rows(const double[:, ::1] z, double lam, double[:, ::1] out):
    """Apply the exact 1D TV prox with weight `lam` to every row of `z`."""
    cdef Py_ssize_t r, rows = z.shape[0], n = z.shape[1]
    if out.shape[0] != rows or out.shape[1] != n:
        raise ValueError("output shape mismatch")
    if n == 0:
        return
    with nogil:
        for r in range(rows):
            _solve(&z[r, 0], lam, &out[r, 0], n)
