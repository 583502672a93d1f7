"""Pure-Python fallback for the exact 1D total-variation prox.

Same taut-string pass as the compiled extension, in the same arithmetic
order, so both kernels produce bit-identical output.  This path is slow
(a Python loop per element) and exists so the package works without a
C toolchain; `spheretv.kernels` picks the compiled version when built.
"""

import numpy as np


def _solve(y, lam, x):
    n = len(y)
    if n == 1:
        x[0] = y[0]
        return
    twolam = 2.0 * lam

    k = 0
    k0 = 0
    km = 0
    kp = 0
    vmin = y[0] - lam
    vmax = y[0] + lam
    umin = lam
    umax = -lam

    while True:
        while k == n - 1:
            if umin < 0.0:
                # negative slack at the right end: the string rides vmin
                # through km and jumps down; the rest restarts fresh (the
                # jump pins the dual, decoupling what remains)
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
                k += 1
                if umin >= lam:
                    km = k
                    vmin += (umin - lam) / (k - k0 + 1)
                    umin = lam
                if umax <= -lam:
                    kp = k
                    vmax += (umax + lam) / (k - k0 + 1)
                    umax = -lam


def prox_rows(z, lam, out):
    """Apply the exact 1D TV prox with weight `lam` to every row of `z`."""
    rows, n = z.shape
    if out.shape != z.shape:
        raise ValueError("output shape mismatch")
    if n == 0:
        return
    lam = float(lam)
    for r in range(rows):
        yr = z[r].tolist()
        xr = [0.0] * n
        _solve(yr, lam, xr)
        out[r] = xr
