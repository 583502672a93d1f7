"""Kernel selection for the hot 1D TV prox loop.

The compiled Cython extension `spheretv._tv1d` is preferred when it was
built; otherwise the pure-Python port in `spheretv._tv1d_py` is used.
Setting the environment variable SPHERETV_PURE_PYTHON to a non-empty
value forces the Python path even when the extension is available,
which is mainly useful for the kernel benchmark and parity tests.
"""

import os

import numpy as np

from . import _tv1d_py

try:
    from . import _tv1d as _tv1d_c
except ImportError:
    _tv1d_c = None

HAVE_COMPILED = _tv1d_c is not None

if HAVE_COMPILED and not os.environ.get("SPHERETV_PURE_PYTHON"):
    _default = _tv1d_c
else:
    _default = _tv1d_py


def active_kernel():
    """Name of the kernel the package selected at import: 'compiled' or 'python'."""
    return "compiled" if _default is _tv1d_c else "python"


def _module_for(impl):
    if impl is None:
        return _default
    if impl == "compiled":
        if _tv1d_c is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return _tv1d_c
    if impl == "python":
        return _tv1d_py
    raise ValueError(f"unknown kernel implementation {impl!r}")


def tv1d_batch(z, gamma, out=None, impl=None):
    """Exact prox of gamma * TV on a chain, applied to each row of `z`.

    Solves argmin_x gamma * sum_i |x[i+1] - x[i]| + 0.5 * ||x - z_r||^2
    for every row z_r of the (rows, n) array `z`.  Returns a new array
    unless `out` is given.  `impl` picks 'compiled' or 'python'
    explicitly; by default the module-level selection applies.
    """
    z = np.ascontiguousarray(z, dtype=np.float64)
    if z.ndim != 2:
        raise ValueError("expected a 2d array of row signals")
    gamma = float(gamma)
    if not gamma > 0.0:
        raise ValueError("gamma must be positive")
    if out is None:
        out = np.empty_like(z)
    _module_for(impl).prox_rows(z, gamma, out)
    return out


def tv1d(z, gamma, impl=None):
    """Exact prox of gamma * TV for a single 1D signal."""
    z = np.ascontiguousarray(z, dtype=np.float64)
    if z.ndim != 1:
        raise ValueError("expected a 1d array")
    return tv1d_batch(z[None, :], gamma, impl=impl)[0]
