"""Certification that threshold rounding of relaxed solutions is exact.

For one-dimensional (binary) signals the ball relaxation is tight:
thresholding a relaxed minimizer at almost any level eta in [-1, 1]
yields a binary minimizer of the original problem, because the
objective of the relaxation equals the average of the objectives of
its thresholdings.  This module provides the machinery to check that
claim instance by instance: exhaustive enumeration of all binary
signals, the exact interval form of the coarea identity, and a
per-instance tightness report.
"""

from dataclasses import dataclass

import numpy as np

from .admm import original_objective, relaxed_objective
from .signal import Signal, characteristic

ENUMERATION_CAP = 24
_CHUNK_BITS = 16


class ResourceLimitError(ValueError):
    """Raised when a brute-force enumeration would be too large."""


@dataclass(frozen=True)
class TightnessReport:
    """Outcome of rounding a relaxed solution against the exact optimum.

    `best_binary_value` is the smallest original-objective value among
    the thresholdings tried; `gap` is its excess over the brute-force
    optimum (can be slightly negative only through rounding error).
    `eta_values` holds the objective value for each level in
    `eta_used`, so a measure-zero bad level is visible rather than
    fatal.
    """

    relaxed_value: float
    best_binary_value: float
    brute_force_value: float
    eta_used: tuple
    eta_values: tuple
    attained: bool
    gap: float


def brute_force_binary(y, graph, lam):
    """Exact minimizer of the original objective over all 2^N sign patterns.

    Only for d=1 and N <= 24.  Returns (signal, value).  Ties are broken
    by the lexicographically smallest pattern, reading vertex 0 first
    with -1 ordered before +1.
    """
    if y.dim != 1:
        raise ValueError("brute force enumeration needs a one-dimensional signal")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    n = y.num_vertices
    if n > ENUMERATION_CAP:
        raise ResourceLimitError(
            f"enumeration over 2^{n} patterns exceeds the N <= {ENUMERATION_CAP} cap"
        )
    yv = y.values[0]
    # With s_n in {-1, +1}: 0.5 * sum (s_n - y_n)^2 = const - sum s_n y_n
    # and each disagreeing edge contributes |s_n - s_m| = 2.
    const = 0.5 * (n + float(np.sum(yv * yv)))
    efrom, eto = graph.edge_from, graph.edge_to

    # Enumerate patterns as integers whose most significant bit is
    # vertex 0 and bit value 0 means -1, so ascending integer order is
    # lexicographic pattern order and the first argmin wins ties.
    shifts = (n - 1 - np.arange(n)).astype(np.uint32)
    total = 1 << n
    chunk = 1 << min(_CHUNK_BITS, n)
    best_value = np.inf
    best_code = 0
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        bits = (codes[:, None] >> shifts[None, :]) & 1
        s = 2.0 * bits - 1.0
        vals = const - s @ yv
        if len(efrom):
            vals += 2.0 * lam * np.sum(bits[:, efrom] != bits[:, eto], axis=1)
        i = int(np.argmin(vals))
        if vals[i] < best_value:
            best_value = float(vals[i])
            best_code = int(codes[i])
    bits = (best_code >> shifts) & 1
    return Signal((2.0 * bits - 1.0)[None, :]), best_value


def coarea_check(a, b):
    """Both sides of |a - b| = 0.5 * integral of |chi_eta(a) - chi_eta(b)|.

    The integrand over eta in [-1, 1] is 2 exactly when eta separates a
    and b and 0 otherwise, so the right side is computed exactly as the
    length of the interval between a and b.  Returns (lhs, rhs).
    """
    a = float(a)
    b = float(b)
    if not (-1.0 <= a <= 1.0 and -1.0 <= b <= 1.0):
        raise ValueError("coarea_check arguments must lie in [-1, 1]")
    lhs = abs(a - b)
    rhs = 0.5 * 2.0 * (max(a, b) - min(a, b))
    return lhs, rhs


def averaged_relaxed_objective(x, y, graph, lam):
    """Exact value of 0.5 * integral over eta of the rounded objective.

    The map eta -> relaxed_objective(chi_eta(x)) is piecewise constant
    with breakpoints at the entries of x, so the integral over [-1, 1]
    is a finite sum of interval lengths times midpoint evaluations.
    For every ball-feasible d=1 signal this average equals
    relaxed_objective(x) exactly; the identity is what makes threshold
    rounding of relaxed minimizers lossless.
    """
    if x.dim != 1:
        raise ValueError("the averaging identity concerns one-dimensional signals")
    entries = np.clip(x.values[0], -1.0, 1.0)
    breaks = np.unique(np.concatenate([entries, [-1.0, 1.0]]))
    total = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi <= lo:
            continue
        mid = 0.5 * (lo + hi)
        rounded = characteristic(x, mid)
        total += (hi - lo) * relaxed_objective(rounded, y, graph, lam)
    return 0.5 * total


def verify_tightness(y, graph, lam, relaxed, etas=(), identity_tol=1e-9):
    """Certify that thresholding `relaxed` reaches the exact binary optimum.

    Rounds at level 0 and at each extra level in `etas`, compares the
    best resulting original-objective value against brute-force
    enumeration, and checks the exact averaging identity
    relaxed_objective(relaxed) = averaged_relaxed_objective(relaxed)
    to `identity_tol` (a violation means the inputs are malformed, not
    that rounding failed, so it raises).
    """
    if not relaxed.is_ball_feasible():
        raise ValueError("relaxed signal must be ball-feasible")
    levels = []
    for eta in [0.0, *etas]:
        eta = float(eta)
        if eta not in levels:
            levels.append(eta)

    values = []
    for eta in levels:
        rounded = characteristic(relaxed, eta)
        values.append(original_objective(rounded, y, graph, lam))
    best_binary = min(values)

    _, brute_value = brute_force_binary(y, graph, lam)

    lhs = relaxed_objective(relaxed, y, graph, lam)
    rhs = averaged_relaxed_objective(relaxed, y, graph, lam)
    if abs(lhs - rhs) > identity_tol:
        raise ValueError(
            f"averaging identity violated: {lhs!r} vs {rhs!r} for a ball-feasible signal"
        )

    return TightnessReport(
        relaxed_value=lhs,
        best_binary_value=best_binary,
        brute_force_value=brute_value,
        eta_used=tuple(levels),
        eta_values=tuple(values),
        attained=bool(best_binary <= brute_value + 1e-7),
        gap=float(best_binary - brute_value),
    )
