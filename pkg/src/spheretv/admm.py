"""ADMM solver for the ball-relaxed sphere-TV denoising problem.

For sphere-valued data y the denoising objective
0.5 * sum_n ||x_n - y_n||^2 + lambda * TV(x) over unit vectors equals,
up to an additive constant, the linear-plus-TV functional
-sum_n <x_n, y_n> + lambda * TV(x).  Relaxing the sphere constraint to
the unit ball makes the problem convex; ADMM splits it into an exact
TV prox step, a ball projection, and a running dual correction.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .signal import Signal, project_sphere
from .tvprox import (
    DykstraState,
    TvProxConfig,
    _tv_prox_array,
    tv_prox_signal,
    tv_value,
)


@dataclass(frozen=True)
class SolverConfig:
    """Solver parameters: TV weight `lam`, ADMM step `rho`, stopping rules."""

    lam: float
    rho: float
    max_iter: int = 10000
    tol_residual: float = 1e-6
    tol_sphere: float = 1e-5
    tvprox: TvProxConfig = field(default_factory=TvProxConfig)

    def __post_init__(self):
        if self.lam <= 0 or self.rho <= 0:
            raise ValueError("lambda and rho must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if self.tol_residual <= 0 or self.tol_sphere <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class SolverReport:
    """Convergence record for one solve.

    `stop_reason` is 'residual', 'sphere' or 'max_iter'; the residual
    criterion takes precedence when both tolerances are met in the same
    iteration.  `residual_trace` has one entry per iteration run.
    """

    iterations: int
    residual_trace: list
    final_sphere_distance: float
    final_relaxed_objective: float
    wall_time_sec: float
    stop_reason: str


def relaxed_objective(x, y, graph, lam):
    """Value of -sum_n <x_n, y_n> + lam * TV(x)."""
    if x.values.shape != y.values.shape:
        raise ValueError("signals must have equal shape")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    return float(-np.sum(x.values * y.values) + lam * tv_value(x, graph))


def original_objective(x, y, graph, lam):
    """Value of 0.5 * sum_n ||x_n - y_n||^2 + lam * TV(x) for sphere-valued x.

    On unit vectors this differs from relaxed_objective by the constant
    0.5 * sum_n (1 + ||y_n||^2).
    """
    if x.values.shape != y.values.shape:
        raise ValueError("signals must have equal shape")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if not x.is_sphere_valued():
        raise ValueError("original objective is defined for sphere-valued signals")
    diff = x.values - y.values
    return float(0.5 * np.sum(diff * diff) + lam * tv_value(x, graph))


def admm_solve(y, graph, cfg):
    """Minimize the relaxed objective over the ball product by ADMM.

    Iterates, starting from x = u = z = 0:

        x <- prox of (lam/rho) * TV at (u - z + y / rho)
        u <- per-vertex ball projection of (x + z)
        z <- z + x - u

    and returns the ball-feasible u-iterate together with a report.
    Stops when the mean per-vertex change of x drops below
    cfg.tol_residual, when the mean distance of u to the sphere drops
    below cfg.tol_sphere, or at cfg.max_iter.
    """
    if y.num_vertices != graph.num_vertices:
        raise ValueError("signal length must match the vertex count")
    t0 = time.perf_counter()
    d, n = y.values.shape
    gamma = cfg.lam / cfg.rho
    yq = y.values * (1.0 / cfg.rho)

    x = np.zeros((d, n))
    u = np.zeros((d, n))
    z = np.zeros((d, n))
    # Grid proxes are iterative; carrying their Dykstra corrections from
    # one ADMM iteration to the next is exact and much faster because
    # the prox input moves by about one residual per iteration.
    states = [DykstraState() for _ in range(d)] if graph.kind == "grid" else None
    trace = []
    stop_reason = "max_iter"
    sd = 1.0
    for _ in range(cfg.max_iter):
        x_new = _tv_prox_array(u - z + yq, graph, gamma, cfg.tvprox, states=states)
        v = x_new + z
        norms = np.sqrt(np.sum(v * v, axis=0))
        u = v / np.maximum(1.0, norms)
        z = v - u
        residual = float(np.mean(np.sqrt(np.sum((x_new - x) ** 2, axis=0))))
        x = x_new
        trace.append(residual)
        sd = float(np.mean(np.abs(np.sqrt(np.sum(u * u, axis=0)) - 1.0)))
        if residual < cfg.tol_residual:
            stop_reason = "residual"
            break
        if sd < cfg.tol_sphere:
            stop_reason = "sphere"
            break

    out = Signal(u)
    report = SolverReport(
        iterations=len(trace),
        residual_trace=trace,
        final_sphere_distance=sd,
        final_relaxed_objective=relaxed_objective(out, y, graph, cfg.lam),
        wall_time_sec=time.perf_counter() - t0,
        stop_reason=stop_reason,
    )
    return out, report


def fast_tv_heuristic(y, graph, lam, cfg=None):
    """One-shot baseline: TV prox of the data, then sphere projection.

    The pre-projection signal coincides with the first ADMM x-iterate
    when rho = 1.  Raises DegenerateProjectionError when the prox sends
    some vertex exactly to zero.
    """
    return project_sphere(tv_prox_signal(y, graph, lam, cfg))
