"""Denoising of sphere-valued signals on graphs by convex relaxation.

The package solves anisotropic total-variation denoising where each
vertex of a graph carries a unit vector.  The non-convex sphere
constraint is relaxed to the unit ball, the relaxed problem is solved
by ADMM with exact 1D TV proximal kernels, and for one-dimensional
(binary) data the relaxation is provably tight: thresholding the
relaxed minimizer recovers an exact solution of the original problem.
Verification utilities (brute-force enumeration, coarea checks) and a
benchmark harness for synthetic barcode / QR / circle / color / SO(3)
experiments are included.
"""

from .graph import Graph, chain_graph, grid_graph
from .signal import (
    DegenerateProjectionError,
    MetricsRecord,
    Signal,
    characteristic,
    load_signal_csv,
    miou,
    mse,
    project_ball,
    project_sphere,
    save_signal_csv,
    sphere_distance,
)
from .tvprox import TvProxConfig, tv_prox_1d, tv_prox_grid, tv_prox_graph_dual, tv_prox_signal, tv_value
from .admm import SolverConfig, SolverReport, admm_solve, fast_tv_heuristic, original_objective, relaxed_objective
from .tightness import ResourceLimitError, TightnessReport, brute_force_binary, coarea_check, verify_tightness

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "chain_graph",
    "grid_graph",
    "Signal",
    "MetricsRecord",
    "DegenerateProjectionError",
    "project_ball",
    "project_sphere",
    "characteristic",
    "mse",
    "miou",
    "sphere_distance",
    "save_signal_csv",
    "load_signal_csv",
    "TvProxConfig",
    "tv_prox_1d",
    "tv_prox_grid",
    "tv_prox_graph_dual",
    "tv_prox_signal",
    "tv_value",
    "SolverConfig",
    "SolverReport",
    "admm_solve",
    "fast_tv_heuristic",
    "relaxed_objective",
    "original_objective",
    "TightnessReport",
    "ResourceLimitError",
    "brute_force_binary",
    "coarea_check",
    "verify_tightness",
    "__version__",
]
