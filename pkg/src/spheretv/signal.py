"""Vertex-valued signals, projections, rounding and error metrics.

A signal assigns one vector of R^d to every vertex of a graph; stored
as a (d, N) float64 array.  Denoising inputs are unit vectors (sphere
valued), the relaxed solver works on the unit ball, and for d=1 the
characteristic rounding maps relaxed solutions back to binary ones.
"""

from dataclasses import dataclass

import numpy as np

BALL_TOL = 1e-12
SPHERE_TOL = 1e-9


class DegenerateProjectionError(ValueError):
    """Raised when projecting a zero vector onto the sphere.

    Every unit vector is equally close to the origin, so the projection
    is undefined there.  `vertices` lists the offending vertex indices.
    """

    def __init__(self, vertices):
        self.vertices = tuple(int(v) for v in vertices)
        super().__init__(
            f"sphere projection undefined at zero vectors, vertices {list(self.vertices)}"
        )


@dataclass(frozen=True)
class Signal:
    """Immutable (d, N) array of per-vertex vectors."""

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.ndim == 1:
            v = v[None, :]
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValueError("signal values must form a (d, N) array with d >= 1")
        if not np.all(np.isfinite(v)):
            raise ValueError("signal values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def dim(self):
        return self.values.shape[0]

    @property
    def num_vertices(self):
        return self.values.shape[1]

    def norms(self):
        """Euclidean norm of each vertex vector, shape (N,)."""
        return np.linalg.norm(self.values, axis=0)

    def is_ball_feasible(self, tol=BALL_TOL):
        return bool(np.all(self.norms() <= 1.0 + tol))

    def is_sphere_valued(self, tol=SPHERE_TOL):
        return bool(np.all(np.abs(self.norms() - 1.0) <= tol))

    def is_binary(self):
        """True when d=1 and every entry is exactly +1 or -1."""
        if self.dim != 1:
            return False
        return bool(np.all(np.abs(self.values) == 1.0))


@dataclass(frozen=True)
class MetricsRecord:
    """Per-run error metrics; `miou` is None for non-binary data."""

    mse: float
    sphere_distance: float
    wall_time_sec: float
    lam: float
    miou: float = None

    def __post_init__(self):
        if self.mse < 0:
            raise ValueError("mse must be nonnegative")
        if self.sphere_distance < 0:
            raise ValueError("sphere_distance must be nonnegative")
        if self.wall_time_sec < 0:
            raise ValueError("wall_time_sec must be nonnegative")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.miou is not None and not 0.0 <= self.miou <= 1.0:
            raise ValueError("miou must lie in [0, 1]")


def project_ball(x):
    """Project every vertex vector onto the unit ball: v / max(1, ||v||)."""
    norms = x.norms()
    scale = np.maximum(1.0, norms)
    return Signal(x.values / scale)


def project_sphere(x):
    """Normalize every vertex vector to unit length.

    Raises DegenerateProjectionError when any vector is zero.
    """
    norms = x.norms()
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise DegenerateProjectionError(zero)
    return Signal(x.values / norms)


def characteristic(x, eta):
    """Threshold a d=1 signal at level `eta`: +1 where value > eta, else -1."""
    if x.dim != 1:
        raise ValueError("characteristic rounding needs a one-dimensional signal")
    eta = float(eta)
    return Signal(np.where(x.values > eta, 1.0, -1.0))


def mse(x, ref):
    """Mean squared error (1/N) * sum_n ||x_n - ref_n||^2."""
    if x.values.shape != ref.values.shape:
        raise ValueError("mse needs signals of equal shape")
    diff = x.values - ref.values
    return float(np.sum(diff * diff) / x.num_vertices)


def miou(x, ref):
    """Fraction of vertices where two binary (+/-1, d=1) signals agree."""
    if not x.is_binary() or not ref.is_binary():
        raise ValueError("miou is defined for binary signals only")
    if x.num_vertices != ref.num_vertices:
        raise ValueError("miou needs signals of equal length")
    return float(np.mean(x.values == ref.values))


def sphere_distance(x):
    """Mean absolute deviation of vertex norms from 1."""
    return float(np.mean(np.abs(x.norms() - 1.0)))


def save_signal_csv(x, path):
    """Write a signal as CSV: header 'd,N', then one row of d values per vertex.

    Values are printed with 17 significant digits, enough for a
    lossless float64 round-trip.
    """
    vals = x.values
    d, n = vals.shape
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{d},{n}\n")
        for col in range(n):
            fh.write(",".join("%.17g" % v for v in vals[:, col]))
            fh.write("\n")


def load_signal_csv(path):
    """Read a signal written by save_signal_csv."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        parts = header.split(",")
        if len(parts) != 2:
            raise ValueError(f"malformed signal header {header!r}")
        d, n = int(parts[0]), int(parts[1])
        vals = np.empty((d, n), dtype=np.float64)
        for col in range(n):
            row = fh.readline()
            if not row:
                raise ValueError(f"expected {n} data rows, file ended at {col}")
            entries = row.strip().split(",")
            if len(entries) != d:
                raise ValueError(f"row {col} has {len(entries)} values, expected {d}")
            vals[:, col] = [float(e) for e in entries]
        if fh.readline().strip():
            raise ValueError("trailing content after final signal row")
    return Signal(vals)
