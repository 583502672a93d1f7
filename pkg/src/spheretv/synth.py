"""Synthetic ground truths and noise models for the benchmark suite.

Generators cover the benchmark families: random barcodes and QR codes
(binary), a fixed piecewise-smooth circle-valued 1D profile and circle
/ rotation-valued test images (published formulas below, deterministic
by construction), plus Gaussian, wrapped-Gaussian and von Mises-Fisher
noise.  All randomness flows through the Rng wrapper so identical
seeds give bitwise-identical data.
"""

import math
from dataclasses import dataclass

import numpy as np

from .colormap import canonical_sign
from .signal import Signal


class Rng:
    """Deterministic random stream (PCG64 behind numpy's default_rng).

    `derive(k)` yields an independent stream for sub-task k of this
    stream; the split is SeedSequence hashing over (seed, path..., k),
    so worker streams never overlap and do not depend on scheduling.
    """

    def __init__(self, seed, _path=()):
        self.seed = int(seed)
        self.path = tuple(int(p) for p in _path)
        # The path goes through spawn_key, not extra entropy words: a
        # SeedSequence pads short entropy with zeros, so [seed] and
        # [seed, 0] would collide, while spawn keys are appended after
        # the padding and never do.
        self.gen = np.random.default_rng(
            np.random.SeedSequence(self.seed, spawn_key=self.path)
        )

    def derive(self, k):
        return Rng(self.seed, (*self.path, int(k)))

    def __repr__(self):
        return f"Rng(seed={self.seed}, path={self.path})"


@dataclass(frozen=True)
class NoiseModel:
    """Tagged noise description: gaussian / wrapped_gaussian / von_mises_fisher."""

    kind: str
    sigma: float = None
    kappa: float = None

    def __post_init__(self):
        if self.kind in ("gaussian", "wrapped_gaussian"):
            if self.sigma is None or self.sigma <= 0:
                raise ValueError(f"{self.kind} noise needs sigma > 0")
        elif self.kind == "von_mises_fisher":
            if self.kappa is None or self.kappa <= 0:
                raise ValueError("von_mises_fisher noise needs kappa > 0")
        else:
            raise ValueError(f"unknown noise kind {self.kind!r}")

    def apply(self, x, rng):
        if self.kind == "gaussian":
            return add_gaussian(x, self.sigma, rng)
        if self.kind == "wrapped_gaussian":
            return add_wrapped_gaussian(x, self.sigma, rng)
        return add_vmf(x, self.kappa, rng)


def gen_barcode(num_bars, bar_width, rng):
    """Random barcode: num_bars bars of bar_width pixels, each bar +/-1.

    Bar signs are independent Rademacher draws.
    """
    if num_bars < 1 or bar_width < 1:
        raise ValueError("barcode sizes must be positive")
    bars = 2.0 * rng.gen.integers(0, 2, num_bars) - 1.0
    return Signal(np.repeat(bars, bar_width)[None, :])


def gen_qrcode(blocks, block_px, rng):
    """Random QR-style image: blocks x blocks cells of block_px x block_px pixels.

    Cell signs are independent Rademacher draws.  Returns the flattened
    (row-major) binary signal together with its pixel grid graph.
    """
    from .graph import grid_graph

    if blocks < 1 or block_px < 1:
        raise ValueError("qr code sizes must be positive")
    cells = 2.0 * rng.gen.integers(0, 2, (blocks, blocks)) - 1.0
    img = np.kron(cells, np.ones((block_px, block_px)))
    side = blocks * block_px
    return Signal(img.ravel()[None, :]), grid_graph(side, side)


def circle_profile_angle(t):
    """Angle profile of the 1D circle-valued ground truth.

    Piecewise linear on [0, 1) with two jump discontinuities:

        theta(t) = -1 + 4 t              for t in [0, 0.3)
        theta(t) = 2 - 1.5 (t - 0.3)     for t in [0.3, 0.65)
        theta(t) = -0.5 + 2 (t - 0.65)   for t in [0.65, 1)

    The jumps at t = 0.3 and t = 0.65 are 1.8 and 1.975 radians.
    """
    t = np.asarray(t, dtype=np.float64)
    return np.where(
        t < 0.3,
        -1.0 + 4.0 * t,
        np.where(t < 0.65, 2.0 - 1.5 * (t - 0.3), -0.5 + 2.0 * (t - 0.65)),
    )


def gen_circle_signal_1d(n):
    """Circle-valued 1D ground truth: circle_profile_angle sampled at i/n."""
    if n < 1:
        raise ValueError("signal length must be positive")
    theta = circle_profile_angle(np.arange(n) / n)
    return Signal(np.stack([np.cos(theta), np.sin(theta)]))


def gen_circle_image(rows, cols):
    """Circle-valued test image with four regions.

    Quadrants hold three constant angles (0.3, 2.2, -1.8); the
    bottom-right quadrant carries a smooth gradient
    -0.6 + 0.75 * (u + v) in local coordinates u, v in [0, 1].
    """
    if rows < 1 or cols < 1:
        raise ValueError("image dimensions must be positive")
    r0, c0 = rows // 2, cols // 2
    theta = np.empty((rows, cols))
    theta[:r0, :c0] = 0.3
    theta[:r0, c0:] = 2.2
    theta[r0:, :c0] = -1.8
    u = np.arange(rows - r0) / max(1, rows - r0 - 1) if rows > r0 else np.zeros(0)
    v = np.arange(cols - c0) / max(1, cols - c0 - 1) if cols > c0 else np.zeros(0)
    theta[r0:, c0:] = -0.6 + 0.75 * (u[:, None] + v[None, :])
    flat = theta.ravel()
    return Signal(np.stack([np.cos(flat), np.sin(flat)]))


_SO3_REGIONS = (
    # (axis, angle in radians); angles stay below pi so the scalar part
    # is positive and the canonical sign is stable under small noise.
    ((1.0, 0.0, 0.0), 0.8),
    ((0.0, 1.0, 0.0), 1.4),
    ((0.0, 0.0, 1.0), 1.0),
    ((0.6, 0.0, 0.8), 1.8),
)


def _axis_angle_quat(axis, angle):
    axis = np.asarray(axis, dtype=np.float64)
    axis = axis / np.linalg.norm(axis)
    half = 0.5 * angle
    return np.concatenate([[math.cos(half)], math.sin(half) * axis])


def gen_so3_image(rows, cols):
    """Rotation-valued test image: quadrant regions plus a centered disk.

    Each region holds one constant unit quaternion from a fixed list of
    axis-angle rotations; the disk of radius min(rows, cols)/4 overlays
    the quadrants.  All quaternions have positive scalar part, hence
    canonical sign.
    """
    if rows < 1 or cols < 1:
        raise ValueError("image dimensions must be positive")
    quats = [_axis_angle_quat(a, w) for a, w in _SO3_REGIONS]
    r0, c0 = rows // 2, cols // 2
    region = np.zeros((rows, cols), dtype=np.int64)
    region[:r0, c0:] = 1
    region[r0:, :c0] = 2
    rr = np.arange(rows)[:, None] - (rows - 1) / 2.0
    cc = np.arange(cols)[None, :] - (cols - 1) / 2.0
    disk = rr * rr + cc * cc <= (min(rows, cols) / 4.0) ** 2
    region[disk] = 3
    table = np.stack(quats, axis=1)
    return Signal(table[:, region.ravel()])


_RGB_REGIONS = (
    # Saturated but nonzero colors; no region is black, so every pixel
    # has a well-defined chromaticity.
    (0.80, 0.20, 0.15),
    (0.15, 0.70, 0.25),
    (0.20, 0.30, 0.85),
    (0.75, 0.70, 0.20),
)


def gen_rgb_image(rows, cols):
    """Deterministic RGB test image: quadrants plus a centered disk.

    The same region layout as gen_so3_image, filled with the four fixed
    colors of _RGB_REGIONS; returns a (rows, cols, 3) array in [0, 1].
    """
    if rows < 1 or cols < 1:
        raise ValueError("image dimensions must be positive")
    r0, c0 = rows // 2, cols // 2
    region = np.zeros((rows, cols), dtype=np.int64)
    region[:r0, c0:] = 1
    region[r0:, :c0] = 2
    rr = np.arange(rows)[:, None] - (rows - 1) / 2.0
    cc = np.arange(cols)[None, :] - (cols - 1) / 2.0
    disk = rr * rr + cc * cc <= (min(rows, cols) / 4.0) ** 2
    region[disk] = 3
    table = np.asarray(_RGB_REGIONS)
    return table[region]


def add_gaussian(x, sigma, rng):
    """Add i.i.d. N(0, sigma^2) noise to every scalar entry."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return Signal(x.values + rng.gen.normal(0.0, sigma, x.values.shape))


def add_wrapped_gaussian(x, sigma, rng):
    """Perturb the angle of each circle point by N(0, sigma^2), wrapped."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if x.dim != 2:
        raise ValueError("wrapped Gaussian noise needs a circle-valued (d=2) signal")
    theta = np.arctan2(x.values[1], x.values[0])
    theta = theta + rng.gen.normal(0.0, sigma, theta.shape)
    return Signal(np.stack([np.cos(theta), np.sin(theta)]))


def _vmf_sample_w(kappa, d, count, gen):
    """Cosine components of vMF draws: rejection sampling, Wood's envelope."""
    b = (d - 1) / (math.sqrt(4.0 * kappa * kappa + (d - 1) ** 2) + 2.0 * kappa)
    x0 = (1.0 - b) / (1.0 + b)
    c = kappa * x0 + (d - 1) * math.log(1.0 - x0 * x0)
    out = np.empty(count)
    filled = 0
    while filled < count:
        todo = count - filled
        z = gen.beta((d - 1) / 2.0, (d - 1) / 2.0, todo)
        w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z)
        u = gen.uniform(0.0, 1.0, todo)
        ok = kappa * w + (d - 1) * np.log1p(-x0 * w) - c >= np.log(u)
        got = int(np.count_nonzero(ok))
        out[filled : filled + got] = w[ok]
        filled += got
    return out


def _unit_tangents(mu, gen):
    """Unit vectors orthogonal to each column of the (d, N) array mu."""
    d, n = mu.shape
    v = gen.normal(0.0, 1.0, (d, n))
    v -= mu * np.sum(v * mu, axis=0)
    norms = np.linalg.norm(v, axis=0)
    while np.any(norms < 1e-12):
        bad = norms < 1e-12
        w = gen.normal(0.0, 1.0, (d, int(bad.sum())))
        v[:, bad] = w - mu[:, bad] * np.sum(w * mu[:, bad], axis=0)
        norms = np.linalg.norm(v, axis=0)
    return v / norms


def _vmf_field(mu, kappa, gen):
    """One vMF draw around each column of the (d, N) unit-vector array mu."""
    d, n = mu.shape
    w = _vmf_sample_w(kappa, d, n, gen)
    v = _unit_tangents(mu, gen)
    return np.sqrt(np.maximum(0.0, 1.0 - w * w)) * v + w * mu


def sample_vmf(mu, kappa, rng):
    """One draw from the von Mises-Fisher density ~ exp(kappa <mu, .>).

    Wood-style rejection for the cosine component, uniform tangent
    direction.  Needs a nonzero mean direction of dimension >= 2.
    """
    mu = np.asarray(mu, dtype=np.float64)
    if mu.ndim != 1 or mu.shape[0] < 2:
        raise ValueError("mean direction must be a vector of dimension >= 2")
    norm = np.linalg.norm(mu)
    if norm == 0.0:
        raise ValueError("mean direction must be nonzero")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    return _vmf_field((mu / norm)[:, None], float(kappa), rng.gen)[:, 0]


def add_vmf(x, kappa, rng):
    """Replace each vertex vector by a vMF draw centered on it."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if x.dim < 2:
        raise ValueError("vMF noise needs dimension >= 2")
    if not x.is_sphere_valued():
        raise ValueError("vMF noise needs a sphere-valued signal")
    return Signal(_vmf_field(x.values, float(kappa), rng.gen))


def perturb_so3_vmf(x, kappa_angle, kappa_axis, rng):
    """Perturb a unit-quaternion field in axis-angle form.

    Each quaternion (cos(a/2), sin(a/2) * axis) gets its axis replaced
    by a vMF draw on the 2-sphere with concentration kappa_axis and its
    angle by a circular vMF draw with concentration kappa_angle, then
    is recomposed with canonical sign.  Near-identity rotations have no
    defined axis; they use the fixed axis (0, 0, 1).
    """
    if x.dim != 4:
        raise ValueError("rotation perturbation needs a quaternion (d=4) signal")
    if not x.is_sphere_valued():
        raise ValueError("rotation perturbation needs unit quaternions")
    if kappa_angle <= 0 or kappa_axis <= 0:
        raise ValueError("concentrations must be positive")
    w = x.values[0]
    xyz = x.values[1:]
    sin_half = np.linalg.norm(xyz, axis=0)
    angle = 2.0 * np.arctan2(sin_half, w)
    safe = np.where(sin_half > 1e-12, sin_half, 1.0)
    axis = np.where(sin_half > 1e-12, xyz / safe, 0.0)
    axis[2, sin_half <= 1e-12] = 1.0

    new_axis = _vmf_field(axis, float(kappa_axis), rng.gen)
    circ = np.stack([np.cos(angle), np.sin(angle)])
    circ_new = _vmf_field(circ, float(kappa_angle), rng.gen)
    new_angle = np.arctan2(circ_new[1], circ_new[0])

    half = 0.5 * new_angle
    quat = np.concatenate([np.cos(half)[None, :], np.sin(half) * new_axis])
    return Signal(canonical_sign(quat))
