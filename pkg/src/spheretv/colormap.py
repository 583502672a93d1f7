"""Conversions between application data and sphere-valued signals.

Hue angles of the HSV color space live on the circle, chromaticity
(the normalized RGB vector) lives on the 2-sphere, and unit
quaternions double-cover the rotation group, so 3D rotation fields
become signals on the 3-sphere.  All maps here are pure per-pixel
conversions with exact inverses where one exists.
"""

import math
from dataclasses import dataclass

import numpy as np

from .signal import Signal


class DegenerateChromaticityError(ValueError):
    """Raised for black pixels, whose chromaticity is undefined.

    `pixels` lists the offending (row, col) indices.
    """

    def __init__(self, pixels):
        self.pixels = tuple((int(r), int(c)) for r, c in pixels)
        super().__init__(f"chromaticity undefined at black pixels {list(self.pixels)}")


@dataclass(frozen=True)
class RgbImage:
    """RGB image with channel values in [0, 1], stored (rows, cols, 3)."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.ascontiguousarray(self.pixels, dtype=np.float64)
        if p.ndim != 3 or p.shape[2] != 3 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("pixels must form a (rows, cols, 3) array")
        if not np.all(np.isfinite(p)):
            raise ValueError("pixel values must be finite")
        if p.min() < 0.0 or p.max() > 1.0:
            raise ValueError("pixel values must lie in [0, 1]")
        object.__setattr__(self, "pixels", p)

    @property
    def rows(self):
        return self.pixels.shape[0]

    @property
    def cols(self):
        return self.pixels.shape[1]


@dataclass(frozen=True)
class Quaternion:
    """Quaternion (w, x, y, z); `unit` methods expect unit norm."""

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError("quaternion components must be finite")
            object.__setattr__(self, name, value)

    def as_array(self):
        return np.array([self.w, self.x, self.y, self.z])

    def norm(self):
        return float(np.linalg.norm(self.as_array()))

    def is_unit(self, tol=1e-9):
        return abs(self.norm() - 1.0) <= tol

    def canonical(self):
        """Flip the overall sign so the first nonzero component is positive."""
        a = self.as_array()
        nz = np.flatnonzero(a != 0.0)
        if nz.size and a[nz[0]] < 0.0:
            a = -a
        return Quaternion(*a)


def canonical_sign(values):
    """Column-wise canonical quaternion sign for a (4, N) array.

    Flips each column whose first nonzero entry is negative; the
    rotation it represents is unchanged (double cover).
    """
    values = np.asarray(values, dtype=np.float64)
    first = np.argmax(values != 0.0, axis=0)
    lead = values[first, np.arange(values.shape[1])]
    flip = lead < 0.0
    out = values.copy()
    out[:, flip] = -out[:, flip]
    return out


def hue_to_s1(hue_degrees):
    """Map a hue angle in degrees to a point on the unit circle."""
    h = np.asarray(hue_degrees, dtype=np.float64)
    if not np.all(np.isfinite(h)):
        raise ValueError("hue must be finite")
    rad = np.deg2rad(np.mod(h, 360.0))
    return np.stack([np.cos(rad), np.sin(rad)])


def s1_to_hue(v):
    """Angle of a circle point in degrees, in [0, 360)."""
    v = np.asarray(v, dtype=np.float64)
    x, y = v[0], v[1]
    if np.any((np.asarray(x) == 0.0) & (np.asarray(y) == 0.0)):
        raise ValueError("hue undefined for the zero vector")
    deg = np.rad2deg(np.arctan2(y, x))
    return np.mod(deg, 360.0)


def chromaticity_split(img):
    """Split an RGB image into chromaticity and brightness.

    Chromaticity is the pixelwise normalized RGB vector (a point on the
    2-sphere, returned as a d=3 signal in row-major pixel order);
    brightness is the pixelwise Euclidean norm, shaped like the image.
    Black pixels have no chromaticity and raise.
    """
    p = img.pixels
    brightness = np.linalg.norm(p, axis=2)
    black = np.argwhere(brightness == 0.0)
    if len(black):
        raise DegenerateChromaticityError(black)
    chroma = (p / brightness[:, :, None]).reshape(-1, 3).T
    return Signal(chroma), brightness


def chromaticity_recombine(chroma, brightness):
    """Inverse of chromaticity_split: pixels = chromaticity * brightness."""
    brightness = np.asarray(brightness, dtype=np.float64)
    rows, cols = brightness.shape
    if chroma.dim != 3 or chroma.num_vertices != rows * cols:
        raise ValueError("chromaticity shape does not match brightness")
    pixels = chroma.values.T.reshape(rows, cols, 3) * brightness[:, :, None]
    return RgbImage(np.clip(pixels, 0.0, 1.0))


def quat_to_rotmat(q):
    """Rotation matrix of a unit quaternion (same matrix for q and -q)."""
    if isinstance(q, Quaternion):
        a = q.as_array()
    else:
        a = np.asarray(q, dtype=np.float64)
        if a.shape != (4,):
            raise ValueError("expected a quaternion with four components")
    if abs(np.linalg.norm(a) - 1.0) > 1e-9:
        raise ValueError("quaternion must have unit norm")
    w, x, y, z = a
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def rotmat_to_quat(mat):
    """Unit quaternion of a rotation matrix, canonical sign.

    Branch selection follows Shepperd's method: the largest of the
    trace and the diagonal entries decides which component is computed
    from a square root, keeping the divisions well conditioned for all
    rotations including half-turns.
    """
    r = np.asarray(mat, dtype=np.float64)
    if r.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    if np.max(np.abs(r.T @ r - np.eye(3))) > 1e-6 or abs(np.linalg.det(r) - 1.0) > 1e-6:
        raise ValueError("matrix is not a rotation")
    t = r[0, 0] + r[1, 1] + r[2, 2]
    choice = int(np.argmax([t, r[0, 0], r[1, 1], r[2, 2]]))
    if choice == 0:
        s = math.sqrt(1.0 + t)
        w = 0.5 * s
        x = 0.5 * (r[2, 1] - r[1, 2]) / s
        y = 0.5 * (r[0, 2] - r[2, 0]) / s
        z = 0.5 * (r[1, 0] - r[0, 1]) / s
    elif choice == 1:
        s = math.sqrt(1.0 + 2.0 * r[0, 0] - t)
        x = 0.5 * s
        w = 0.5 * (r[2, 1] - r[1, 2]) / s
        y = 0.5 * (r[0, 1] + r[1, 0]) / s
        z = 0.5 * (r[0, 2] + r[2, 0]) / s
    elif choice == 2:
        s = math.sqrt(1.0 + 2.0 * r[1, 1] - t)
        y = 0.5 * s
        w = 0.5 * (r[0, 2] - r[2, 0]) / s
        x = 0.5 * (r[0, 1] + r[1, 0]) / s
        z = 0.5 * (r[1, 2] + r[2, 1]) / s
    else:
        s = math.sqrt(1.0 + 2.0 * r[2, 2] - t)
        z = 0.5 * s
        w = 0.5 * (r[1, 0] - r[0, 1]) / s
        x = 0.5 * (r[0, 2] + r[2, 0]) / s
        y = 0.5 * (r[1, 2] + r[2, 1]) / s
    q = np.array([w, x, y, z])
    q /= np.linalg.norm(q)
    return Quaternion(*q).canonical()


def so3_error(x, ref):
    """Sign-invariant MSE between quaternion fields.

    Quaternions q and -q encode the same rotation, so each vertex
    contributes min(||x_n - ref_n||^2, ||x_n + ref_n||^2) and the sum
    is divided by N.
    """
    if x.values.shape != ref.values.shape:
        raise ValueError("signals must have equal shape")
    if x.dim != 4:
        raise ValueError("rotation error needs quaternion (d=4) signals")
    minus = np.sum((x.values - ref.values) ** 2, axis=0)
    plus = np.sum((x.values + ref.values) ** 2, axis=0)
    return float(np.mean(np.minimum(minus, plus)))
