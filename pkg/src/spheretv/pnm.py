"""Minimal PNM image I/O: PGM (P2/P5) and PPM (P3/P6), maxval 255.

Float images with channels in [0, 1] are exported by rounding each
channel to the nearest of 256 levels (ties away from zero, i.e.
floor(x * 255 + 0.5)) and imported back as level / maxval.  Both the
ASCII and binary variants of each format are supported.
"""

import numpy as np


def _quantize(values):
    v = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(v)):
        raise ValueError("image values must be finite")
    if v.min() < 0.0 or v.max() > 1.0:
        raise ValueError("image values must lie in [0, 1]")
    return np.floor(v * 255.0 + 0.5).astype(np.uint8)


def write_pgm(path, gray, binary=True):
    """Write a (rows, cols) float array in [0, 1] as PGM (P5, or P2 ascii)."""
    g = _quantize(gray)
    if g.ndim != 2:
        raise ValueError("grayscale image must be a (rows, cols) array")
    rows, cols = g.shape
    with open(path, "wb") as fh:
        if binary:
            fh.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
            fh.write(g.tobytes())
        else:
            fh.write(f"P2\n{cols} {rows}\n255\n".encode("ascii"))
            for r in range(rows):
                fh.write((" ".join(str(int(x)) for x in g[r]) + "\n").encode("ascii"))


def write_ppm(path, rgb, binary=True):
    """Write a (rows, cols, 3) float array in [0, 1] as PPM (P6, or P3 ascii)."""
    p = _quantize(rgb)
    if p.ndim != 3 or p.shape[2] != 3:
        raise ValueError("color image must be a (rows, cols, 3) array")
    rows, cols = p.shape[:2]
    with open(path, "wb") as fh:
        if binary:
            fh.write(f"P6\n{cols} {rows}\n255\n".encode("ascii"))
            fh.write(p.tobytes())
        else:
            fh.write(f"P3\n{cols} {rows}\n255\n".encode("ascii"))
            for r in range(rows):
                fh.write((" ".join(str(int(x)) for x in p[r].ravel()) + "\n").encode("ascii"))


def _tokenize_header(data, count):
    """First `count` whitespace-separated tokens, skipping # comments.

    Returns the tokens and the offset one byte past the single
    whitespace character that terminates the last token, where binary
    raster data begins.
    """
    tokens = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i : i + 1] == b"#":
            while i < n and data[i : i + 1] != b"\n":
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace() and data[i : i + 1] != b"#":
            i += 1
        if start == i:
            raise ValueError("truncated image header")
        tokens.append(data[start:i])
    if i >= n or not data[i : i + 1].isspace():
        raise ValueError("missing whitespace after image header")
    return tokens, i + 1


def _read_pnm(path, magics):
    with open(path, "rb") as fh:
        data = fh.read()
    (magic,), _ = _tokenize_header(data, 1)
    magic = magic.decode("ascii")
    if magic not in magics:
        raise ValueError(f"unsupported image format {magic!r}")
    tokens, offset = _tokenize_header(data, 4)
    cols, rows, maxval = (int(t) for t in tokens[1:])
    if cols < 1 or rows < 1:
        raise ValueError("image dimensions must be positive")
    if not 0 < maxval < 256:
        raise ValueError("only single-byte maxval images are supported")
    channels = 3 if magic in ("P3", "P6") else 1
    count = rows * cols * channels
    if magic in ("P5", "P6"):
        raster = np.frombuffer(data, dtype=np.uint8, count=count, offset=offset)
    else:
        samples = data[offset:].split()
        if len(samples) != count:
            raise ValueError(f"expected {count} samples, found {len(samples)}")
        raster = np.array([int(s) for s in samples], dtype=np.int64)
        if raster.min() < 0 or raster.max() > maxval:
            raise ValueError("sample out of range")
    img = raster.astype(np.float64) / maxval
    if channels == 3:
        return img.reshape(rows, cols, 3)
    return img.reshape(rows, cols)


def read_pgm(path):
    """Read a PGM (P2/P5) file into a (rows, cols) float array in [0, 1]."""
    return _read_pnm(path, ("P2", "P5"))


def read_ppm(path):
    """Read a PPM (P3/P6) file into a (rows, cols, 3) float array in [0, 1]."""
    return _read_pnm(path, ("P3", "P6"))
