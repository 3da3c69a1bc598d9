"""Text formats for signals and coefficient grids, and plain PGM export.

Signal file::

    # signal L=3
    1,0
    0.5,-2
    ...

one ``re,im`` pair per line; the header is optional. Grid file::

    # grid M=2 N=3
    re:im,re:im,re:im
    re:im,re:im,re:im

Numbers are written with 17 significant digits, which round-trips every
double exactly. Masks use the grid container with zero imaginary parts.
"""
import re
from pathlib import Path

import numpy as np

from .errors import InputError

_SIGNAL_HEADER = re.compile(r"#\s*signal\s+L\s*=\s*(\d+)\s*$")
_GRID_HEADER = re.compile(r"#\s*grid\s+M\s*=\s*(\d+)\s+N\s*=\s*(\d+)\s*$")


def _fmt(x):
    return "%.17g" % x


def _read_lines(path):
    try:
        return Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror or exc})") from exc


def _parse_complex(text, sep, path, lineno):
    parts = text.split(sep)
    if len(parts) != 2:
        raise InputError(f"{path}:{lineno}: expected 're{sep}im', got {text.strip()!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise InputError(f"{path}:{lineno}: malformed number in {text.strip()!r}") from None


def write_signal(path, s):
    s = np.asarray(s, dtype=np.complex128).ravel()
    lines = [f"# signal L={s.size}"]
    lines += [f"{_fmt(v.real)},{_fmt(v.imag)}" for v in s]
    Path(path).write_text("\n".join(lines) + "\n")


def read_signal(path):
    lines = _read_lines(path)
    expected = None
    values = []
    lineno = 0
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _SIGNAL_HEADER.match(stripped)
            if m and expected is None and not values:
                expected = int(m.group(1))
            continue
        values.append(_parse_complex(stripped, ",", path, lineno))
        if expected is not None and len(values) > expected:
            raise InputError(f"{path}:{lineno}: more samples than header L={expected}")
    if expected is not None and len(values) != expected:
        raise InputError(
            f"{path}:{lineno}: file ends after {len(values)} of {expected} samples"
        )
    if not values:
        raise InputError(f"{path}: no samples")
    return np.array(values, dtype=np.complex128)


def write_grid(path, grid):
    grid = np.asarray(grid, dtype=np.complex128)
    if grid.ndim != 2:
        raise ValueError(f"grid must be 2-D, got shape {grid.shape}")
    M, N = grid.shape
    lines = [f"# grid M={M} N={N}"]
    for row in grid:
        lines.append(",".join(f"{_fmt(v.real)}:{_fmt(v.imag)}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_grid(path):
    lines = _read_lines(path)
    header = None
    rows = []
    lineno = 0
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _GRID_HEADER.match(stripped)
            if m and header is None and not rows:
                header = (int(m.group(1)), int(m.group(2)))
            continue
        if header is None:
            raise InputError(f"{path}:{lineno}: data before '# grid M=<m> N=<n>' header")
        cells = stripped.split(",")
        if len(cells) != header[1]:
            raise InputError(f"{path}:{lineno}: expected {header[1]} cells, found {len(cells)}")
        rows.append([_parse_complex(c, ":", path, lineno) for c in cells])
        if len(rows) > header[0]:
            raise InputError(f"{path}:{lineno}: more rows than header M={header[0]}")
    if header is None:
        raise InputError(f"{path}: missing '# grid M=<m> N=<n>' header")
    if len(rows) != header[0]:
        raise InputError(f"{path}:{lineno}: file ends after {len(rows)} of {header[0]} rows")
    return np.array(rows, dtype=np.complex128)


def grid_to_pgm(grid, gamma_correction=1.0):
    """Plain (P2) graymap text: width = columns, height = rows, maxval 255.

    Pixels are ``round(255 * (|v| / max|v|) ** gamma_correction)``; an
    all-zero grid maps to all-zero pixels.
    """
    mag = np.abs(np.asarray(grid))
    if mag.ndim != 2 or mag.size == 0:
        raise ValueError("image grid must be a non-empty 2-D array")
    peak = mag.max()
    if peak > 0:
        pixels = np.rint(255.0 * (mag / peak) ** gamma_correction).astype(int)
    else:
        pixels = np.zeros(mag.shape, dtype=int)
    height, width = pixels.shape
    lines = ["P2", f"{width} {height}", "255"]
    lines += [" ".join(str(v) for v in row) for row in pixels]
    return "\n".join(lines) + "\n"


def write_grid_image(path, grid, gamma_correction=1.0):
    text = grid_to_pgm(grid, gamma_correction)
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"{path}: cannot write image ({exc.strerror or exc})") from exc


def read_pgm(path):
    """Parse a plain P2 graymap into an integer array (rows x columns)."""
    tokens = []
    for line in _read_lines(path):
        tokens += line.split("#", 1)[0].split()
    if not tokens or tokens[0] != "P2":
        raise InputError(f"{path}: not a plain PGM (P2) file")
    width, height, _maxval = (int(t) for t in tokens[1:4])
    data = np.array([int(t) for t in tokens[4:]], dtype=int)
    if data.size != width * height:
        raise InputError(f"{path}: expected {width * height} pixels, found {data.size}")
    return data.reshape(height, width)
