"""Text formats for matrices, vectors, and spectra.

Matrices travel either in a MatrixMarket-style coordinate format
("%%MatrixMarket matrix coordinate complex general", 1-based indices, one
"row col re im" entry per line) or in a dense format ("dense <rows> <cols>
complex" followed by one matrix row per line as "re im" pairs).  Values are
written with 17 significant digits so read(write(m)) == m exactly.

Spectra are written as delimited text with a "# omega,epsilon" header (or
"# omega,re,im" for the complex diagnostic curve) at 12 significant digits.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch, ParseError
from .spectrum import Spectrum

_COORD_HEADER = "%%MatrixMarket matrix coordinate complex general"
_FULL = ".17g"
_SPEC = ".12g"


def _fmt(value: float, spec: str) -> str:
    return format(float(value), spec)


def write_matrix(mat, path, fmt: str = "coordinate") -> None:
    """Write a matrix in coordinate (default) or dense text format."""
    mat = np.atleast_2d(np.asarray(mat, dtype=np.complex128))
    rows, cols = mat.shape
    lines = []
    if fmt == "coordinate":
        idx = np.argwhere(mat != 0)
        lines.append(_COORD_HEADER)
        lines.append(f"{rows} {cols} {len(idx)}")
        for i, j in idx:
            v = mat[i, j]
            lines.append(
                f"{i + 1} {j + 1} {_fmt(v.real, _FULL)} {_fmt(v.imag, _FULL)}"
            )
    elif fmt == "dense":
        lines.append(f"dense {rows} {cols} complex")
        for i in range(rows):
            lines.append(
                " ".join(
                    f"{_fmt(v.real, _FULL)} {_fmt(v.imag, _FULL)}" for v in mat[i]
                )
            )
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_floats(tokens, count, lineno):
    if len(tokens) != count:
        raise ParseError(f"expected {count} fields, got {len(tokens)}", line=lineno)
    try:
        return [float(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(str(exc), line=lineno) from exc


def read_matrix(path) -> np.ndarray:
    """Read a matrix written by :func:`write_matrix` (either format)."""
    with open(path, "r", encoding="ascii") as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise ParseError("empty file", line=1)
    header = raw[0].strip()
    if header.startswith("%%MatrixMarket"):
        return _read_coordinate(raw)
    if header.startswith("dense"):
        return _read_dense(raw)
    raise ParseError(f"unrecognized header {header!r}", line=1)


def _read_coordinate(raw) -> np.ndarray:
    fields = raw[0].split()
    if len(fields) < 4 or fields[1] != "matrix" or fields[2] != "coordinate":
        raise ParseError(f"unsupported MatrixMarket header {raw[0]!r}", line=1)
    value_type = fields[3]
    if value_type not in ("complex", "real", "integer"):
        raise ParseError(f"unsupported value type {value_type!r}", line=1)
    per_entry = 4 if value_type == "complex" else 3
    lineno = 1
    size_line = None
    for lineno, line in enumerate(raw[1:], start=2):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        size_line = (stripped, lineno)
        break
    if size_line is None:
        raise ParseError("missing size line", line=lineno)
    tokens = size_line[0].split()
    if len(tokens) != 3:
        raise ParseError("size line must be '<rows> <cols> <nnz>'", line=size_line[1])
    try:
        rows, cols, nnz = (int(t) for t in tokens)
    except ValueError as exc:
        raise ParseError(str(exc), line=size_line[1]) from exc
    mat = np.zeros((rows, cols), dtype=np.complex128)
    seen = 0
    for lineno, line in enumerate(raw[size_line[1]:], start=size_line[1] + 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        tokens = stripped.split()
        if len(tokens) != per_entry:
            raise ParseError(f"expected {per_entry} fields, got {len(tokens)}", line=lineno)
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
        vals = _parse_floats(tokens[2:], per_entry - 2, lineno)
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(f"index ({i}, {j}) out of bounds for {rows}x{cols}", line=lineno)
        mat[i - 1, j - 1] = vals[0] + 1j * (vals[1] if per_entry == 4 else 0.0)
        seen += 1
    if seen != nnz:
        raise ParseError(f"declared {nnz} entries but found {seen}", line=len(raw))
    return mat


def _read_dense(raw) -> np.ndarray:
    tokens = raw[0].split()
    if len(tokens) != 4 or tokens[0] != "dense" or tokens[3] != "complex":
        raise ParseError(f"dense header must be 'dense <rows> <cols> complex'", line=1)
    try:
        rows, cols = int(tokens[1]), int(tokens[2])
    except ValueError as exc:
        raise ParseError(str(exc), line=1) from exc
    data_lines = [
        (lineno, line.strip())
        for lineno, line in enumerate(raw[1:], start=2)
        if line.strip()
    ]
    if len(data_lines) != rows:
        raise ParseError(
            f"expected {rows} data rows, found {len(data_lines)}",
            line=data_lines[-1][0] if data_lines else 2,
        )
    mat = np.empty((rows, cols), dtype=np.complex128)
    for r, (lineno, line) in enumerate(data_lines):
        vals = _parse_floats(line.split(), 2 * cols, lineno)
        row = np.asarray(vals).reshape(cols, 2)
        mat[r] = row[:, 0] + 1j * row[:, 1]
    return mat


def write_vector(vec, path) -> None:
    """Write a vector as a dense n x 1 matrix."""
    vec = np.asarray(vec, dtype=np.complex128).ravel()
    write_matrix(vec.reshape(-1, 1), path, fmt="dense")


def read_vector(path) -> np.ndarray:
    """Read a vector stored as an n x 1 or 1 x n matrix."""
    mat = read_matrix(path)
    if 1 not in mat.shape:
        raise DimensionMismatch(f"expected a vector file, got shape {mat.shape}")
    return mat.ravel()


def write_spectrum(spectrum: Spectrum, path, fmt: str = "csv") -> None:
    """Write a sampled spectrum as delimited text."""
    if fmt == "csv":
        delim = ","
    elif fmt == "tsv":
        delim = "\t"
    else:
        raise ValueError(f"unknown spectrum format {fmt!r}")
    lines = []
    if spectrum.is_complex:
        lines.append(delim.join(("# omega", "re", "im")))
        for w, v in zip(spectrum.omegas, spectrum.values):
            lines.append(
                delim.join((_fmt(w, _SPEC), _fmt(v.real, _SPEC), _fmt(v.imag, _SPEC)))
            )
    else:
        lines.append(delim.join(("# omega", "epsilon")))
        for w, v in zip(spectrum.omegas, spectrum.values):
            lines.append(delim.join((_fmt(w, _SPEC), _fmt(v, _SPEC))))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_spectrum(path) -> tuple[np.ndarray, np.ndarray]:
    """Read back a spectrum file; returns (omegas, values)."""
    with open(path, "r", encoding="ascii") as fh:
        raw = fh.read().splitlines()
    if not raw or not raw[0].startswith("#"):
        raise ParseError("missing '# omega,...' header", line=1)
    delim = "\t" if "\t" in raw[0] else ","
    ncols = len(raw[0].split(delim))
    omegas, values = [], []
    for lineno, line in enumerate(raw[1:], start=2):
        if not line.strip():
            continue
        vals = _parse_floats(line.split(delim), ncols, lineno)
        omegas.append(vals[0])
        values.append(vals[1] + 1j * vals[2] if ncols == 3 else vals[1])
    return np.asarray(omegas), np.asarray(values)
