"""Text formats for arrays and erasure masks.

An array file starts with the header ``m n b modulus_hex`` followed by m
rows of n lowercase hexadecimal symbols separated by single spaces. A mask
file is an m x n grid of 0/1 separated by single spaces. Blank lines and
lines starting with ``#`` are ignored when reading.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .gf import GF, FieldError, field


class FormatError(ValueError):
    """Malformed array or mask file."""


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def format_array(array, gf: GF) -> str:
    A = np.asarray(array, dtype=np.int64)
    if A.ndim != 2:
        raise FormatError("arrays must be two-dimensional")
    m, n = A.shape
    out = [f"{m} {n} {gf.b} {gf.modulus:x}"]
    out += [" ".join(f"{int(x):x}" for x in row) for row in A]
    return "\n".join(out) + "\n"


def parse_array(text: str) -> tuple[np.ndarray, GF]:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty array file")
    head = lines[0].split()
    if len(head) != 4:
        raise FormatError("header must be 'm n b modulus_hex'")
    try:
        m, n, b = int(head[0]), int(head[1]), int(head[2])
        gf = field(b, int(head[3], 16))
    except (ValueError, FieldError) as exc:
        raise FormatError(f"bad header: {exc}") from None
    rows = lines[1:]
    if len(rows) != m:
        raise FormatError(f"expected {m} rows, found {len(rows)}")
    A = np.zeros((m, n), dtype=np.int64)
    for i, ln in enumerate(rows):
        toks = ln.split()
        if len(toks) != n:
            raise FormatError(f"row {i} has {len(toks)} symbols, expected {n}")
        try:
            A[i] = [int(x, 16) for x in toks]
        except ValueError:
            raise FormatError(f"row {i} holds a non-hex symbol") from None
    if (A >= gf.q).any():
        raise FormatError(f"symbol outside GF(2^{b})")
    return A, gf


def format_mask(mask) -> str:
    M = np.asarray(mask, dtype=bool)
    return "\n".join(" ".join("1" if x else "0" for x in row) for row in M) + "\n"


def parse_mask(text: str, shape=None) -> np.ndarray:
    lines = _lines(text)
    rows = []
    for i, ln in enumerate(lines):
        toks = ln.split()
        if any(t not in ("0", "1") for t in toks):
            raise FormatError(f"mask row {i} must hold only 0 and 1")
        rows.append([t == "1" for t in toks])
    if not rows or len({len(r) for r in rows}) != 1:
        raise FormatError("mask rows must be non-empty and equally long")
    M = np.array(rows, dtype=bool)
    if shape is not None and M.shape != tuple(shape):
        raise FormatError(f"mask shape {M.shape} differs from array shape {tuple(shape)}")
    return M


def read_array(path) -> tuple[np.ndarray, GF]:
    return parse_array(_read_text(path))


def write_array(path, array, gf: GF):
    Path(path).write_text(format_array(array, gf))


def read_mask(path, shape=None) -> np.ndarray:
    return parse_mask(_read_text(path), shape)


def write_mask(path, mask):
    Path(path).write_text(format_mask(mask))
