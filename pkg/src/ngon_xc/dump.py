"""Plain-text matrix and factorization dumps.

Matrix:         ``n rows cols`` then one line per row.
Factorization:  ``n r`` then the ``n`` rows of U, a blank line, the ``r`` rows of V.

Values are written with 17 significant digits so that a round trip through
the text file is exact.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .factorize import Factorization


class DumpFormatError(ValueError):
    pass


def _fmt_rows(M: np.ndarray) -> str:
    return "".join(" ".join(f"{x:.17g}" for x in row) + "\n" for row in M)


def format_matrix(n: int, M: np.ndarray) -> str:
    return f"{n} {M.shape[0]} {M.shape[1]}\n" + _fmt_rows(M)


def format_factorization(F: Factorization) -> str:
    return f"{F.n} {F.r}\n" + _fmt_rows(F.U) + "\n" + _fmt_rows(F.V)


def write_matrix(path, n: int, M: np.ndarray) -> None:
    Path(path).write_text(format_matrix(n, M))


def write_factorization(path, F: Factorization) -> None:
    Path(path).write_text(format_factorization(F))


def _parse_rows(lines: list[str], count: int, width: int, what: str) -> np.ndarray:
    if len(lines) != count:
        raise DumpFormatError(f"{what}: expected {count} rows, found {len(lines)}")
    try:
        M = np.loadtxt(io.StringIO("\n".join(lines)), ndmin=2)
    except ValueError as exc:
        raise DumpFormatError(f"{what}: {exc}") from exc
    if M.shape != (count, width):
        raise DumpFormatError(f"{what}: expected shape {(count, width)}, got {M.shape}")
    return M


def _header(line: str, size: int, what: str) -> list[int]:
    try:
        fields = [int(x) for x in line.split()]
    except ValueError as exc:
        raise DumpFormatError(f"{what}: bad header {line!r}") from exc
    if len(fields) != size:
        raise DumpFormatError(f"{what}: header needs {size} integers, got {line!r}")
    return fields


def parse_matrix(text: str) -> tuple[int, np.ndarray]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DumpFormatError("matrix: empty file")
    n, rows, cols = _header(lines[0], 3, "matrix")
    return n, _parse_rows(lines[1:], rows, cols, "matrix")


def parse_factorization(text: str) -> Factorization:
    head, _, body = text.partition("\n")
    n, r = _header(head, 2, "factorization")
    blocks = body.strip("\n").split("\n\n")
    if len(blocks) != 2:
        raise DumpFormatError("factorization: expected U and V separated by one blank line")
    u_lines = [ln for ln in blocks[0].splitlines() if ln.strip()]
    v_lines = [ln for ln in blocks[1].splitlines() if ln.strip()]
    U = _parse_rows(u_lines, n, r, "factorization U")
    V = _parse_rows(v_lines, r, n, "factorization V")
    return Factorization(n, U, V)


def read_matrix(path) -> tuple[int, np.ndarray]:
    return parse_matrix(Path(path).read_text())


def read_factorization(path) -> Factorization:
    return parse_factorization(Path(path).read_text())
