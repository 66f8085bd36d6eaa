"""Slack coefficients and slack matrices of regular n-gons.

The polygon is centred at the origin with its vertices on the unit circle.
Vertex ``j`` sits at angle ``2*pi*j/n`` and facet ``i`` is the edge joining
vertices ``i-1`` and ``i``, so that

    S[i, j] = c(j - i),   c(k) = cos(pi/n) - cos((2k + 1) pi/n).

All indices are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# entries below ZERO_SNAP * c(1) are analytically zero
ZERO_SNAP = 1e-12


def _check_n(n: int) -> None:
    if n < 3:
        raise ValueError(f"a polygon needs at least 3 vertices, got n={n}")


def slack_coefficient(n: int, k: int) -> float:
    """Slack between a facet and the vertex ``k`` steps away from it.

    Defined for every integer ``k``; it is ``n``-periodic and satisfies
    ``c(k) == c(n - 1 - k) == c(-k - 1)``.
    """
    _check_n(n)
    return math.cos(math.pi / n) - math.cos((2 * k + 1) * math.pi / n)


def slack_coefficients(n: int, ks) -> np.ndarray:
    """Vectorised :func:`slack_coefficient` over an integer array ``ks``.

    Indices are reduced mod ``n`` first, which keeps the cosine argument small
    and makes periodicity exact.
    """
    _check_n(n)
    ks = np.mod(np.asarray(ks, dtype=np.int64), n)
    return np.cos(np.pi / n) - np.cos((2 * ks + 1) * np.pi / n)


def coefficient_vector(n: int) -> np.ndarray:
    """``(c(0), ..., c(n-1))`` with the two analytic zeros snapped to 0."""
    c = slack_coefficients(n, np.arange(n))
    c[np.abs(c) < ZERO_SNAP * slack_coefficient(n, 1)] = 0.0
    return c


@dataclass(frozen=True)
class SlackMatrix:
    n: int
    entries: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def circulant_from_coefficients(c: np.ndarray, rows: int | None = None,
                                cols: int | None = None) -> np.ndarray:
    """Upper-left ``rows x cols`` block of the circulant ``M[i, j] = c[(j - i) % n]``.

    Returned as a read-only strided view into ``[c, c]``: row ``i`` starts at
    offset ``n - i``, so no ``n x n`` buffer is allocated.
    """
    n = len(c)
    rows = n if rows is None else rows
    cols = n if cols is None else cols
    if rows > n + 1 or cols > n:
        raise ValueError(f"block {rows}x{cols} exceeds the {n}x{n} circulant")
    cc = np.concatenate([c, c, c[:1]])
    step = cc.strides[0]
    return np.lib.stride_tricks.as_strided(
        cc[n:], shape=(rows, cols), strides=(-step, step), writeable=False)


def slack_matrix(n: int, normalized: bool = False) -> SlackMatrix:
    """Slack matrix of the regular ``n``-gon.

    With ``normalized=True`` every entry is divided by ``c(1)``; for ``n = 6``
    this gives the integer matrix with rows ``0 1 2 2 1 0`` (shifted).
    """
    _check_n(n)
    c = coefficient_vector(n)
    scale = 1.0 / c[1] if normalized else 1.0
    if normalized:
        c = c * scale
    return SlackMatrix(n, circulant_from_coefficients(c), scale)


def facet_normals(n: int, scale: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Facet description ``A x <= b`` whose slacks reproduce :func:`slack_matrix`."""
    _check_n(n)
    angles = (2 * np.arange(n) - 1) * np.pi / n
    A = scale * np.column_stack([np.cos(angles), np.sin(angles)])
    b = np.full(n, scale * math.cos(math.pi / n))
    return A, b


def vertices(n: int) -> np.ndarray:
    """Vertices of the regular n-gon as rows of an ``n x 2`` array."""
    _check_n(n)
    t = 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(t), np.sin(t)])
