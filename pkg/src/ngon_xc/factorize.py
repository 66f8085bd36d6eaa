"""Explicit nonnegative factorization of the slack matrix of the regular n-gon.

The current block ``B`` is always the ``k x l`` upper-left block of ``S_n``
(``k in {l, l+1}``).  While ``l >= 5`` two nonnegative rank-one matrices are
subtracted, one from the lower-left and one from the upper-right quadrant,
so that every entry with ``i + j in {l+1, l+2}`` (1-based) becomes zero.  The
residual then has mirrored rows and columns and is an expansion of its own
upper-left ``k' x ceil(l/2)`` block, which is again a block of ``S_n``.  Each
level adds two to the inner dimension; blocks with ``l <= 4`` are factored
as ``B = B I``.

Columns of ``U`` are appended in discovery order: lower-left factor,
upper-right factor, then the columns produced by the recursion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .ngon import (
    SlackMatrix,
    _check_n,
    circulant_from_coefficients,
    facet_normals,
    vertices,
)

CLAMP_TOL = 1e-10
RANK_ONE_TOL = 1e-8
BASE_MAX_COLS = 4


class ConstructionError(RuntimeError):
    """The recursive construction produced something inconsistent."""


class NonnegativityError(ConstructionError):
    pass


class SlackIdentityError(ValueError):
    pass


class Kind(str, enum.Enum):
    UPPER_RIGHT = "upper_right"
    LOWER_LEFT = "lower_left"


@dataclass(frozen=True)
class BlockSpec:
    """The ``k x l`` upper-left block of ``S_n``."""

    n: int
    k: int
    l: int

    def __post_init__(self):
        if not (1 <= self.l <= self.k <= self.l + 1 <= self.n + 1):
            raise ValueError(f"invalid block {self.k}x{self.l} for n={self.n}")

    def child(self) -> "BlockSpec":
        k, l = self.k, self.l
        l2 = -(-l // 2)
        k2 = l // 2 + 1 if (k == l and l % 2 == 0) else -(-k // 2)
        return BlockSpec(self.n, k2, l2)


@dataclass(frozen=True)
class RankOneFactor:
    """Nonnegative outer product ``u v`` padded to the size of its block."""

    u: np.ndarray
    v: np.ndarray
    kind: Kind
    min_raw: float = 0.0

    def outer(self) -> np.ndarray:
        return np.outer(self.u, self.v)


@dataclass(frozen=True)
class Factorization:
    n: int
    U: np.ndarray
    V: np.ndarray
    min_raw: float = 0.0

    @property
    def r(self) -> int:
        return self.U.shape[1]

    def product(self) -> np.ndarray:
        return self.U @ self.V


@dataclass(frozen=True)
class VerificationReport:
    max_abs_residual: float
    max_rel_residual: float
    residual_location: tuple[int, int]
    min_entry: float
    tol: float
    passed: bool

    def summary(self) -> str:
        i, j = self.residual_location
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} max_abs={self.max_abs_residual:.3e} "
                f"max_rel={self.max_rel_residual:.3e} at ({i},{j}) "
                f"min_entry={self.min_entry:.3e} tol={self.tol:g}")


@dataclass(frozen=True)
class ExtendedFormulation:
    """Lifted description ``{x : A x + U y = b, y >= 0}`` of the polygon."""

    A: np.ndarray
    b: np.ndarray
    U: np.ndarray
    V: np.ndarray

    @property
    def num_lifted_variables(self) -> int:
        return self.U.shape[1]

    def lift(self, j: int) -> np.ndarray:
        """A feasible ``y`` for vertex ``j``."""
        return self.V[:, j]

    def describe(self) -> str:
        f, r = self.U.shape
        return (f"{{x in R^2 : A x + U y = b, y >= 0}} with {f} equalities "
                f"and {r} nonnegative variables")


def _sinpi(m, n: int) -> np.ndarray:
    """``sin(pi m / n)`` with exact zeros at multiples of ``n``."""
    m = np.mod(np.asarray(m, dtype=np.int64), 2 * n)
    out = np.sin(np.pi * m / n)
    out[m % n == 0] = 0.0
    return out


def _coeff_diff(n: int, a, b) -> np.ndarray:
    """``c(a) - c(b)`` evaluated as a product of sines.

    ``cos x - cos y = 2 sin((x+y)/2) sin((y-x)/2)`` turns the difference of
    two slack coefficients into ``2 sin((a+b+1) pi/n) sin((a-b) pi/n)``,
    which is exactly zero whenever the difference vanishes analytically.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return 2.0 * _sinpi(a + b + 1, n) * _sinpi(a - b, n)


def block_coefficients(n: int) -> np.ndarray:
    """``c(0..n-1)`` in the product form ``2 sin(k pi/n) sin((k+1) pi/n)``."""
    k = np.arange(n)
    return 2.0 * _sinpi(k, n) * _sinpi(k + 1, n)


def correction_matrix(n: int, alpha: int, beta: int, rows: int, cols: int) -> np.ndarray:
    """``[c(alpha - i + j) - c(beta - i - j)]`` for 1-based ``i <= rows``, ``j <= cols``.

    Has rank at most one for every ``n``, ``alpha`` and ``beta``.
    """
    _check_n(n)
    i = np.arange(1, rows + 1)[:, None]
    j = np.arange(1, cols + 1)[None, :]
    return _coeff_diff(n, alpha - i + j, beta - i - j)


def _entries(n: int, alpha: int, beta: int, i, j) -> np.ndarray:
    """Entries of :func:`correction_matrix` at 0-based positions ``(i, j)``."""
    i = np.asarray(i) + 1
    j = np.asarray(j) + 1
    return _coeff_diff(n, alpha - i + j, beta - i - j)


def _split_rank_one(n: int, alpha: int, beta: int, rows: int, cols: int,
                    full_check: bool) -> tuple[np.ndarray, np.ndarray]:
    """``u, v`` with ``u v = correction_matrix(...)`` using O(rows + cols) entries.

    For a nonnegative rank-one matrix every row is a multiple of the same
    vector, so the row of largest maximum is the one at the argmax of the
    pivot column.  ``v`` is that row scaled to maximum one.
    """
    jj = np.arange(cols)
    ii = np.arange(rows)
    probe = max((_entries(n, alpha, beta, i, jj) for i in {0, rows - 1}),
                key=lambda row: np.abs(row).max())
    if not probe.any():
        M = correction_matrix(n, alpha, beta, rows, cols)
        if not M.any():
            return np.zeros(rows), np.zeros(cols)
        probe = M[int(np.argmax(np.abs(M).max(axis=1)))]
    jpiv = int(np.argmax(np.abs(probe)))
    u = _entries(n, alpha, beta, ii, jpiv)
    ipiv = int(np.argmax(np.abs(u)))
    v = _entries(n, alpha, beta, ipiv, jj) / u[ipiv]
    if full_check:
        sample = ii
    else:
        sample = np.unique(np.linspace(0, rows - 1, min(rows, 16)).astype(int))
    M = _entries(n, alpha, beta, sample[:, None], jj[None, :])
    scale = np.abs(u[ipiv]) * np.abs(v).max()
    err = np.abs(M - np.outer(u[sample], v)).max()
    if err > RANK_ONE_TOL * scale:
        raise ConstructionError(
            f"correction matrix is not rank one (residual {err:.3e})")
    return u, v


def _clamp(x: np.ndarray, what: str) -> tuple[np.ndarray, float]:
    lo = float(x.min()) if x.size else 0.0
    if lo < -CLAMP_TOL:
        raise NonnegativityError(f"{what} has entry {lo:.3e} < -{CLAMP_TOL:g}")
    if lo < 0.0:
        x = np.where(x < 0.0, 0.0, x)
    return x, lo


def _correction_geometry(block: BlockSpec, kind: Kind):
    k, l = block.k, block.l
    half_up, half_down = -(-l // 2), l // 2
    if kind is Kind.UPPER_RIGHT:
        p = half_up
        return dict(alpha=l - p, beta=1 + p, rows=p, cols=p,
                    row0=0, col0=l - p)
    p = half_down
    q = k - half_up
    return dict(alpha=q - k, beta=1 + p, rows=q, cols=p, row0=k - q, col0=0)


def rank_one_correction(block: BlockSpec, kind: Kind | str,
                        check: bool = True) -> RankOneFactor:
    """Nonnegative rank-one matrix removed from one quadrant of ``block``.

    The returned ``u`` has length ``block.k`` and ``v`` length ``block.l``;
    both are zero outside the quadrant.  ``v`` is the largest row of the
    correction scaled to have maximum entry one.  With ``check`` the
    rank-one property is confirmed on every row, otherwise on a sample of rows.
    """
    kind = Kind(kind)
    if block.l <= BASE_MAX_COLS:
        raise ValueError(f"no correction step for l={block.l} <= {BASE_MAX_COLS}")
    g = _correction_geometry(block, kind)
    u_sub, v_sub = _split_rank_one(block.n, g["alpha"], g["beta"],
                                   g["rows"], g["cols"], check)
    u = np.zeros(block.k)
    v = np.zeros(block.l)
    u[g["row0"]:g["row0"] + g["rows"]] = u_sub
    v[g["col0"]:g["col0"] + g["cols"]] = v_sub
    u, lo_u = _clamp(u, f"{kind.value} u (n={block.n}, block {block.k}x{block.l})")
    v, lo_v = _clamp(v, f"{kind.value} v (n={block.n}, block {block.k}x{block.l})")
    return RankOneFactor(u, v, kind, min(lo_u, lo_v))


def trivial_base_factorize(B: np.ndarray, k: int, l: int) -> tuple[np.ndarray, np.ndarray]:
    """``B = B I_l`` for the small blocks that end the recursion."""
    if l > BASE_MAX_COLS:
        raise ValueError(f"trivial factorization is only used for l <= {BASE_MAX_COLS}, got {l}")
    if B.shape != (k, l):
        raise ValueError(f"block has shape {B.shape}, expected {(k, l)}")
    return B.copy(), np.eye(l)


def residual_maps(block: BlockSpec) -> tuple[np.ndarray, np.ndarray]:
    """Row and column index maps from the corrected block to its child.

    Column ``j`` and ``l-1-j`` of the residual coincide; rows ``k-1-i`` and
    ``i`` coincide when ``k = l + 1``, rows ``k-i`` and ``i`` when ``k = l``.
    """
    k, l = block.k, block.l
    child = block.child()
    cols = np.arange(l)
    cols = np.where(cols < child.l, cols, l - 1 - cols)
    rows = np.arange(k)
    mirror = k - 1 - rows if k == l + 1 else k - rows
    rows = np.where(rows < child.k, rows, mirror)
    return rows, cols


def recursion_schedule(n: int) -> list[BlockSpec]:
    """Blocks visited by :func:`recursive_factorize`, ending with the base block."""
    _check_n(n)
    blocks = [BlockSpec(n, n, n)]
    while blocks[-1].l > BASE_MAX_COLS:
        blocks.append(blocks[-1].child())
    return blocks


def corrected_block(block: BlockSpec, c: np.ndarray | None = None) -> np.ndarray:
    """The block after both rank-one corrections have been subtracted."""
    if c is None:
        c = block_coefficients(block.n)
    B = circulant_from_coefficients(c, block.k, block.l)
    for kind in Kind:
        B = B - rank_one_correction(block, kind).outer()
    return B


def _factor_block(block: BlockSpec, c: np.ndarray, check: bool,
                  mins: list[float]) -> tuple[np.ndarray, np.ndarray]:
    if block.l <= BASE_MAX_COLS:
        B = circulant_from_coefficients(c, block.k, block.l)
        return trivial_base_factorize(B, block.k, block.l)
    lower = rank_one_correction(block, Kind.LOWER_LEFT, check)
    upper = rank_one_correction(block, Kind.UPPER_RIGHT, check)
    mins.extend([lower.min_raw, upper.min_raw])
    child = block.child()
    rows, cols = residual_maps(block)
    if check:
        R = (circulant_from_coefficients(c, block.k, block.l)
             - lower.outer() - upper.outer())
        top = circulant_from_coefficients(c, child.k, child.l)
        if np.abs(R[:child.k, :child.l] - top).max() > CLAMP_TOL:
            raise ConstructionError(
                f"n={block.n}: residual of {block.k}x{block.l} block does not "
                f"start with the {child.k}x{child.l} slack block")
        if np.abs(R - R[rows][:, cols]).max() > CLAMP_TOL:
            raise ConstructionError(
                f"n={block.n}: residual of {block.k}x{block.l} block is not "
                "mirror symmetric")
    U2, V2 = _factor_block(child, c, check, mins)
    U = np.column_stack([lower.u, upper.u, U2[rows]])
    V = np.vstack([lower.v, upper.v, V2[:, cols]])
    return U, V


def recursive_factorize(n: int, normalized: bool = False,
                        check: bool = False) -> Factorization:
    """Nonnegative factorization of ``S_n`` with inner dimension
    :func:`upper_bound_size` ``(n)``.

    ``check`` additionally confirms at every level, in O(n^2) work, that both
    corrections are exactly rank one and that the residual is the mirrored
    expansion of its upper-left block.
    """
    _check_n(n)
    c = block_coefficients(n)
    mins: list[float] = []
    U, V = _factor_block(BlockSpec(n, n, n), c, check, mins)
    if normalized:
        U = U / c[1]
    return Factorization(n, U, V, min(mins, default=0.0))


def _max_residual(M: np.ndarray, U: np.ndarray, V: np.ndarray,
                  chunk: int = 64) -> tuple[float, tuple[int, int]]:
    """Largest ``|M - U V|`` and its position, one row band at a time."""
    best, best_start = -1.0, 0
    for start in range(0, M.shape[0], chunk):
        R = U[start:start + chunk] @ V
        R -= M[start:start + chunk]
        worst = max(R.max(), -R.min())
        if worst > best:
            best, best_start = float(worst), start
    R = np.abs(U[best_start:best_start + chunk] @ V - M[best_start:best_start + chunk])
    flat = int(np.argmax(R))
    return best, (best_start + flat // M.shape[1], flat % M.shape[1])


def verify_factorization(S: SlackMatrix | np.ndarray, F: Factorization,
                         tol: float = 1e-8) -> VerificationReport:
    """Compare ``U V`` with ``S``.

    Passes iff the largest residual relative to ``max|S|`` is at most ``tol``
    and no entry of ``U`` or ``V`` is below ``-tol``.
    """
    M = S.entries if isinstance(S, SlackMatrix) else np.asarray(S)
    if F.U.shape[0] != M.shape[0] or F.V.shape[1] != M.shape[1] \
            or F.U.shape[1] != F.V.shape[0]:
        raise ValueError(
            f"dimension mismatch: S is {M.shape}, U is {F.U.shape}, V is {F.V.shape}")
    max_abs, loc = _max_residual(M, F.U, F.V)
    denom = float(np.abs(M).max()) or 1.0
    max_rel = max_abs / denom
    min_entry = float(min(F.U.min(initial=0.0), F.V.min(initial=0.0)))
    passed = max_rel <= tol and min_entry >= -tol
    return VerificationReport(max_abs, max_rel, loc, min_entry, tol, passed)


def extension_from_factorization(n: int, F: Factorization, scale: float = 1.0,
                                 tol: float = 1e-8) -> ExtendedFormulation:
    """Extended formulation induced by ``S = U V``.

    ``scale`` is the factor the slack matrix was multiplied by (``1/c(1)`` for
    the normalized matrix).  Raises :class:`SlackIdentityError` naming the
    first vertex whose slack vector differs from ``U V[:, j]``.
    """
    _check_n(n)
    if F.U.shape[0] != n or F.V.shape[1] != n:
        raise ValueError(f"factorization is for {F.U.shape[0]}x{F.V.shape[1]}, not n={n}")
    A, b = facet_normals(n, scale)
    X = vertices(n)
    slacks = b[:, None] - A @ X.T
    lifted = F.U @ F.V
    err = np.abs(slacks - lifted).max(axis=0)
    bad = np.flatnonzero(err > tol)
    if bad.size:
        j = int(bad[0])
        raise SlackIdentityError(
            f"vertex {j}: slack vector differs from U V[:, {j}] by {err[j]:.3e}")
    return ExtendedFormulation(A, b, F.U, F.V)


def upper_bound_size(n: int) -> int:
    """Inner dimension reached by the construction:
    ``2k - 1`` if ``2^(k-1) < n <= 2^(k-1) + 2^(k-2)`` and ``2k`` otherwise,
    where ``k = ceil(log2 n)``.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    k = (n - 1).bit_length()
    # n <= 2^(k-1) + 2^(k-2)  <=>  4n <= 3 * 2^k
    return 2 * k - 1 if 4 * n <= 3 * (1 << k) else 2 * k
