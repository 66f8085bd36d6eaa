"""Exact rectangle covering number (boolean rank) of small 0/1 patterns.

Rows and column sets are stored as integer bitmasks throughout.  A cover is
searched for among maximal rectangles only, which loses nothing: any cover
can be enlarged rectangle by rectangle to a cover by maximal ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class SupportPattern:
    rows: int
    cols: int
    bits: np.ndarray

    @classmethod
    def from_matrix(cls, M, tol: float = 0.0) -> "SupportPattern":
        return support_pattern(M, tol)

    def row_masks(self) -> list[int]:
        return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in self.bits]

    def col_masks(self) -> list[int]:
        return [sum(1 << int(i) for i in np.flatnonzero(col)) for col in self.bits.T]

    def count(self) -> int:
        return int(self.bits.sum())


@dataclass(frozen=True, order=True)
class Rectangle:
    row_set: tuple[int, ...]
    col_set: tuple[int, ...]

    def cells(self):
        return ((i, j) for i in self.row_set for j in self.col_set)

    def as_matrix(self, rows: int, cols: int) -> np.ndarray:
        out = np.zeros((rows, cols), dtype=int)
        out[np.ix_(self.row_set, self.col_set)] = 1
        return out


@dataclass(frozen=True)
class RcResult:
    """Outcome of the cover search.

    ``value`` is the size of the best cover found; when ``optimal`` is false
    only ``lower_bound <= rc <= value`` is known.
    """

    value: int
    cover: list[Rectangle]
    optimal: bool
    nodes_explored: int
    lower_bound: int


def support_pattern(M, tol: float = 0.0) -> SupportPattern:
    """Boolean pattern of the entries of ``M`` strictly above ``tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    M = np.asarray(M, dtype=float)
    bits = M > tol
    return SupportPattern(M.shape[0], M.shape[1], bits)


def slack_support(n: int) -> SupportPattern:
    """Zero pattern of ``S_n``: zeros exactly where ``i == j`` or ``i == j + 1 (mod n)``."""
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    bits = (i != j) & (i != (j + 1) % n)
    return SupportPattern(n, n, bits)


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class _Closure:
    """Galois connection between row sets and column sets of a pattern."""

    def __init__(self, P: SupportPattern):
        self.m, self.n = P.rows, P.cols
        self.row_masks = P.row_masks()
        self.col_masks = P.col_masks()
        self.all_rows = (1 << self.m) - 1
        self.all_cols = (1 << self.n) - 1

    def cols_of(self, rows: int) -> int:
        c = self.all_cols
        for i in _bits(rows):
            c &= self.row_masks[i]
        return c

    def rows_of(self, cols: int) -> int:
        r = self.all_rows
        for j in _bits(cols):
            r &= self.col_masks[j]
        return r

    def close(self, rows: int) -> int:
        return self.rows_of(self.cols_of(rows))


def maximal_rectangles(P: SupportPattern) -> list[Rectangle]:
    """All maximal all-true rectangles (maximal bicliques of the support graph).

    Closed row sets are visited in lectic order with Ganter's next-closure
    step, so each maximal rectangle is produced exactly once.
    """
    if not P.bits.any():
        return []
    g = _Closure(P)
    m = g.m
    out = []

    def emit(rows: int) -> None:
        cols = g.cols_of(rows)
        if rows and cols:
            out.append(Rectangle(_bits(rows), _bits(cols)))

    # next closure: bit m-1-i plays the role of the i-th element in lectic order
    current = g.close(0)
    emit(current)
    while current != g.all_rows:
        for i in range(m - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                current &= ~bit
                continue
            candidate = g.close(current | bit)
            # canonical iff no new element below position i appears
            if (candidate & ~current) & (bit - 1) == 0:
                current = candidate
                break
        else:  # pragma: no cover - the loop always finds a successor
            break
        emit(current)
    return sorted(out)


def is_cover(P: SupportPattern, cover: list[Rectangle]) -> bool:
    covered = np.zeros_like(P.bits, dtype=bool)
    for rect in cover:
        block = P.bits[np.ix_(rect.row_set, rect.col_set)]
        if not block.all():
            return False
        covered[np.ix_(rect.row_set, rect.col_set)] = True
    return bool((covered == P.bits).all())


class _BudgetExhausted(Exception):
    pass


class _CoverSearch:
    def __init__(self, P: SupportPattern, rects: list[Rectangle], budget: int):
        self.cells = [(int(i), int(j)) for i, j in zip(*np.nonzero(P.bits))]
        index = {cell: t for t, cell in enumerate(self.cells)}
        self.rect_cells = []
        for rect in rects:
            mask = 0
            for cell in rect.cells():
                mask |= 1 << index[cell]
            self.rect_cells.append(mask)
        # which rectangles contain each cell
        self.cell_rects = [0] * len(self.cells)
        for t, mask in enumerate(self.rect_cells):
            for c in _bits(mask):
                self.cell_rects[c] |= 1 << t
        self.degree = [bin(x).count("1") for x in self.cell_rects]
        # cells ordered by (number of containing rectangles, row, col)
        self.order = sorted(range(len(self.cells)),
                            key=lambda c: (self.degree[c], self.cells[c]))
        self.full = (1 << len(self.cells)) - 1
        self.budget = budget
        self.nodes = 0

    def fooling_bound(self, uncovered: int) -> int:
        """Size of a greedy set of uncovered cells no rectangle joins pairwise."""
        chosen_rects = 0
        count = 0
        for c in self.order:
            if uncovered >> c & 1 and not (self.cell_rects[c] & chosen_rects):
                chosen_rects |= self.cell_rects[c]
                count += 1
        return count

    def branch_cell(self, uncovered: int) -> int:
        for c in self.order:
            if uncovered >> c & 1:
                return c
        raise AssertionError("no uncovered cell")

    def greedy(self) -> list[int]:
        uncovered = self.full
        picked = []
        while uncovered:
            t = max(range(len(self.rect_cells)),
                    key=lambda t: (bin(self.rect_cells[t] & uncovered).count("1"), -t))
            picked.append(t)
            uncovered &= ~self.rect_cells[t]
        return picked

    def feasible(self, uncovered: int, depth_left: int, path: list[int]) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        if not uncovered:
            return list(path)
        if depth_left == 0 or self.fooling_bound(uncovered) > depth_left:
            return None
        c = self.branch_cell(uncovered)
        # rectangles covering more uncovered cells first
        options = sorted(_bits(self.cell_rects[c]),
                         key=lambda t: -bin(self.rect_cells[t] & uncovered).count("1"))
        seen: list[int] = []
        for t in options:
            gain = self.rect_cells[t] & uncovered
            # skip a rectangle whose uncovered part is inside an earlier option's
            if any(gain & ~s == 0 for s in seen):
                continue
            seen.append(gain)
            path.append(t)
            found = self.feasible(uncovered & ~self.rect_cells[t], depth_left - 1, path)
            path.pop()
            if found is not None:
                return found
        return None


def rectangle_cover_number(P: SupportPattern, node_budget: int = DEFAULT_BUDGET,
                           rects: list[Rectangle] | None = None) -> RcResult:
    """Minimum number of all-true rectangles covering every true bit of ``P``.

    Iterative deepening on the cover size, starting from a greedy fooling-set
    bound.  Each depth is an exhaustive branch and bound that branches on the
    uncovered cell lying in the fewest maximal rectangles (ties broken by
    lowest ``(row, col)``).  If the node budget runs out the greedy cover is
    returned with ``optimal=False`` and the last depth proven infeasible
    gives ``lower_bound``.
    """
    if node_budget < 1:
        raise ValueError("node_budget must be >= 1")
    if not P.bits.any():
        return RcResult(0, [], True, 0, 0)
    if rects is None:
        rects = maximal_rectangles(P)
    search = _CoverSearch(P, rects, node_budget)
    best = search.greedy()
    lower = search.fooling_bound(search.full)
    try:
        while lower < len(best):
            found = search.feasible(search.full, lower, [])
            if found is not None:
                best = found
                break
            lower += 1
    except _BudgetExhausted:
        cover = [rects[t] for t in best]
        return RcResult(len(best), cover, False, search.nodes, lower)
    cover = sorted(rects[t] for t in best)
    return RcResult(len(cover), cover, True, search.nodes, len(cover))


def slack_rectangle_cover(n: int, node_budget: int = DEFAULT_BUDGET) -> RcResult:
    """:func:`rectangle_cover_number` of the support of ``S_n``."""
    return rectangle_cover_number(slack_support(n), node_budget)
