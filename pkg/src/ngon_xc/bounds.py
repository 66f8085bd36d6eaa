"""Lower bounds on the nonnegative rank of ``S_n`` and the upper bound they
are compared against.

Everything is exact integer or rational arithmetic; binomials exceed the
double range long before the interesting values of ``r`` run out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .factorize import upper_bound_size


def binomial(a: int, b: int) -> int:
    """``C(a, b)``, zero outside ``0 <= b <= a``."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def _central(r: int) -> int:
    return math.comb(r, r // 2)


def sperner_bound(p: int) -> int:
    """Smallest ``r >= 1`` with ``C(r, floor(r/2)) >= p``.

    A matrix with ``p`` rows whose supports form an antichain has rectangle
    covering number at least this value.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    r = 1
    while _central(r) < p:
        r += 1
    return r


def improved_boolean_bound(n: int) -> int:
    """Smallest ``r >= 2`` with ``n (r - 1) <= (r - floor(r/2)) C(r, floor(r/2))``.

    Lower-bounds the rectangle covering number of every matrix with the zero
    pattern of ``S_n`` (zeros exactly on the diagonal and the subdiagonal,
    cyclically).
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    r = 2
    while n * (r - 1) > (r - r // 2) * _central(r):
        r += 1
    return r


def faces(v: int, d: int, k: int) -> int:
    """Maximum number of ``k``-faces of a ``d``-polytope with ``v`` vertices.

    Attained by the cyclic polytope ``C(v, d)`` (upper bound theorem).  The
    last summand is halved when ``d`` is even.
    """
    if not (v >= d + 1 >= 1 and 0 <= k <= d - 1):
        raise ValueError(f"faces({v}, {d}, {k}) is undefined")
    kf = k + 1
    total = Fraction(0)
    for i in range(d // 2 + 1):
        term = (binomial(d - i, kf - i) + binomial(i, kf - d + i)) \
            * binomial(v - d - 1 + i, i)
        if 2 * i == d:
            term = Fraction(term, 2)
        total += term
    if total.denominator != 1:
        raise ArithmeticError(f"faces({v}, {d}, {k}) = {total} is not an integer")
    return int(total)


def _geometric_capacity(r: int) -> int:
    return max(min(faces(r, d - 1, d - 3), faces(r, d - 1, d - 2))
               for d in range(3, r))


def geometric_lower_bound(n: int) -> int:
    """Smallest ``r >= 4`` for which a polytope with ``r`` vertices in
    dimension ``d - 1`` can have ``n`` faces of both dimension ``d - 3`` and
    ``d - 2`` for some ``3 <= d <= r - 1``.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if n == 3:
        # the scan starts at r = 4; a triangle is its own extension
        return 3
    cap = 2 * (n - 1).bit_length() + 4
    for r in range(4, cap + 1):
        if n <= _geometric_capacity(r):
            return r
    raise ArithmeticError(f"geometric bound for n={n} exceeds search cap {cap}")


def trivial_log_bound(n: int) -> int:
    """``ceil(log2(2n + 2))``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return (2 * n + 1).bit_length()


def fkz(r: int, k: int, z: int) -> int:
    """``k!(r-k)! + (k+z)!(r-k-z)! - 2 k! z! (r-k-z)!``."""
    f = math.factorial
    return f(k) * f(r - k) + f(k + z) * f(r - k - z) - 2 * f(k) * f(z) * f(r - k - z)


@dataclass(frozen=True)
class MinFkzResult:
    r: int
    k_star: int
    z_star: int
    min_value: Fraction
    all_minimizers: list[tuple[int, int]]

    @property
    def min_f(self) -> int:
        return int(self.min_value * math.factorial(self.r))


def minimize_fkz(r: int) -> MinFkzResult:
    """Brute-force minimum of :func:`fkz` over ``k, z >= 1``, ``k + z <= r``.

    ``min_value`` is the minimum divided by ``r!``.  The reported
    ``(k_star, z_star)`` is the lexicographically largest minimizer.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    values = {(k, z): fkz(r, k, z)
              for k in range(1, r) for z in range(1, r - k + 1)}
    best = min(values.values())
    argmins = sorted(kz for kz, val in values.items() if val == best)
    k_star, z_star = argmins[-1]
    return MinFkzResult(r, k_star, z_star, Fraction(best, math.factorial(r)), argmins)


@dataclass(frozen=True)
class BoundsRow:
    n: int
    lb_log: int
    lb_sperner: int
    lb_improved: int
    lb_geometric: int
    lb_best: int
    ub: int
    gap: int
    rcb: int | None = None
    rcb_optimal: bool = False
    rcb_lower: int | None = None
    notes: list[str] = field(default_factory=list)


def bounds_row(n: int, include_rcb: bool = False,
               node_budget: int = 10**8) -> BoundsRow:
    """All bounds for ``S_n``.

    ``lb_best`` takes the maximum over the rank bounds and the rectangle
    covering bounds alike: the rectangle covering number is itself a lower
    bound on the nonnegative rank.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    lb_log = trivial_log_bound(n)
    lb_sperner = sperner_bound(n)
    lb_improved = improved_boolean_bound(n)
    lb_geometric = geometric_lower_bound(n)
    candidates = [lb_log, lb_sperner, lb_improved, lb_geometric]
    rcb = rcb_lower = None
    rcb_optimal = False
    if include_rcb:
        from .rectcover import slack_rectangle_cover

        res = slack_rectangle_cover(n, node_budget)
        rcb_optimal = res.optimal
        rcb_lower = res.lower_bound
        rcb = res.value if res.optimal else None
        candidates.append(res.lower_bound)
    lb_best = max(candidates)
    ub = upper_bound_size(n)
    return BoundsRow(n, lb_log, lb_sperner, lb_improved, lb_geometric,
                     lb_best, ub, ub - lb_best, rcb, rcb_optimal, rcb_lower)
