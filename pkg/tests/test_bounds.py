import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ngon_xc.bounds import (
    binomial,
    bounds_row,
    faces,
    fkz,
    geometric_lower_bound,
    improved_boolean_bound,
    minimize_fkz,
    sperner_bound,
    trivial_log_bound,
)
from ngon_xc.factorize import upper_bound_size

from oracles import central_scan, gale_face_count


@pytest.mark.parametrize("a,b,expected", [
    (5, 2, 10), (4, -1, 0), (3, 5, 0), (-2, 1, 0), (0, 0, 1),
    (70, 35, 112186277816662845432),
])
def test_binomial(a, b, expected):
    assert binomial(a, b) == expected


def test_binomial_70_35_by_product():
    num = 1
    for t in range(36, 71):
        num *= t
    assert binomial(70, 35) == num // math.factorial(35)


@pytest.mark.parametrize("p,r", [(1, 1), (2, 2), (3, 3), (6, 4), (7, 5), (10, 5), (11, 6)])
def test_sperner_examples(p, r):
    assert sperner_bound(p) == r == central_scan(p)


def _breakpoints(limit):
    """Values of n where the central-binomial bounds can change."""
    pts = set()
    for r in range(1, 40):
        for val in (math.comb(r, r // 2),
                    ((r - r // 2) * math.comb(r, r // 2)) // max(r - 1, 1)):
            for d in (-1, 0, 1, 2):
                if 2 <= val + d <= limit:
                    pts.add(val + d)
    return sorted(pts)


def test_sperner_monotone_up_to_a_million():
    # both sides are step functions; checking every p near a step and a
    # dense prefix covers all p <= 10^6
    pts = sorted(set(range(1, 5000)) | set(_breakpoints(10**6)) | {10**6})
    vals = [sperner_bound(p) for p in pts]
    assert vals == sorted(vals)


def test_improved_never_below_sperner():
    pts = sorted(set(range(2, 5000)) | set(_breakpoints(10**6)) | {10**6})
    for n in pts:
        assert improved_boolean_bound(n) >= sperner_bound(n)


def _improved_oracle(n):
    r = 2
    while Fraction(r - r // 2, r - 1) * math.comb(r, r // 2) < n:
        r += 1
    return r


@pytest.mark.parametrize("n,r", [(2, 2), (6, 5), (13, 7)])
def test_improved_examples(n, r):
    assert improved_boolean_bound(n) == r


def test_improved_against_rational_oracle():
    for n in range(2, 3000):
        assert improved_boolean_bound(n) == _improved_oracle(n)


def test_improved_ranges():
    expected = {5: range(5, 8), 6: range(8, 13), 7: range(13, 24), 8: range(24, 41)}
    for r, ns in expected.items():
        assert all(improved_boolean_bound(n) == r for n in ns)


@pytest.mark.parametrize("v,d,k,expected", [
    (5, 2, 0, 5), (5, 2, 1, 5), (6, 3, 1, 12), (6, 3, 2, 8), (6, 4, 3, 9),
])
def test_faces_spot_values(v, d, k, expected):
    assert faces(v, d, k) == expected


@pytest.mark.parametrize("v", range(4, 20))
def test_faces_simplicial_three_polytopes(v):
    assert faces(v, 3, 0) == v
    assert faces(v, 3, 1) == 3 * v - 6
    assert faces(v, 3, 2) == 2 * v - 4


@pytest.mark.parametrize("d", range(2, 9))
def test_faces_match_gale_enumeration(d):
    for v in range(d + 1, 31 if d <= 4 else 18):
        for k in range(d):
            assert faces(v, d, k) == gale_face_count(v, d, k), (v, d, k)


def test_faces_domain():
    with pytest.raises(ValueError):
        faces(3, 3, 0)
    with pytest.raises(ValueError):
        faces(6, 3, 3)


@pytest.mark.parametrize("n,r", [(6, 5), (9, 6), (10, 7), (15, 8), (21, 9)])
def test_geometric_examples(n, r):
    assert geometric_lower_bound(n) == r


def test_geometric_table_row():
    assert [geometric_lower_bound(n) for n in range(6, 22)] == \
        [5, 6, 6, 6, 7, 7, 7, 7, 7, 8, 8, 8, 8, 8, 8, 9]


@pytest.mark.parametrize("n,r", [(6, 4), (7, 4), (1000, 11), (1, 2), (3, 3)])
def test_log_bound(n, r):
    assert trivial_log_bound(n) == r
    assert r == math.ceil(math.log2(2 * n + 2))


def test_minfkz_examples():
    r4 = minimize_fkz(4)
    assert set(r4.all_minimizers) == {(1, 1), (2, 1)}
    assert r4.min_f == 6 and r4.min_value == Fraction(6, 24)
    r5 = minimize_fkz(5)
    assert r5.all_minimizers == [(2, 1)] and r5.min_f == 16
    r2 = minimize_fkz(2)
    assert r2.all_minimizers == [(1, 1)] and r2.min_f == 1
    with pytest.raises(ValueError):
        minimize_fkz(1)


@pytest.mark.parametrize("r", range(2, 21))
def test_minfkz_half_is_optimal(r):
    res = minimize_fkz(r)
    assert (r // 2, 1) in res.all_minimizers
    if r % 2 == 0 and r >= 4:
        assert (r // 2 - 1, 1) in res.all_minimizers
    assert res.min_f == fkz(r, r // 2, 1)


@given(st.integers(2, 25), st.data())
@settings(max_examples=100)
def test_fkz_symmetry(r, data):
    k = data.draw(st.integers(1, r - 1))
    z = data.draw(st.integers(1, r - k))
    assert fkz(r, k, z) == fkz(r, r - k - z, z) if r - k - z >= 1 else True


@pytest.mark.parametrize("n,lb_geo,ub", [(9, 6, 7), (12, 7, 7), (21, 9, 9)])
def test_bounds_row_examples(n, lb_geo, ub):
    row = bounds_row(n)
    assert row.lb_geometric == lb_geo and row.ub == ub
    if lb_geo == ub:
        assert row.gap == 0


def test_all_lower_bounds_below_upper():
    for n in range(3, 4097):
        ub = upper_bound_size(n)
        assert trivial_log_bound(n) <= ub
        assert sperner_bound(n) <= improved_boolean_bound(n) <= ub
    for n in list(range(3, 400)) + [1000, 2048, 4096]:
        row = bounds_row(n)
        assert row.lb_log <= row.lb_sperner <= row.lb_improved
        assert max(row.lb_log, row.lb_improved, row.lb_geometric) == row.lb_best <= row.ub
        assert row.gap == row.ub - row.lb_best >= 0


def test_bounds_row_with_rcb():
    row = bounds_row(7, include_rcb=True)
    assert row.rcb == 6 and row.rcb_optimal
    assert row.lb_best == 6 == row.ub
