from math import inf
from random import Random

import pytest

from rrspace.errors import EdgeNotOnPolygonError, PrecisionUnderflow, ZeroElementError
from rrspace.gf import GF
from rrspace.newton import (
    WeightedValuation,
    component,
    initial_form,
    newton_polygon,
    newton_polynomial,
    slab,
    theta_polynomial,
    wval,
)
from rrspace.polyring import BiPoly, SeriesPoly

F2, F101 = GF(2), GF(101)

CUSP = BiPoly.from_ints(F2, {(0, 3): 1, (3, 0): 1, (2, 0): 1})
# support (y-index, ord_x): (1,3), (2,1), (4,2), (5,0), (6,1), (7,0)
MIXED = BiPoly.from_ints(
    F101, {(3, 1): 1, (1, 2): 2, (2, 4): -1, (0, 5): 1, (1, 6): 3, (0, 7): 1}
)


def test_weighted_valuation_cusp():
    assert wval(CUSP, WeightedValuation(3, 2)) == 6


def test_weighted_valuation_of_zero():
    assert wval(BiPoly.zero(F2), WeightedValuation(1, 1)) == inf


def test_weighted_valuation_xy():
    assert wval(BiPoly.from_ints(F2, {(1, 1): 1}), WeightedValuation(1, 1)) == 2


def test_initial_form_cusp():
    inf_form = initial_form(CUSP, WeightedValuation(3, 2))
    assert inf_form == BiPoly.from_ints(F2, {(0, 3): 1, (2, 0): 1})


def test_initial_form_single_term():
    x = BiPoly.from_ints(F2, {(1, 0): 1})
    assert initial_form(x, WeightedValuation(2, 1)) == x
    with pytest.raises(ZeroElementError):
        initial_form(BiPoly.zero(F2), WeightedValuation(1, 1))


def test_slab_cusp():
    # term valuations for weights (3, 2): y^3 -> 6, x^3 -> 9, x^2 -> 6
    got = slab(CUSP, WeightedValuation(3, 2), 6, 3)
    assert got == BiPoly.from_ints(F2, {(0, 3): 1, (2, 0): 1})


def test_components_sum_to_input():
    rng = Random(31)
    w = WeightedValuation(2, 3)
    for _ in range(6):
        terms = {
            (rng.randrange(4), rng.randrange(4)): F101.random_element(rng)
            for _ in range(6)
        }
        a = BiPoly(F101, terms)
        acc = BiPoly.zero(F101)
        vals = {w.of(i, j) for (i, j) in a.terms}
        for e in vals:
            acc = acc + component(a, w, e)
        assert acc == a


def test_wval_is_a_valuation():
    rng = Random(32)
    w = WeightedValuation(3, 2)
    for _ in range(20):
        a = BiPoly(
            F101,
            {(rng.randrange(4), rng.randrange(4)): F101.random_element(rng) for _ in range(4)},
        )
        b = BiPoly(
            F101,
            {(rng.randrange(4), rng.randrange(4)): F101.random_element(rng) for _ in range(4)},
        )
        if a.is_zero() or b.is_zero():
            continue
        assert wval(a * b, w) == wval(a, w) + wval(b, w)
        if not (a + b).is_zero():
            assert wval(a + b, w) >= min(wval(a, w), wval(b, w))


def _hull_oracle(points):
    """Brute force: a vertex is a support point through which a line can be
    drawn leaving every support point weakly above."""
    out = []
    for (i0, j0) in points:
        ok = False
        # candidate supporting slopes from all pairs, plus vertical extremes
        slopes = set()
        for (i1, j1) in points:
            if i1 != i0:
                slopes.add((j1 - j0, i1 - i0))
        slopes.add((0, 1))
        for (num, den) in slopes:
            if all(
                (j - j0) * abs(den) >= (num * (i - i0) * (1 if den > 0 else -1))
                for (i, j) in points
            ):
                ok = True
                break
        if ok:
            out.append((i0, j0))
    return sorted(out)


def test_polygon_of_mixed_support():
    pg = newton_polygon(MIXED)
    assert pg.vertices == ((1, 3), (2, 1), (5, 0), (7, 0))


def test_polygon_vertices_are_support_points_and_hull_is_lower():
    rng = Random(33)
    for _ in range(10):
        terms = {}
        for _ in range(rng.randrange(2, 7)):
            terms[(rng.randrange(6), rng.randrange(6))] = F101.element(
                rng.randrange(1, 101)
            )
        f = BiPoly(F101, terms)
        if f.is_zero():
            continue
        pg = newton_polygon(f)
        support = {(j, i) for (i, j) in f.terms}
        # points grouped by y-index: keep the minimal ord_x per index
        pts = {}
        for (i, j) in support:
            pts[i] = min(pts.get(i, j), j)
        support_pts = set(pts.items())
        for v in pg.vertices:
            assert v in support_pts
        for (i, j) in support_pts:
            h = pg.height_at_num_den(i)
            assert h is not None
            num, den = h
            assert j * den >= num  # on or above the polygon


def test_polygon_degenerate_monomial():
    f = BiPoly.from_ints(F101, {(0, 4): 1})  # y^4
    pg = newton_polygon(f)
    assert pg.vertices == ((4, 0),)
    assert pg.is_degenerate()


def test_polygon_two_points():
    f = BiPoly.from_ints(F101, {(0, 2): 1, (1, 0): -1})  # y^2 - x
    assert newton_polygon(f).vertices == ((0, 1), (2, 0))


def test_polygon_underflow_on_uncertified_low_coefficient():
    from rrspace.polyring import TruncSeries

    # f = y^2 + (0 mod x^2) with the constant coefficient uncertified: the
    # polygon cannot be certified because a small ord could cut below it
    f = SeriesPoly(
        F101,
        [TruncSeries(F101, [], 2), TruncSeries(F101, [], inf), TruncSeries.one(F101)],
    )
    with pytest.raises(PrecisionUnderflow):
        newton_polygon(f)


def test_newton_polynomial_main_edge():
    assert newton_polynomial(MIXED, ((2, 1), (5, 0))) == BiPoly.from_ints(
        F101, {(1, 0): 2, (0, 3): 1}
    )  # 2x + y^3


def test_newton_polynomial_steep_edge():
    # lattice points (1,3) and (2,1) only
    assert newton_polynomial(MIXED, ((1, 3), (2, 1))) == BiPoly.from_ints(
        F101, {(3, 0): 1, (1, 1): 2}
    )  # x^3 + 2*x*y


def test_newton_polynomial_two_point_edge():
    f = BiPoly.from_ints(F101, {(0, 2): 1, (1, 0): -1})
    assert newton_polynomial(f, ((0, 1), (2, 0))) == BiPoly.from_ints(
        F101, {(1, 0): -1, (0, 2): 1}
    )  # -x + y^2


def test_newton_polynomial_rejects_non_edges():
    with pytest.raises(EdgeNotOnPolygonError):
        newton_polynomial(MIXED, ((1, 3), (5, 0)))


def test_theta_polynomial_of_cusp():
    pg = newton_polygon(CUSP)
    theta = theta_polynomial(CUSP, pg.edges()[0])
    assert theta.degree == 1
    assert theta.coeff(0).is_one() and theta.coeff(1).is_one()


def test_single_edge_law_for_irreducible_series():
    # built by places on known irreducible local equations
    from rrspace.places import local_branches
    from rrspace.polyring import ProjPoint, TriHomog

    F = TriHomog.from_ints(F2, 3, {(0, 3, 0): 1, (3, 0, 0): 1, (2, 0, 1): 1})
    for pt in (ProjPoint(F2, [0, 0, 1]), ProjPoint(F2, [1, 0, 1])):
        for fac, _pl in local_branches(F, pt).factors:
            pg = newton_polygon(fac)
            assert len(pg.edges()) == 1
            (i0, j0), (i1, j1) = pg.edges()[0]
            assert (i0, i1) == (0, fac.ydeg)
            assert j1 == 0
