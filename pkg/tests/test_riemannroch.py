from random import Random

import pytest

from rrspace.divisors import Divisor, adjoint_divisor, global_divisor
from rrspace.errors import DuplicatePointsError
from rrspace.gf import GF, UniPoly
from rrspace.linalg import rank
from rrspace.places import local_branches
from rrspace.polyring import BiPoly, ProjPoint, TriHomog
from rrspace.riemannroch import (
    find_denominator,
    monomials,
    normal_form_mod_curve,
    rr_basis,
    rr_line_affine,
    rr_line_projective,
    vanishing_conditions,
    verify_basis,
)

F2, F5, F101 = GF(2), GF(5), GF(101)


def _in_span(G, gens, F):
    forms = [normal_form_mod_curve(g, F) for g in gens]
    target = normal_form_mod_curve(G, F)
    keys = sorted({e for f in forms + [target] for e in f.terms})
    if not keys:
        return target.is_zero()
    fld = forms[0].field if forms else target.field
    rows = [[f.terms.get(e, fld.zero()) for e in keys] for f in forms]
    r0 = rank(rows, fld) if rows else 0
    rows.append([target.terms.get(e, fld.zero()) for e in keys])
    return rank(rows, fld) == r0


def _smooth_place(F, coords, field):
    return local_branches(F, ProjPoint(field, coords)).places[0]


def test_cusp_curve_full_pipeline(cusp_curve):
    P1 = _smooth_place(cusp_curve, [1, 0, 1], F2)
    D = Divisor(cusp_curve, {P1: 1})
    A = adjoint_divisor(cusp_curve)
    assert A.degree() == 2

    H = find_denominator(cusp_curve, D, A)
    assert H == TriHomog.from_ints(F2, 1, {(0, 1, 0): 1})  # H = y

    basis = rr_basis(cusp_curve, D)
    assert basis.ell == 2
    X = TriHomog.from_ints(F2, 1, {(1, 0, 0): 1})
    Y = TriHomog.from_ints(F2, 1, {(0, 1, 0): 1})
    assert _in_span(X, basis.numerators, cusp_curve)
    assert _in_span(Y, basis.numerators, cusp_curve)
    report = verify_basis(cusp_curve, D, basis)
    assert report.ok, report.failures


def test_trivial_divisor_on_smooth_conic(conic_curve):
    basis = rr_basis(conic_curve, Divisor.zero(conic_curve))
    assert basis.ell == 1
    assert basis.H.degree == 0
    assert basis.numerators[0].degree == 0


def test_negative_degree_divisor_gives_zero_space(cusp_curve):
    P1 = _smooth_place(cusp_curve, [1, 0, 1], F2)
    D = Divisor(cusp_curve, {P1: -1})
    basis = rr_basis(cusp_curve, D)
    assert basis.ell == 0 and basis.numerators == []
    assert verify_basis(cusp_curve, D, basis).ok


def test_vanishing_conditions_at_cusp(cusp_curve):
    place = _smooth_place(cusp_curve, [0, 0, 1], F2)
    rows = vanishing_conditions(place, 2, 1)
    assert len(rows) == 2
    # monomial order is z, y, x; both orders 0 and 1 constrain only z
    assert [e.coeffs[0] for e in rows[0]] == [1, 0, 0]
    assert [e.coeffs[0] for e in rows[1]] == [0, 0, 0]


def test_vanishing_conditions_smooth_point_order_one_is_evaluation(conic_curve):
    F3 = GF(3)
    pt = ProjPoint(F3, [0, 1, 0])  # on x^2 + yz
    place = local_branches(conic_curve, pt).places[0]
    rows = vanishing_conditions(place, 1, 1)
    assert len(rows) == 1
    # the order-0 row evaluates each monomial at the centre, in some chart
    mono_vals = []
    for (i, j, k) in monomials(1):
        mono_vals.append((i, j, k))
    # the row must annihilate exactly the linear forms vanishing at the point
    fld = place.field
    row = rows[0]
    # y is nonzero at (0:1:0), x and z vanish there
    nonzero_cols = [n for n, e in enumerate(row) if not e.is_zero()]
    assert nonzero_cols == [1]  # only the y-column evaluates nonzero


def test_line_dimension_matches_closed_form(line_curve_101):
    rng = Random(61)
    for _ in range(6):
        npts = rng.randrange(1, 4)
        alphas = rng.sample(range(101), npts)
        ms = [rng.randrange(-2, 4) for _ in range(npts)]
        if sum(ms) < 0:
            ms[0] += -sum(ms)
        _h, _nums, ell = rr_line_affine(list(zip(alphas, ms)), F101)
        assert ell == 1 + sum(ms)
        entries = {}
        for a, m in zip(alphas, ms):
            if m == 0:
                continue
            place = _smooth_place(line_curve_101, [a, 0, 1], F101)
            entries[place] = m
        D = Divisor(line_curve_101, entries)
        basis = rr_basis(line_curve_101, D)
        assert basis.ell == ell, (alphas, ms)


def test_rr_line_affine_examples():
    h, nums, ell = rr_line_affine([(0, 2)], F101)
    assert str(h) == "x^2" and ell == 3
    assert [str(n) for n in nums] == ["1", "x", "x^2"]
    h, nums, ell = rr_line_affine([(0, 0)], F101)
    assert ell == 1 and str(nums[0]) == "1"
    h, nums, ell = rr_line_affine([(0, 1), (1, -1)], F101)
    assert ell == 1
    assert str(h) == "x"
    assert nums[0] == UniPoly.from_ints(F101, [-1, 1])  # x - 1


def test_rr_line_affine_rejects_duplicates():
    with pytest.raises(DuplicatePointsError):
        rr_line_affine([(0, 1), (0, 2)], F101)


def test_rr_line_projective_examples():
    H, nums, ell = rr_line_projective([((1, 0), 2)], F101)
    assert ell == 3
    assert H == BiPoly.from_ints(F101, {(0, 2): 1})  # z^2 after normalisation
    assert nums == [
        BiPoly.from_ints(F101, {(0, 2): 1}),
        BiPoly.from_ints(F101, {(1, 1): 1}),
        BiPoly.from_ints(F101, {(2, 0): 1}),
    ]
    _H, nums, ell = rr_line_projective([((1, 0), 0)], F101)
    assert ell == 1 and nums[0] == BiPoly.constant(F101, 1)
    H, nums, ell = rr_line_projective([((0, 1), 1), ((1, 1), 1)], F101)
    assert ell == 3
    # H = x(x - z) up to the normalisation of each factor
    assert H == BiPoly.from_ints(F101, {(2, 0): 1, (1, 1): -1})


def test_riemann_roch_dimension_on_genus_zero(cusp_curve, conic_curve):
    F3 = GF(3)
    rng = Random(62)
    # effective divisors on genus-0 curves: ell = deg + 1
    P1 = _smooth_place(cusp_curve, [1, 0, 1], F2)
    P0 = _smooth_place(cusp_curve, [0, 0, 1], F2)
    for D in (
        Divisor(cusp_curve, {P1: 2}),
        Divisor(cusp_curve, {P1: 1, P0: 1}),
        Divisor(cusp_curve, {P0: 3}),
    ):
        assert rr_basis(cusp_curve, D, rng).ell == D.degree() + 1
    Q = _smooth_place(conic_curve, [0, 1, 0], F3)
    for mult in (1, 2):
        D = Divisor(conic_curve, {Q: mult})
        assert rr_basis(conic_curve, D, rng).ell == mult + 1


def test_monotonicity(cusp_curve):
    P1 = _smooth_place(cusp_curve, [1, 0, 1], F2)
    P0 = _smooth_place(cusp_curve, [0, 0, 1], F2)
    pairs = [
        (Divisor(cusp_curve, {P1: 1}), Divisor(cusp_curve, {P1: 2})),
        (Divisor(cusp_curve, {P0: 1}), Divisor(cusp_curve, {P0: 1, P1: 1})),
    ]
    for D, D2 in pairs:
        assert D.leq(D2)
        assert rr_basis(cusp_curve, D).ell <= rr_basis(cusp_curve, D2).ell


def test_numerators_satisfy_all_condition_rows(cusp_curve):
    P1 = _smooth_place(cusp_curve, [1, 0, 1], F2)
    D = Divisor(cusp_curve, {P1: 1})
    basis = rr_basis(cusp_curve, D)
    div_h = global_divisor(cusp_curve, basis.H)
    E = (div_h - D).positive_part()
    for G in basis.numerators:
        for place, m in E.entries():
            rows = vanishing_conditions(place, m, basis.H.degree)
            vec = [G.coeff(e) for e in monomials(basis.H.degree)]
            for row in rows:
                acc = place.field.zero()
                from rrspace.gf import embed

                for r, g in zip(row, vec):
                    acc = acc + r * embed(g, place.field)
                assert acc.is_zero()


def test_invariance_under_linear_change(cusp_curve):
    rng = Random(63)
    from rrspace.linalg import det

    P1 = _smooth_place(cusp_curve, [1, 0, 1], F2)
    D = Divisor(cusp_curve, {P1: 1})
    ell0 = rr_basis(cusp_curve, D).ell
    while True:
        m = [[F2.element(rng.randrange(2)) for _ in range(3)] for _ in range(3)]
        if not det(m, F2).is_zero():
            break
    Fm = cusp_curve.substitute_linear(m)
    # the centre moves by the inverse matrix
    from rrspace.polyring import matrix_inverse3

    minv = matrix_inverse3(m, F2)
    newpt = ProjPoint(F2, [1, 0, 1]).apply_matrix(minv)
    P1m = local_branches(Fm, newpt).places[0]
    Dm = Divisor(Fm, {P1m: 1})
    basis_m = rr_basis(Fm, Dm)
    assert basis_m.ell == ell0
    # pull the transformed numerators back and verify membership in L(D)
    pulled = [G.substitute_linear(minv) for G in basis_m.numerators]
    Hp = basis_m.H.substitute_linear(minv)
    from rrspace.riemannroch import RRBasis

    report = verify_basis(cusp_curve, D, RRBasis(Hp, pulled, basis_m.ell, basis_m.field))
    assert report.ok, report.failures


def test_verify_basis_flags_duplicate(cusp_curve):
    P1 = _smooth_place(cusp_curve, [1, 0, 1], F2)
    D = Divisor(cusp_curve, {P1: 1})
    basis = rr_basis(cusp_curve, D)
    from rrspace.riemannroch import RRBasis

    bad = RRBasis(basis.H, [basis.H, basis.H], 2, basis.field)
    report = verify_basis(cusp_curve, D, bad)
    assert not report.ok
    assert any("dependent" in f for f in report.failures)
