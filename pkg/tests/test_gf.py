from random import Random

import pytest

from rrspace.errors import DivisionByZeroError, FieldMismatchError, NoEmbeddingError
from rrspace.gf import (
    GF,
    UniPoly,
    build_extension,
    embed,
    factor_univariate,
    find_roots,
    parse_field,
    project_to_subfield,
    relative_coordinates,
    subfield_degree,
)


def test_char2_addition():
    F2 = GF(2)
    assert (F2.one() + F2.one()).is_zero()


def test_gf4_generator_square():
    F4 = GF(2, 2)
    t = F4.generator()
    assert t * t == t + F4.one()


def test_gf5_division_against_inverse_table():
    F5 = GF(5)
    # oracle: exhaustive inverse table for GF(5)
    inverses = {}
    for a in range(1, 5):
        for b in range(1, 5):
            if a * b % 5 == 1:
                inverses[a] = b
    assert (F5.element(2) / F5.element(3)) == F5.element(2 * inverses[3])
    assert (F5.element(2) / F5.element(3)).to_int() == 4


def test_division_by_zero():
    F5 = GF(5)
    with pytest.raises(DivisionByZeroError):
        F5.one() / F5.zero()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        GF(2).one() + GF(3).one()


def _brute_irreducible(field, coeffs):
    """Oracle: no factorisation into two lower-degree monic polynomials."""
    f = UniPoly.from_ints(field, coeffs)
    n = f.degree
    polys_by_deg = {0: [UniPoly.constant(field, 1)]}
    elements = list(field.elements())

    def monics(d):
        if d not in polys_by_deg:
            out = []
            for tail in _tuples(elements, d):
                out.append(UniPoly(field, list(tail) + [field.one()]))
            polys_by_deg[d] = out
        return polys_by_deg[d]

    for d in range(1, n // 2 + 1):
        for g in monics(d):
            if (f % g).is_zero():
                return False
    return True


def _tuples(elements, length):
    if length == 0:
        yield ()
        return
    for rest in _tuples(elements, length - 1):
        for e in elements:
            yield rest + (e,)


def test_extension_degree_one_is_base():
    F2 = GF(2)
    assert build_extension(F2, 1) is F2


def test_gf4_modulus_is_unique_irreducible_quadratic():
    F2 = GF(2)
    F4 = build_extension(F2, 2)
    # oracle: exhaust all four monic quadratics over GF(2)
    irreducible = [
        c for c in [(0, 0), (1, 0), (0, 1), (1, 1)] if _brute_irreducible(F2, list(c) + [1])
    ]
    assert irreducible == [(1, 1)]
    assert F4.modulus == (1, 1)


def test_gf9_modulus_lexicographically_first():
    F3 = GF(3)
    F9 = build_extension(F3, 2)
    # oracle: t^2 + 1 has no root in GF(3) and is the first candidate code
    assert all(pow(v, 2, 3) != 2 for v in range(3))  # t^2 = -1 unsolvable
    assert F9.modulus == (1, 0)


def test_parse_field():
    assert parse_field("GF(7)").order == 7
    assert parse_field("GF(2^4)").order == 16
    assert parse_field(" GF( 3 ^ 2 ) ").order == 9


def test_factor_difference_of_squares():
    F5 = GF(5)
    f = UniPoly.from_ints(F5, [-1, 0, 1])
    factors = factor_univariate(f)
    assert sorted(str(g) for g, m in factors) == ["x + 1", "x + 4"]
    assert all(m == 1 for _g, m in factors)


def test_factor_irreducible_quadratic():
    F2 = GF(2)
    f = UniPoly.from_ints(F2, [1, 1, 1])
    assert factor_univariate(f) == [(f, 1)]


def test_factor_with_multiplicity():
    F2 = GF(2)
    f = UniPoly.from_ints(F2, [0, 0, 1]) * UniPoly.from_ints(F2, [1, 1])
    factors = factor_univariate(f)
    as_map = {str(g): m for g, m in factors}
    assert as_map == {"x": 2, "x + 1": 1}


def test_factor_reconstructs_product():
    rng = Random(11)
    for q in (GF(2), GF(5), GF(2, 2), GF(3, 2)):
        for _ in range(8):
            coeffs = [q.random_element(rng) for _ in range(rng.randrange(2, 7))]
            f = UniPoly(q, coeffs)
            if f.degree < 1:
                continue
            prod = UniPoly.constant(q, 1)
            for g, m in factor_univariate(f, rng):
                for _ in range(m):
                    prod = prod * g
            assert prod * f.leading() == f


def test_roots_in_extension_match_exhaustive_search():
    F2 = GF(2)
    F4 = GF(2, 2)
    f = UniPoly.from_ints(F2, [1, 1, 1])
    roots = find_roots(f, F4)
    # oracle: evaluate over all four elements of GF(4)
    expected = [a for a in F4.elements() if f.map_coeffs(lambda c: embed(c, F4), F4)(a).is_zero()]
    assert sorted(roots, key=lambda a: a.coeffs) == sorted(expected, key=lambda a: a.coeffs)
    assert len(roots) == 2


def test_roots_simple_cases():
    F5, F3 = GF(5), GF(3)
    assert find_roots(UniPoly.from_ints(F5, [-1, 1]), F5) == [F5.one()]
    assert find_roots(UniPoly.from_ints(F3, [1, 0, 1]), F3) == []


def test_embed_unital_and_zero():
    F2, F4 = GF(2), GF(2, 2)
    F3, F9 = GF(3), GF(3, 2)
    assert embed(F2.one(), F4) == F4.one()
    assert embed(F3.zero(), F9) == F9.zero()


def test_embed_generator_is_first_root():
    F4, F16 = GF(2, 2), GF(2, 4)
    t = F4.generator()
    img = embed(t, F16)
    # oracle: roots of the GF(4) modulus in GF(16) by exhaustive evaluation
    mod = UniPoly.from_ints(F16, [1, 1, 1])
    roots = sorted(
        (a for a in F16.elements() if mod(a).is_zero()), key=lambda a: a.coeffs
    )
    assert img == roots[0]


def test_embed_is_ring_homomorphism_exhaustive_small():
    for src, dst in [(GF(2, 2), GF(2, 4)), (GF(3), GF(3, 2))]:
        seen = set()
        for a in src.elements():
            ia = embed(a, dst)
            assert ia not in seen  # injective
            seen.add(ia)
            for b in src.elements():
                assert embed(a + b, dst) == embed(a, dst) + embed(b, dst)
                assert embed(a * b, dst) == embed(a, dst) * embed(b, dst)


def test_embed_requires_divisibility():
    with pytest.raises(NoEmbeddingError):
        embed(GF(2, 2).generator(), GF(2, 3))


def test_field_axioms_random():
    rng = Random(5)
    for field in (GF(101), GF(2, 3), GF(5, 2)):
        for _ in range(25):
            a, b, c = (field.random_element(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a and a * b == b * a
            if not a.is_zero():
                assert (a * a.inverse()).is_one()


def test_frobenius_is_additive_and_fixes_prime_field():
    rng = Random(9)
    field = GF(3, 3)
    p = field.p
    for _ in range(20):
        a, b = field.random_element(rng), field.random_element(rng)
        # repeated multiplication against the power operator
        prod = field.one()
        for _ in range(p):
            prod = prod * a
        assert prod == a ** p
        assert (a + b) ** p == a ** p + b ** p
    for c in range(p):
        assert field.element(c) ** p == field.element(c)


def test_subfield_projection_roundtrip():
    F4, F16 = GF(2, 2), GF(2, 4)
    for a in F4.elements():
        up = embed(a, F16)
        assert subfield_degree(up) in (1, 2)
        assert project_to_subfield(up, F4) == a


def test_relative_coordinates_reassemble():
    F4, F16 = GF(2, 2), GF(2, 4)
    g = F16.generator()
    rng = Random(3)
    for _ in range(10):
        xi = F16.random_element(rng)
        coords = relative_coordinates(xi, F4, F16)
        acc = F16.zero()
        power = F16.one()
        for c in coords:
            acc = acc + embed(c, F16) * power
            power = power * g
        assert acc == xi
