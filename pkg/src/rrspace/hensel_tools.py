"""Absolute irreducibility of bivariate polynomials by analytic recombination.

Given f monic and separable in y, the fibre over a good abscissa splits
into distinct roots in its splitting field; each root lifts to a monic
linear-in-y series factor.  A polynomial factor of f is then the product
of a subset of the lifted factors, and conversely a subset whose product
truncates to a polynomial dividing f exactly exhibits a factor.  Testing
every proper subset therefore decides irreducibility over the algebraic
closure.
"""

from math import lcm
from random import Random

from .errors import InternalError
from .gf import GF, UniPoly, build_extension, embed, factor_univariate, find_roots
from .lifting import hensel_classic
from .polyring import BiPoly, SeriesPoly


def _fibre_at(f: BiPoly, x0) -> UniPoly:
    field = x0.field
    acc = {}
    for (i, j), c in f.terms.items():
        v = embed(c, field) * x0 ** i
        acc[j] = acc.get(j, field.zero()) + v
    n = max(acc) if acc else -1
    return UniPoly(field, [acc.get(j, field.zero()) for j in range(n + 1)])


def _good_abscissa(f: BiPoly, rng: Random):
    """An x0 (over the base or an extension) with a squarefree full-degree
    fibre."""
    base = f.field
    d = f.degy()
    for ext in (1, 2, 3):
        K = build_extension(GF(base.p), base.degree * ext)
        tried = 0
        for x0 in K.elements():
            fib = _fibre_at(f, x0)
            tried += 1
            if fib.degree == d and fib.gcd(fib.derivative()).is_one():
                return x0
            if tried > 4 * d * d + 16:
                break
    return None


def lift_linear_fibre_factors(f: BiPoly, x0, prec: int):
    """Monic linear series factors of f(x + x0, y) over the fibre's
    splitting field, certified modulo x^prec."""
    base = x0.field
    fib = _fibre_at(f, x0)
    degs = [g.degree for g, _m in factor_univariate(fib)]
    Ks = build_extension(GF(base.p), base.degree * lcm(*degs))
    x0K = embed(x0, Ks)
    fK = f.map_coeffs(lambda c: embed(c, Ks), Ks)
    shifted = fK.shift(x0K, Ks.zero())
    roots = find_roots(fib, Ks)
    cur = SeriesPoly.from_bipoly(shifted, prec)
    out = []
    for rho in roots[:-1]:
        g0 = UniPoly(Ks, [-rho, Ks.one()])
        h0 = cur.at_x_zero() // g0
        g, h = hensel_classic(cur, g0, h0, prec)
        out.append(g)
        cur = h
    out.append(cur)
    if len(out) != len(roots):
        raise InternalError("fibre factor count mismatch")
    return out, Ks, shifted


def irreducible_by_recombination(f: BiPoly, rng: Random = None) -> bool:
    """Decide whether f (monic and separable in y) is irreducible over the
    algebraic closure of its coefficient field."""
    rng = rng or Random(1)
    d = f.degy()
    if d <= 1:
        return True
    x0 = _good_abscissa(f, rng)
    if x0 is None:
        raise InternalError("no squarefree fibre found for a separable curve")
    bound = f.degree()  # a factor's x-degree is at most its total degree
    prec = bound + 4
    factors, Ks, shifted = lift_linear_fibre_factors(f, x0, prec)
    n = len(factors)
    shifted_sp = SeriesPoly.from_bipoly(shifted)
    # every proper factorisation leaves the last analytic factor on one
    # side, so subsets of the first n - 1 factors cover all candidates
    for mask in range(1, 1 << (n - 1)):
        subset = [factors[i] for i in range(n - 1) if mask & (1 << i)]
        if not subset:
            continue
        prod = subset[0]
        for g in subset[1:]:
            prod = prod * g
        candidate_terms = {}
        ok = True
        for j, coeff in enumerate(prod.coeffs):
            for i, c in enumerate(coeff.coeffs):
                if c.is_zero():
                    continue
                if i > bound:
                    ok = False
                    break
                candidate_terms[(i, j)] = c
            if not ok:
                break
        if not ok:
            continue
        candidate = SeriesPoly.from_bipoly(BiPoly(Ks, candidate_terms))
        if not candidate.is_monic():
            continue
        _q, rem = shifted_sp.divrem_monic(candidate)
        if rem.is_zero():
            return False
    return True
