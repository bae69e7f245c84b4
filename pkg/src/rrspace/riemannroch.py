"""Bases of Riemann-Roch spaces on plane curves.

The two-step method: find a homogeneous denominator H whose divisor
dominates D plus the adjoint divisor, then compute all homogeneous
numerators G of degree deg H with Div(G) >= Div(H) - D, modulo the
multiples of the curve equation.  Vanishing conditions at a place are
linear equations on the coefficients, read off the t-expansion of a
candidate polynomial along the branch parametrization.

When the divisor is stable under the Frobenius of the curve's base field,
each condition row over an extension is expanded into base-field rows
through coordinates, so the returned denominator and numerators have
coefficients in the base field.

Closed forms on the projective line (divisors supported on rational
points of y = 0) are provided separately as cross-check oracles.
"""

from dataclasses import dataclass
from random import Random

from .errors import (
    DuplicatePointsError,
    InternalError,
)
from .divisors import Divisor, adjoint_divisor, ensure_irreducible, global_divisor
from .gf import UniPoly, common_field, embed, relative_coordinates
from .linalg import nullspace, rref
from .places import INFINITE_VALUATION, Place, chart_embed, local_branches, place_valuation
from .polyring import BiPoly, ProjPoint, TriHomog, TruncSeries


def monomials(d: int):
    """Exponent triples of degree d, z-heaviest first (ascending in x, y)."""
    return [(i, j, d - i - j) for i in range(d + 1) for j in range(d + 1 - i)]


def monomial_count(d: int) -> int:
    return (d + 1) * (d + 2) // 2


# ----------------------------------------------------------------------
# Vanishing conditions
# ----------------------------------------------------------------------

def vanishing_conditions(place: Place, m: int, d: int):
    """m linear rows forcing val_t(G) >= m at the place, for G of degree d.

    Row r lists, for every degree-d monomial, the coefficient of t^r in
    the monomial's expansion along the branch; entries live in the
    place's field.
    """
    if m < 1:
        return []
    pl = place.refined(m + 2)
    fld = pl.field
    a, b = pl.affine_center
    sx = pl.phi + TruncSeries(fld, [a])
    sy = pl.psi + TruncSeries(fld, [b])
    rows = [[] for _ in range(m)]
    for (i, j, k) in monomials(d):
        mono = TriHomog(place.curve.field, d, {(i, j, k): place.curve.field.one()})
        mono_c = chart_embed(mono, pl.chart_id, fld).dehomogenize("z")
        series = mono_c.eval_series(sx, sy)
        for r in range(m):
            rows[r].append(series.coeff(r))
    return rows


def _is_galois_stable(F: TriHomog, D: Divisor) -> bool:
    """Whether the divisor is fixed by the base-field Frobenius."""
    K0 = F.field
    if D.field.degree == K0.degree:
        return True
    q0 = K0.order
    for place, mult in D.entries():
        conj = _conjugate_place(F, place, q0)
        if conj is None or D.multiplicity(conj) != mult:
            return False
    return True


def _conjugate_place(F: TriHomog, place: Place, q0: int):
    """The image of the place under the q0-power Frobenius, or None."""
    center = place.center
    c2 = ProjPoint(
        center.field, [c ** q0 for c in center.coords]
    ).minimized(F.field.degree)
    fac2 = local_branches(F, c2)
    K = common_field([place.field] + [p.field for p in fac2.places])
    target = place.local_factor.map_coeffs(lambda c: embed(c, K) ** q0, K)
    precs = [place.local_factor.prec] + [p.local_factor.prec for p in fac2.places]
    depth = min(precs)
    depth = 8 if depth == float("inf") else int(depth)
    for cand in fac2.places:
        cf = cand.local_factor.map_coeffs(lambda c: embed(c, K), K)
        if cf.ydeg == target.ydeg and cf.agrees(target, depth):
            return cand
    return None


def _expand_rows_base(rows, row_field, K0):
    """Expand rows over an extension into base-field rows via coordinates."""
    if row_field == K0:
        return [list(r) for r in rows]
    out = []
    for row in rows:
        coords = [relative_coordinates(entry, K0, row_field) for entry in row]
        r = row_field.degree // K0.degree
        for s in range(r):
            out.append([coords[c][s] for c in range(len(row))])
    return out


def _condition_kernel(F: TriHomog, cond, d: int, descend: bool):
    """Kernel of the vanishing conditions at degree d.

    cond is a list of (place, multiplicity).  Returns (vectors, field).
    """
    K0 = F.field
    ncols = monomial_count(d)
    if descend:
        rows = []
        for place, m in cond:
            prows = vanishing_conditions(place, m, d)
            rows.extend(_expand_rows_base(prows, place.refined(m + 2).field, K0))
        vecs = nullspace(rows, K0, ncols) if rows else nullspace([], K0, ncols)
        return vecs, K0
    fields = [K0] + [p.field for p, _m in cond]
    Kw = common_field(fields)
    rows = []
    for place, m in cond:
        pl = place.refined(m + 2)
        for row in vanishing_conditions(pl, m, d):
            rows.append([embed(e, Kw) for e in row])
    vecs = nullspace(rows, Kw, ncols) if rows else nullspace([], Kw, ncols)
    return vecs, Kw


def _vector_to_trihomog(vec, d, field) -> TriHomog:
    terms = {}
    for e, c in zip(monomials(d), vec):
        if not c.is_zero():
            terms[e] = c
    return TriHomog(field, d, terms)


# ----------------------------------------------------------------------
# Reduction modulo the curve
# ----------------------------------------------------------------------

_REDUCTION_CTX: dict = {}


def _reduction_context(F: TriHomog):
    """Deterministic shear making the curve monic in y, for normal forms."""
    key = F.key()
    if key in _REDUCTION_CTX:
        return _REDUCTION_CTX[key]
    from .polyring import shear_a1_matrix

    field = F.field
    rng = Random(3)
    for trial in range(200):
        if trial == 0:
            alpha = beta = field.zero()
        else:
            alpha, beta = field.random_element(rng), field.random_element(rng)
        if not F(alpha, field.one(), beta).is_zero():
            m = shear_a1_matrix(field, alpha, beta)
            Fm = F.substitute_linear(m)
            Fm = Fm * Fm.coeff((0, F.degree, 0)).inverse()
            ctx = (m, Fm.dehomogenize("z"))
            _REDUCTION_CTX[key] = ctx
            return ctx
    # tiny fields may admit no such shear; enlarge
    from .gf import GF, build_extension

    K2 = build_extension(GF(field.p), field.degree * 2)
    FK = F.map_coeffs(lambda c: embed(c, K2), K2)
    ctx = _reduction_context(FK)
    _REDUCTION_CTX[key] = ctx
    return ctx


def normal_form_mod_curve(H: TriHomog, F: TriHomog) -> BiPoly:
    """Canonical representative of H modulo (F), as a reduced affine poly."""
    m, f_aff = _reduction_context(F)
    field = common_field([f_aff.field, H.field])
    HK = H.map_coeffs(lambda c: embed(c, field), field)
    mK = [[embed(c, field) for c in row] for row in m]
    f_affK = f_aff.map_coeffs(lambda c: embed(c, field), field)
    h_aff = HK.substitute_linear(mK).dehomogenize("z")
    return h_aff.divrem_y(f_affK)[1]


def divisible_by_curve(H: TriHomog, F: TriHomog) -> bool:
    if H.is_zero():
        return True
    if H.degree < F.degree:
        return False
    return normal_form_mod_curve(H, F).is_zero()


# ----------------------------------------------------------------------
# Denominator search and the main pipeline
# ----------------------------------------------------------------------

def find_denominator(F: TriHomog, D: Divisor, adjoint: Divisor = None, rng: Random = None) -> TriHomog:
    """A homogeneous H prime to F with Div(H) >= D_+ + adjoint.

    Degrees are searched from zero upwards; a nonzero kernel exists at the
    latest once the monomial count exceeds the number of conditions, and
    the first kernel vector not divisible by F is taken.
    """
    ensure_irreducible(F)
    A = adjoint if adjoint is not None else adjoint_divisor(F, rng)
    T = (D.positive_part() + A).positive_part()
    cond = T.entries()
    descend = _is_galois_stable(F, T)
    deg_T = T.degree()
    d = 0
    hard_stop = deg_T + 2 * F.degree + 6
    while d <= hard_stop:
        vecs, fld = _condition_kernel(F, cond, d, descend)
        for vec in vecs:
            H = _vector_to_trihomog(vec, d, fld)
            if H.is_zero() or divisible_by_curve(H, F):
                continue
            for place, m in cond:
                w = place_valuation(place, H)
                if w == INFINITE_VALUATION or w < m:
                    raise InternalError("denominator conditions not satisfied")
            return H
        d += 1
    raise InternalError("no denominator found below the degree bound")


@dataclass
class RRBasis:
    """Common denominator H plus numerators spanning the function space."""

    H: TriHomog
    numerators: list
    ell: int
    field: object

    def functions(self):
        return [(g, self.H) for g in self.numerators]


def _complement_modulo(vectors, subspace, field, ncols):
    """Vectors of `vectors` extending a basis of `subspace`, reduced."""
    rows = [list(v) for v in subspace]
    red, pivots = rref(rows, field) if rows else ([], [])
    piv_set = list(pivots)
    out = []
    basis_rows = [list(r) for r in red]
    for v in vectors:
        w = list(v)
        for r, pc in enumerate(piv_set):
            if not w[pc].is_zero():
                c = w[pc]
                w = [x - c * y for x, y in zip(w, basis_rows[r])]
        if all(x.is_zero() for x in w):
            continue
        # normalise and absorb into the running reduced basis
        lead = next(i for i, x in enumerate(w) if not x.is_zero())
        inv = w[lead].inverse()
        w = [x * inv for x in w]
        basis_rows.append(w)
        piv_set.append(lead)
        out.append(v)
    return out


def rr_basis(F: TriHomog, D: Divisor, rng: Random = None) -> RRBasis:
    """A basis G_1/H, ..., G_ell/H of the space of functions with
    divisor + D effective."""
    ensure_irreducible(F)
    rng = rng or Random(0)
    one = TriHomog(F.field, 0, {(0, 0, 0): F.field.one()})
    if D.degree() < 0:
        # a nonzero function would have a divisor of positive degree
        return RRBasis(one, [], 0, F.field)
    A = adjoint_divisor(F, rng)
    H = find_denominator(F, D, A, rng)
    if H.degree == 0:
        div_h = Divisor.zero(F)
    else:
        div_h = global_divisor(F, H, rng)
    T = D.positive_part() + A
    if not T.leq(div_h):
        raise InternalError("Div(H) does not dominate the requested divisor")
    E = div_h - D
    Epos = E.positive_part()
    descend = _is_galois_stable(F, Epos) and _is_galois_stable(F, D)
    vecs, fld = _condition_kernel(F, Epos.entries(), H.degree, descend)
    # quotient out multiples of the curve equation
    ncols = monomial_count(H.degree)
    sub = []
    if H.degree >= F.degree:
        FK = F.map_coeffs(lambda c: embed(c, fld), fld)
        for e in monomials(H.degree - F.degree):
            mono = TriHomog(fld, H.degree - F.degree, {e: fld.one()})
            prod = FK * mono
            sub.append([prod.coeff(t) for t in monomials(H.degree)])
    chosen = _complement_modulo(vecs, sub, fld, ncols)
    numerators = [_vector_to_trihomog(v, H.degree, fld) for v in chosen]
    for G in numerators:
        if divisible_by_curve(G, F):
            raise InternalError("numerator divisible by the curve")
        for place, m in Epos.entries():
            w = place_valuation(place, G)
            if w == INFINITE_VALUATION or w < m:
                raise InternalError("numerator conditions not satisfied")
    return RRBasis(H, numerators, len(numerators), fld)


def rr_dimension(F: TriHomog, D: Divisor, rng: Random = None) -> int:
    return rr_basis(F, D, rng).ell


# ----------------------------------------------------------------------
# Verification report
# ----------------------------------------------------------------------

@dataclass
class BasisReport:
    ok: bool
    failures: list


def verify_basis(F: TriHomog, D: Divisor, basis: RRBasis, rng: Random = None) -> BasisReport:
    """Check every numerator satisfies Div(G/H) >= -D and independence mod F."""
    failures = []
    if basis.H.degree == 0:
        div_h = Divisor.zero(F)
    else:
        div_h = global_divisor(F, basis.H, rng)
    bound = div_h - D
    support = {p for p, _m in bound.entries()}
    for idx, G in enumerate(basis.numerators):
        if G.degree != basis.H.degree:
            failures.append(f"numerator {idx} has degree {G.degree} != {basis.H.degree}")
            continue
        for place in support:
            need = bound.multiplicity(place)
            w = place_valuation(place, G)
            if w == INFINITE_VALUATION:
                failures.append(f"numerator {idx} vanishes along {place}")
            elif w < need:
                failures.append(
                    f"numerator {idx} has order {w} < {need} at {place}"
                )
    # linear independence modulo the curve
    forms = [normal_form_mod_curve(G, F) for G in basis.numerators]
    if forms:
        field = forms[0].field
        keys = sorted({e for f in forms for e in f.terms})
        rows = [[f.terms.get(e, field.zero()) for e in keys] for f in forms]
        from .linalg import rank

        if rank(rows, field) != len(forms):
            failures.append("numerators are dependent modulo the curve")
    if len(basis.numerators) != basis.ell:
        failures.append("stated dimension differs from the numerator count")
    return BasisReport(not failures, failures)


# ----------------------------------------------------------------------
# Closed forms on the projective line
# ----------------------------------------------------------------------

def rr_line_affine(pairs, field):
    """Functions on the affine line with prescribed orders at given points.

    pairs is [(alpha, m)] with distinct alphas.  Returns (h, numerators,
    ell) with h = prod_{m>0} (x - alpha)^m and numerators
    x^s * prod_{m<0} (x - alpha)^(-m); ell = 1 + sum(m).
    """
    alphas = [field.element(a) for a, _m in pairs]
    if len(set(alphas)) != len(alphas):
        raise DuplicatePointsError("repeated points in the divisor")
    x = UniPoly.x(field)
    h = UniPoly.constant(field, 1)
    g1 = UniPoly.constant(field, 1)
    total = 0
    for (a, m) in pairs:
        total += m
        lin = x - UniPoly.constant(field, field.element(a))
        for _ in range(abs(m)):
            if m > 0:
                h = h * lin
            else:
                g1 = g1 * lin
    ell = 1 + total
    if ell < 1:
        return h, [], 0
    numerators = []
    g = g1
    for _ in range(ell):
        numerators.append(g)
        g = g * x
    return h, numerators, ell


def rr_line_projective(pairs, field):
    """Same on the projective line: pairs is [((alpha, beta), m)].

    Returns (H, numerators, ell) as homogeneous bivariate polynomials in
    (x, z); each linear form beta*x - alpha*z is normalised so its first
    nonzero coefficient (x before z) is one.
    """
    pts = []
    for (coords, _m) in pairs:
        a, b = field.element(coords[0]), field.element(coords[1])
        if a.is_zero() and b.is_zero():
            raise DuplicatePointsError("(0:0) is not a point")
        scale = (b if not b.is_zero() else a).inverse()
        pts.append((a * scale, b * scale))
    if len(set(pts)) != len(pts):
        raise DuplicatePointsError("repeated points in the divisor")

    def lin_form(a, b):
        # beta*x - alpha*z, normalised
        cx, cz = b, -a
        lead = cx if not cx.is_zero() else cz
        inv = lead.inverse()
        return BiPoly(field, {(1, 0): cx * inv, (0, 1): cz * inv})

    H = BiPoly.constant(field, 1)
    G1 = BiPoly.constant(field, 1)
    d_pos = 0
    total = 0
    for (a, b), m in zip(pts, (m for _c, m in pairs)):
        total += m
        lf = lin_form(a, b)
        for _ in range(abs(m)):
            if m > 0:
                H = H * lf
                d_pos += 1
            else:
                G1 = G1 * lf
    ell = 1 + total
    if ell < 1:
        return H, [], 0
    d_g1 = G1.degree()
    numerators = []
    for s in range(ell):
        mono = BiPoly(field, {(s, d_pos - d_g1 - s): field.one()})
        numerators.append(G1 * mono)
    return H, numerators, ell
