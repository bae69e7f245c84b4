"""Divisors on a plane curve: intersection, valuations, adjoint, genus.

A divisor is a finite integer combination of places.  Global divisors of
polynomials are assembled from curve intersection (computed through a
resultant after restoring genericity by seeded random shears) and from
the local valuations of the places module.  The coefficientwise partial
order, the positive part and the degree follow the usual conventions.
"""

import math
from dataclasses import dataclass
from math import inf
from random import Random

from .errors import (
    AdjointParityError,
    CurveMismatchError,
    CurveNotIrreducibleError,
    DegreeMismatchError,
    InternalError,
    NotCoprimeError,
    WildDerivativeZeroError,
)
from .gf import GF, UniPoly, build_extension, common_field, embed, factor_univariate, find_roots
from .places import (
    INFINITE_VALUATION,
    Place,
    chart_embed,
    local_branches,
    place_valuation,
)
from .polyring import (
    ProjPoint,
    TriHomog,
    matmul3,
    resultant_y,
    shear_a1_matrix,
    shear_a2_matrix,
)


# ----------------------------------------------------------------------
# Divisors
# ----------------------------------------------------------------------

def _place_sort_key(place: Place):
    return (
        tuple(c.coeffs for c in place.center.coords),
        place.branch_index,
    )


class Divisor:
    """Sparse integer combination of places of one curve.

    All places are embedded into one common field on construction so that
    equal places compare equal regardless of where they were computed.
    """

    __slots__ = ("curve", "field", "coeffs")

    def __init__(self, curve: TriHomog, entries=None):
        self.curve = curve
        entries = dict(entries or {})
        fields = [p.field for p in entries] or [curve.field]
        self.field = common_field(fields)
        coeffs = {}
        for place, mult in entries.items():
            if mult == 0:
                continue
            if place.curve.key() != curve.key():
                raise CurveMismatchError("place belongs to a different curve")
            p = place.embedded(self.field)
            coeffs[p] = coeffs.get(p, 0) + mult
        self.coeffs = {p: m for p, m in coeffs.items() if m != 0}

    @classmethod
    def zero(cls, curve):
        return cls(curve, {})

    def entries(self):
        """Deterministically ordered (place, multiplicity) pairs."""
        return sorted(self.coeffs.items(), key=lambda pm: _place_sort_key(pm[0]))

    def support(self):
        return [p for p, _m in self.entries()]

    def multiplicity(self, place: Place) -> int:
        p = place.embedded(self.field) if place.field != self.field else place
        for q, m in self.coeffs.items():
            if q == p:
                return m
        return 0

    def _binary(self, other, sign):
        if other.curve.key() != self.curve.key():
            raise CurveMismatchError("divisors on different curves")
        K = common_field([self.field, other.field])
        out = {}
        for p, m in self.coeffs.items():
            q = p.embedded(K)
            out[q] = out.get(q, 0) + m
        for p, m in other.coeffs.items():
            q = p.embedded(K)
            out[q] = out.get(q, 0) + sign * m
        return Divisor(self.curve, out)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return Divisor(self.curve, {p: -m for p, m in self.coeffs.items()})

    def positive_part(self):
        return Divisor(self.curve, {p: m for p, m in self.coeffs.items() if m > 0})

    def degree(self):
        return sum(self.coeffs.values())

    def leq(self, other):
        diff = other - self
        return all(m >= 0 for m in diff.coeffs.values())

    def __le__(self, other):
        return self.leq(other)

    def is_effective(self):
        return all(m >= 0 for m in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, Divisor) or other.curve.key() != self.curve.key():
            return False
        return (self - other).coeffs == {}

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for place, mult in self.entries():
            term = f"{abs(mult)}*P({place.center},{place.branch_index})"
            if not parts:
                parts.append(term if mult > 0 else "-" + term)
            else:
                parts.append(("+ " if mult > 0 else "- ") + term)
        return " ".join(parts)


# ----------------------------------------------------------------------
# Irreducibility sanity check
# ----------------------------------------------------------------------

_IRRED_CACHE: dict = {}


def _separable_monic_presentation(F: TriHomog, rng: Random):
    """A coordinate change making the affine equation monic and separable
    in y; returns the sheared affine polynomial, or None."""
    from .polyring import resultant_y, swap_matrix

    field = F.field
    candidates = [None, ("x", "y"), ("y", "z")]
    for perm in candidates:
        base = F if perm is None else F.substitute_linear(swap_matrix(field, *perm))
        for trial in range(40):
            if trial == 0:
                alpha = beta = field.zero()
            else:
                alpha, beta = field.random_element(rng), field.random_element(rng)
            lead = base(alpha, field.one(), beta)
            if lead.is_zero():
                continue
            sheared = base.substitute_linear(shear_a1_matrix(field, alpha, beta))
            f = (sheared * lead.inverse()).dehomogenize("z")
            fy = f.derivative("y")
            if fy.is_zero():
                break  # inseparable in y for every shear of this layout
            disc = resultant_y(f, fy)
            if not disc.is_zero():
                return f
    return None


def ensure_irreducible(F: TriHomog, rng: Random = None):
    """Decide absolute irreducibility of the curve equation.

    After a shear making the affine equation monic and separable in y, the
    fibre over a good abscissa splits into distinct roots in its splitting
    field; lifting them to series factors, a polynomial factor of the
    equation would be a product of a proper subset of the lifted factors
    with polynomial coefficients.  All subsets are tested by exact
    division, so a pass certifies absolute irreducibility and a hit
    certifies reducibility.
    """
    key = F.key()
    if key in _IRRED_CACHE:
        return
    if F.is_zero() or F.degree == 0:
        raise CurveNotIrreducibleError("curve equation is constant")
    d = F.degree
    if d == 1:
        _IRRED_CACHE[key] = True
        return
    if all(F.partial(v).is_zero() for v in "xyz"):
        raise CurveNotIrreducibleError("every partial vanishes: a p-th power")
    rng = rng or Random(1)
    f = _separable_monic_presentation(F, rng)
    if f is None:
        raise CurveNotIrreducibleError(
            "no separable direction found; the equation is not squarefree"
        )
    from .hensel_tools import irreducible_by_recombination

    if irreducible_by_recombination(f, rng):
        _IRRED_CACHE[key] = True
        return
    raise CurveNotIrreducibleError("the equation factors over an extension")


# ----------------------------------------------------------------------
# Intersection
# ----------------------------------------------------------------------

@dataclass
class IntersectionContext:
    """Coordinate change restoring genericity, plus the resultant data."""

    matrix: list          # composed change M with F_new = F(M . v)
    F_changed: TriHomog
    G_changed: TriHomog
    resultant_x: UniPoly  # R(x, 1) in the changed coordinates
    resultant_degree: int
    working_field: object


def _substitute(F: TriHomog, m):
    return F.substitute_linear(m)


def _eval_y_poly(F: TriHomog, x0, field) -> UniPoly:
    """F(x0, y, 1) as a univariate polynomial in y."""
    acc = {}
    for (i, j, k), c in F.terms.items():
        v = embed(c, field) * x0 ** i
        acc[j] = acc.get(j, field.zero()) + v
    n = max(acc) if acc else -1
    return UniPoly(field, [acc.get(j, field.zero()) for j in range(n + 1)])


def intersect(F: TriHomog, G: TriHomog, rng: Random = None):
    """All common projective zeros of two coprime curves.

    Draws seeded random shears until the genericity assumptions hold
    (growing the sampling field when it is too small), locates the common
    zeros by factoring the resultant, and maps them back to the original
    coordinates over one common working field.
    """
    rng = rng or Random(0)
    if F.degree < 1 or G.degree < 1:
        raise DegreeMismatchError("intersection needs two non-constant curves")
    base = common_field([F.field, G.field])
    FK = F.map_coeffs(lambda c: embed(c, base), base)
    GK = G.map_coeffs(lambda c: embed(c, base), base)

    samp_deg = 1
    attempts = 0
    while True:
        attempts += 1
        if attempts > 12:
            raise InternalError("could not restore genericity")
        Ks = build_extension(GF(base.p), base.degree * samp_deg)
        Fs = FK.map_coeffs(lambda c: embed(c, Ks), Ks)
        Gs = GK.map_coeffs(lambda c: embed(c, Ks), Ks)
        # first shear: make F monic in y of full degree (zero shear first,
        # to keep the intersection field as small as possible)
        ok = False
        for trial in range(25):
            if trial == 0:
                alpha = beta = Ks.zero()
            else:
                alpha, beta = Ks.random_element(rng), Ks.random_element(rng)
            if not Fs(alpha, Ks.one(), beta).is_zero():
                ok = True
                break
        if not ok:
            samp_deg += 1
            continue
        m1 = shear_a1_matrix(Ks, alpha, beta)
        F1 = _substitute(Fs, m1)
        F1 = F1 * F1.coeff((0, F1.degree, 0)).inverse()
        G1 = _substitute(Gs, m1)
        R1 = resultant_y(F1, G1)  # homogeneous BiPoly in (x, z)
        if R1.is_zero():
            raise NotCoprimeError("curves share a component")
        deg_R = R1.degree()
        # second shear: make R of full degree in x
        ok = False
        for trial in range(25):
            gamma = Ks.zero() if trial == 0 else Ks.random_element(rng)
            val = Ks.zero()
            for (i, j), c in R1.terms.items():
                val = val + c * gamma ** j
            if not val.is_zero():
                ok = True
                break
        if not ok:
            samp_deg += 1
            continue
        m2 = shear_a2_matrix(Ks, gamma)
        matrix = matmul3(m1, m2)
        F2 = _substitute(F1, m2)
        G2 = _substitute(G1, m2)
        R2 = resultant_y(F2, G2)
        rx = UniPoly(Ks, [R2.coeff(i, deg_R - i) for i in range(deg_R + 1)])
        if rx.degree != deg_R:
            samp_deg += 1
            continue
        break

    # split the resultant and collect the needed extension degrees
    factors = factor_univariate(rx, rng)
    ext_degrees = set()
    for fac, _m in factors:
        dK = Ks.degree * fac.degree
        Kroot = build_extension(GF(Ks.p), dK)
        for root in set(find_roots(fac, Kroot, rng)):
            gy = _eval_y_poly(F2, root, Kroot).gcd(_eval_y_poly(G2, root, Kroot))
            for gfac, _m2 in factor_univariate(gy, rng):
                ext_degrees.add(dK * gfac.degree)
    if not ext_degrees:
        raise InternalError("coprime non-constant curves must intersect")
    Kw = build_extension(GF(Ks.p), math.lcm(*ext_degrees))

    points = []
    seen = set()
    matrix_w = [[embed(c, Kw) for c in row] for row in matrix]
    for root in set(find_roots(rx, Kw, rng)):
        gy = _eval_y_poly(F2, root, Kw).gcd(_eval_y_poly(G2, root, Kw))
        for zy in set(find_roots(gy, Kw, rng)):
            pt = ProjPoint(Kw, [root, zy, Kw.one()]).apply_matrix(matrix_w)
            if pt not in seen:
                seen.add(pt)
                points.append(pt.minimized(base.degree))
    points.sort(key=lambda p: (p.field.degree, tuple(c.coeffs for c in p.coords)))
    if len(points) > F.degree * G.degree:
        raise InternalError("more intersection points than the degree bound")
    ctx = IntersectionContext(matrix, F2, G2, rx, deg_R, Kw)
    return ctx, points


# ----------------------------------------------------------------------
# Divisors of polynomials and functions
# ----------------------------------------------------------------------

def local_divisor(F: TriHomog, G: TriHomog, center: ProjPoint) -> Divisor:
    """Sum over the branches at the centre of the valuation of G."""
    need = common_field([F.field, G.field, center.field])
    if center.field != need:
        center = center.embedded(need)
    FK = F.map_coeffs(lambda c: embed(c, center.field), center.field)
    GK = G.map_coeffs(lambda c: embed(c, center.field), center.field)
    if not FK(center.x, center.y, center.z).is_zero():
        return Divisor.zero(F)
    if not GK(center.x, center.y, center.z).is_zero():
        return Divisor.zero(F)
    fac = local_branches(F, center)
    entries = {}
    for place in fac.places:
        w = place_valuation(place, G)
        if w == INFINITE_VALUATION:
            raise NotCoprimeError("polynomial vanishes on a whole branch")
        if w:
            entries[place] = w
    return Divisor(F, entries)


def global_divisor(F: TriHomog, G: TriHomog, rng: Random = None) -> Divisor:
    """Div(G) on the curve F = 0; its degree must be deg G * deg F."""
    ensure_irreducible(F)
    if G.degree == 0:
        if G.is_zero():
            raise NotCoprimeError("the zero polynomial has no divisor")
        return Divisor.zero(F)
    _ctx, points = intersect(F, G, rng)
    total = Divisor.zero(F)
    for pt in points:
        total = total + local_divisor(F, G, pt)
    if total.degree() != F.degree * G.degree:
        raise InternalError(
            "degree of Div(G) is %d, expected %d; internal precision bug"
            % (total.degree(), F.degree * G.degree)
        )
    return total


def divisor_of_function(F: TriHomog, A: TriHomog, B: TriHomog, rng: Random = None) -> Divisor:
    """Div(A/B) = Div(A) - Div(B) for same-degree numerator and denominator."""
    if A.degree != B.degree:
        raise DegreeMismatchError("function numerator and denominator degrees differ")
    return global_divisor(F, A, rng) - global_divisor(F, B, rng)


# ----------------------------------------------------------------------
# Singular locus, adjoint divisor, genus
# ----------------------------------------------------------------------

def singular_locus(F: TriHomog, rng: Random = None):
    """All points of the curve where the three partials vanish."""
    ensure_irreducible(F)
    partials = [F.partial(v) for v in "xyz"]
    nonzero = [P for P in partials if not P.is_zero()]
    if not nonzero:
        raise CurveNotIrreducibleError("all partial derivatives vanish")
    first = nonzero[0]
    if first.degree == 0:
        return []
    _ctx, points = intersect(F, first, rng)
    out = []
    for pt in points:
        vals = [
            P.map_coeffs(lambda c: embed(c, pt.field), pt.field)(pt.x, pt.y, pt.z)
            for P in partials
            if not P.is_zero()
        ]
        if all(v.is_zero() for v in vals):
            out.append(pt)
    return out


_ADJOINT_CACHE: dict = {}


def adjoint_divisor(F: TriHomog, rng: Random = None) -> Divisor:
    """The adjoint divisor, supported on the branches at singular points.

    At each branch the coefficient is w(F_y) - ord_t(phi'(t)) computed in
    the branch's chart, falling back to w(F_x) - ord_t(psi') when the
    chart's F_y vanishes identically; when both partials are usable the
    two expressions are checked to agree.
    """
    key = F.key()
    if key in _ADJOINT_CACHE:
        return _ADJOINT_CACHE[key]
    ensure_irreducible(F)
    entries = {}
    cap = F.degree * (F.degree - 1) + 4
    for pt in singular_locus(F, rng):
        fac = local_branches(F, pt)
        for place in fac.places:
            coeff = _adjoint_coefficient(F, place, cap)
            if coeff:
                entries[place] = coeff
    A = Divisor(F, entries)
    if not A.is_effective():
        raise InternalError("adjoint divisor must be effective")
    _ADJOINT_CACHE[key] = A
    return A


def _derivative_order(place: Place, which: str, cap: int):
    """Certified t-order of phi' or psi', refining as needed; None if it
    vanishes beyond the cap."""
    pl = place
    for _attempt in range(3):
        s = pl.phi if which == "phi" else pl.psi
        ds = s.derivative()
        for i, c in enumerate(ds.coeffs):
            if not c.is_zero():
                return i, pl
        if ds.prec == inf or ds.prec > cap:
            return None, pl
        pl = pl.refined(cap + 4)
    raise InternalError("derivative order refinement did not converge")


def _adjoint_coefficient(F: TriHomog, place: Place, cap: int) -> int:
    Fch = chart_embed(F, place.chart_id, place.field)
    Fy = Fch.partial("y")
    Fx = Fch.partial("x")
    val_phi, place = _derivative_order(place, "phi", cap)
    val_psi, place = _derivative_order(place, "psi", cap)
    if val_phi is None and val_psi is None:
        raise WildDerivativeZeroError(
            "both coordinate derivatives vanish along a branch"
        )
    via_y = via_x = None
    if not Fy.is_zero() and val_phi is not None:
        wfy = _chart_valuation(place, Fy)
        via_y = wfy - val_phi
    if not Fx.is_zero() and val_psi is not None:
        wfx = _chart_valuation(place, Fx)
        via_x = wfx - val_psi
    if via_y is not None and via_x is not None and via_y != via_x:
        raise InternalError(
            "adjoint coefficient mismatch: %s vs %s" % (via_y, via_x)
        )
    coeff = via_y if via_y is not None else via_x
    if coeff is None or coeff < 0:
        raise InternalError("adjoint coefficient could not be computed")
    return coeff


def _chart_valuation(place: Place, A_chart: TriHomog):
    """place_valuation for a polynomial already written in chart coordinates."""
    from .places import _resultant_against_factor

    if A_chart.is_zero():
        return INFINITE_VALUATION
    cap = A_chart.degree * place.curve.degree + 4
    pl = place
    for _attempt in range(3):
        a, b = pl.affine_center
        a_loc = A_chart.map_coeffs(lambda c: embed(c, pl.field), pl.field)
        a_loc = a_loc.dehomogenize("z").shift(a, b)
        if a_loc.is_zero():
            return INFINITE_VALUATION
        res = _resultant_against_factor(pl.local_factor, a_loc)
        nz = [i for i, c in enumerate(res.coeffs) if not c.is_zero()]
        if nz:
            return nz[0]
        if res.prec == inf or res.prec > cap:
            return INFINITE_VALUATION
        pl = pl.refined(2, factor_prec=cap + place.curve.degree + 6)
    raise InternalError("valuation refinement did not converge")


def genus(F: TriHomog, rng: Random = None) -> int:
    """((d-1)(d-2) - deg A)/2 for the adjoint divisor A and d = deg F."""
    ensure_irreducible(F)
    d = F.degree
    A = adjoint_divisor(F, rng)
    degA = A.degree()
    bound = (d - 1) * (d - 2)
    if degA % 2 != 0 or degA > bound:
        raise AdjointParityError(
            f"adjoint degree {degA} violates parity or the bound {bound}"
        )
    g = (bound - degA) // 2
    if g < 0:
        raise AdjointParityError("negative genus")
    return g
