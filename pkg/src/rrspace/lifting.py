"""Hensel-style factorisation engines over truncated bivariate series.

All four engines advance one quasi-homogeneous slab per step:

* ``unit_monic_factor`` splits f into (unit-like series) * (monic in y),
  where the unit's initial form is a monomial in x;
* ``weierstrass`` is the x-adic special case with weights (n, 1);
* ``hensel_weighted`` lifts a coprime quasi-homogeneous factorisation of
  the initial form of a monic polynomial;
* ``hensel_classic`` is ``hensel_weighted`` for the weights (1, 0), i.e.
  plain x-adic lifting from a coprime split of f(0, y).

Precision is a slab count: after eta steps the product identity holds in
every slab of weighted valuation below val(f) + eta.
"""

from dataclasses import dataclass
from math import inf

from .errors import (
    HypothesisViolatedError,
    InternalError,
    NotCoprimeError,
    PreconditionViolatedError,
    PrecisionUnderflow,
    UnboundedInitialError,
)
from .gf import UniPoly
from .linalg import solve
from .newton import WeightedValuation, component
from .polyring import BiPoly, SeriesPoly, TruncSeries, resultant_y


# ----------------------------------------------------------------------
# Truncated bivariate series carrier
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BiSeries:
    """Sparse bivariate terms plus a description of what is certified.

    Every stored term is exact.  Each constraint (cx, cy, b) asserts that
    any *missing or uncertified* term (i, j) satisfies cx*i + cy*j >= b.
    ``ydeg_bound`` bounds the y-degree of the true series (math.inf when
    unknown).  An empty constraint tuple means the series is exact.
    """

    poly: BiPoly
    constraints: tuple = ()
    ydeg_bound: float = inf

    @classmethod
    def from_seriespoly(cls, f: SeriesPoly):
        prec = f.prec
        cons = ((1, 0, int(prec)),) if prec != inf else ()
        return cls(f.to_bipoly(), cons, f.ydeg if f.ydeg >= 0 else 0)

    @classmethod
    def exact(cls, poly: BiPoly):
        return cls(poly, (), poly.degy() if not poly.is_zero() else 0)

    def depth(self, w: WeightedValuation):
        """Certified weighted depth: every term of valuation < depth is exact."""
        if not self.constraints:
            return inf
        best = inf
        for (cx, cy, b) in self.constraints:
            m = _min_wval_over_halfplane(cx, cy, b, self.ydeg_bound, w)
            best = min(best, m)
        return best

    def swap(self):
        return BiSeries(
            self.poly.swap(),
            tuple((cy, cx, b) for (cx, cy, b) in self.constraints),
            inf,
        )

    def truncated_below(self, w: WeightedValuation, depth):
        terms = {
            e: c for e, c in self.poly.terms.items() if w.of(*e) < depth
        }
        return BiPoly(self.poly.field, terms)


def _min_wval_over_halfplane(cx, cy, b, ydeg_bound, w: WeightedValuation):
    """min of w over {(i, j) >= 0 : cx*i + cy*j >= b, j <= ydeg_bound}."""
    if b <= 0:
        return 0
    if cx == 0:
        # region is j >= ceil(b / cy), any i; minimised at i = 0
        j0 = -(-b // cy)
        if ydeg_bound != inf and j0 > ydeg_bound:
            return inf  # no term can live there
        return w.of(0, j0)
    best = inf
    if cy == 0:
        jmax = 0
    else:
        jmax = (b + cy - 1) // cy
    if ydeg_bound != inf:
        jmax = min(jmax, int(ydeg_bound))
    for j in range(jmax + 1):
        rest = b - cy * j
        i = 0 if rest <= 0 else (rest + cx - 1) // cx
        best = min(best, w.of(i, j))
    return best


def _as_biseries(f):
    if isinstance(f, BiSeries):
        return f
    if isinstance(f, SeriesPoly):
        return BiSeries.from_seriespoly(f)
    if isinstance(f, BiPoly):
        return BiSeries.exact(f)
    raise TypeError(f"unsupported carrier {type(f)}")


@dataclass(frozen=True)
class LiftResult:
    """Factors together with the certified depth of the product identity."""

    factors: tuple
    weights: WeightedValuation
    certified_depth: int

    def __iter__(self):
        return iter(self.factors)


# ----------------------------------------------------------------------
# Helpers on exact bivariate pieces
# ----------------------------------------------------------------------

def _wval_certified(f: BiSeries, w: WeightedValuation):
    """Weighted valuation of the true series, certified against the depth."""
    best, depth = inf, f.depth(w)
    for (i, j) in f.poly.terms:
        best = min(best, w.of(i, j))
    if best >= depth:
        raise PrecisionUnderflow("valuation not certified at current depth")
    return best


def _shift_x_down(p: BiPoly, m: int) -> BiPoly:
    out = {}
    for (i, j), c in p.terms.items():
        if i < m:
            raise InternalError("expected divisibility by x^%d" % m)
        out[(i - m, j)] = c
    return BiPoly(p.field, out)


def _stamp_seriespoly(acc: BiPoly, w: WeightedValuation, base_val: int, eta: int, ydeg: int) -> SeriesPoly:
    """Package slab-accumulated terms as a SeriesPoly with honest precision.

    Terms of the true factor with weighted valuation >= base_val + eta are
    unknown, so the coefficient of y^b is certified below
    (base_val + eta - gy*b) / gx.
    """
    field = acc.field
    cols = {}
    for (i, j), c in acc.terms.items():
        cols.setdefault(j, {})[i] = c
    coeffs = []
    for b in range(ydeg + 1):
        missing_from = base_val + eta - w.gy * b
        prec_b = (missing_from + w.gx - 1) // w.gx
        if b == ydeg:
            # monic leading coefficient is exact by construction
            coeffs.append(TruncSeries(field, [field.one()], inf))
            continue
        if prec_b < 1:
            raise PrecisionUnderflow("factor coefficient entirely uncertified")
        col = cols.get(b, {})
        n = max(col) + 1 if col else 0
        coeffs.append(
            TruncSeries(field, [col.get(i, field.zero()) for i in range(n)], prec_b)
        )
    return SeriesPoly(field, coeffs)


def _is_quasi_homogeneous(p: BiPoly, w: WeightedValuation):
    vals = {w.of(i, j) for (i, j) in p.terms}
    return len(vals) <= 1


def _monic_in_y(p: BiPoly):
    d = p.degy()
    if d < 0:
        return False
    lead = [e for e in p.terms if e[1] == d]
    return lead == [(0, d)] and p.terms[(0, d)].is_one()


# ----------------------------------------------------------------------
# Unit times monic extraction
# ----------------------------------------------------------------------

def unit_monic_factor(f, w: WeightedValuation, prec=None) -> LiftResult:
    """Split f = u * g with g monic in y and in(u) a monomial c*x^m.

    g has y-degree deg_y(in(f)); the returned LiftResult holds (u, g) with
    u a BiSeries and g a SeriesPoly, and certifies the product identity in
    every slab of weighted valuation below its certified_depth.
    """
    f = _as_biseries(f)
    field = f.poly.field
    v0 = _wval_certified(f, w)
    in_f = component(f.poly, w, v0)
    if w.gy == 0 and f.ydeg_bound == inf:
        raise UnboundedInitialError("initial form may have unbounded y-degree")
    n = in_f.degy()
    lead_terms = [e for e in in_f.terms if e[1] == n]
    if len(lead_terms) != 1:
        raise InternalError("initial form has no unique leading y-term")
    m = lead_terms[0][0]
    c = in_f.terms[(m, n)]
    c_inv = c.inverse()
    u1 = BiPoly(field, {(m, 0): c})
    g1 = _shift_x_down(in_f * c_inv, m)
    if not _monic_in_y(g1):
        raise InternalError("monic part extraction failed")

    avail = f.depth(w) - v0
    eta = avail if prec is None else min(prec, avail)
    if eta == inf:
        raise PrecisionUnderflow("an exact input needs an explicit slab count")
    eta = int(eta)
    if eta < 1:
        raise PrecisionUnderflow("no certified slab available")

    u_acc, g_acc = u1, g1
    prod = u_acc * g_acc
    val_u1 = w.of(m, 0)
    for k in range(1, eta):
        delta = component(f.poly, w, v0 + k) - component(prod, w, v0 + k)
        if delta.is_zero():
            continue
        u_t, r = delta.divrem_y(g1)
        g_t = _shift_x_down(r * c_inv, m)
        prod = prod + u_t * g_acc + u_acc * g_t + u_t * g_t
        u_acc = u_acc + u_t
        g_acc = g_acc + g_t
    g_sp = _stamp_seriespoly(g_acc, w, v0 - val_u1, eta, n)
    # the unit cofactor is a genuine series in y, so its y-degree is unknown
    u_bs = BiSeries(u_acc, ((w.gx, w.gy, val_u1 + eta),), inf)
    return LiftResult((u_bs, g_sp), w, v0 + eta)


def weierstrass(f, n=None, prec=None) -> LiftResult:
    """Weierstrass normalisation f = u * g, u a unit, g monic of y-degree n.

    n defaults to the y-order of f(0, y); the hypothesis ord_x f_i > 0 for
    i < n and ord_x f_n = 0 is checked.
    """
    f = _as_biseries(f)
    # y-order of f(0, y), certified: a constraint (cx, cy, b) leaves the
    # x = 0 column uncertified only from j >= b / cy on (exact when cy = 0).
    certified_j = inf
    for (cx, cy, b) in f.constraints:
        if cy > 0:
            certified_j = min(certified_j, -(-b // cy))
    column = sorted(j for (i, j) in f.poly.terms if i == 0)
    found = column[0] if column else None
    if found is None or found >= certified_j:
        if certified_j == inf:
            raise HypothesisViolatedError("f(0, y) vanishes; x divides f")
        raise PrecisionUnderflow("y-order of f(0, y) not certified")
    if n is None:
        n = found
    elif n != found:
        raise HypothesisViolatedError(
            "valuation pattern gives y-order %s, not %s" % (found, n)
        )
    if n == 0:
        raise HypothesisViolatedError("f is a unit; nothing to normalise")
    w = WeightedValuation(n, 1)
    result = unit_monic_factor(f, w, prec)
    u, g = result.factors
    if u.poly.coeff(0, 0).is_zero():
        raise InternalError("Weierstrass unit vanishes at the origin")
    return LiftResult((u, g), w, result.certified_depth)


# ----------------------------------------------------------------------
# Quasi-homogeneous Hensel lifting
# ----------------------------------------------------------------------

def _isobaric_monomials(val, ydeg_max, w: WeightedValuation):
    """Monomials (a, b) with w(a, b) = val and 0 <= b < ydeg_max."""
    out = []
    for b in range(ydeg_max):
        rest = val - w.gy * b
        if rest < 0:
            if w.gy > 0:
                continue
            break
        if rest % w.gx == 0:
            out.append((rest // w.gx, b))
    return out


def _bezout_monomial_identity(g1: BiPoly, h1: BiPoly, w: WeightedValuation):
    """u, v, m with u*g1 + v*h1 = x^m, all quasi-homogeneous.

    Exists exactly when g1 and h1 are coprime; m is read off the resultant,
    which for coprime quasi-homogeneous inputs is a monomial in x.
    """
    field = g1.field
    res = resultant_y(g1, h1)
    if res.is_zero():
        raise NotCoprimeError("initial factors share a root")
    nz = [i for i, c in enumerate(res.coeffs) if not c.is_zero()]
    if len(nz) != 1:
        raise InternalError("resultant of quasi-homogeneous pair not a monomial")
    m = nz[0]
    val_u = w.gx * m - _exact_wval(h1, w)
    val_v = w.gx * m - _exact_wval(g1, w)
    if val_u < 0 or val_v < 0:
        raise InternalError("negative cofactor valuation")
    u_monos = _isobaric_monomials(val_u, h1.degy(), w)
    v_monos = _isobaric_monomials(val_v, g1.degy(), w)
    target_monos = _isobaric_monomials(w.gx * m, g1.degy() + h1.degy() + 1, w)
    row_index = {e: r for r, e in enumerate(target_monos)}
    rows = [[field.zero()] * (len(u_monos) + len(v_monos)) for _ in target_monos]
    for col, (a, b) in enumerate(u_monos):
        prod = BiPoly(field, {(a, b): field.one()}) * g1
        for e, c in prod.terms.items():
            rows[row_index[e]][col] = c
    for col, (a, b) in enumerate(v_monos):
        prod = BiPoly(field, {(a, b): field.one()}) * h1
        for e, c in prod.terms.items():
            rows[row_index[e]][len(u_monos) + col] = c
    rhs = [field.one() if e == (m, 0) else field.zero() for e in target_monos]
    sol = solve(rows, rhs, field)
    u = BiPoly(field, {e: sol[i] for i, e in enumerate(u_monos)})
    v = BiPoly(field, {e: sol[len(u_monos) + i] for i, e in enumerate(v_monos)})
    return u, v, m


def _exact_wval(p: BiPoly, w: WeightedValuation):
    return min(w.of(i, j) for (i, j) in p.terms)


def hensel_weighted(f, g1: BiPoly, h1: BiPoly, w: WeightedValuation, prec=None):
    """Lift in(f) = g1 * h1 to f = g * h with in(g) = g1 and in(h) = h1.

    f must be monic in y with wval(f) = wval(y^(deg_y f)); g1 and h1 must
    be coprime quasi-homogeneous monic factors of the initial form.
    Returns a LiftResult holding two SeriesPoly factors.
    """
    fbs = _as_biseries(f)
    field = fbs.poly.field
    n = fbs.poly.degy()
    if not _monic_in_y(fbs.poly):
        raise PreconditionViolatedError("f must be monic in y")
    if not (_is_quasi_homogeneous(g1, w) and _is_quasi_homogeneous(h1, w)):
        raise PreconditionViolatedError("initial factors must be quasi-homogeneous")
    if not (_monic_in_y(g1) and _monic_in_y(h1)):
        raise PreconditionViolatedError("initial factors must be monic in y")
    v0 = _wval_certified(fbs, w)
    if v0 != w.of(0, n):
        raise PreconditionViolatedError("wval(f) must equal wval(y^n)")
    in_f = component(fbs.poly, w, v0)
    if not (g1 * h1 - in_f).is_zero():
        raise PreconditionViolatedError("in(f) != g1 * h1")
    u, v, m = _bezout_monomial_identity(g1, h1, w)

    avail = fbs.depth(w) - v0
    eta = avail if prec is None else min(prec, avail)
    if eta == inf:
        raise PrecisionUnderflow("an exact input needs an explicit slab count")
    eta = int(eta)
    if eta < 1:
        raise PrecisionUnderflow("no certified slab available")

    g_acc, h_acc = g1, h1
    prod = g_acc * h_acc
    for k in range(1, eta):
        delta = component(fbs.poly, w, v0 + k) - component(prod, w, v0 + k)
        if delta.is_zero():
            continue
        g_t = _shift_x_down((v * delta).divrem_y(g1)[1], m)
        h_t = _shift_x_down((u * delta).divrem_y(h1)[1], m)
        prod = prod + g_t * h_acc + g_acc * h_t + g_t * h_t
        g_acc = g_acc + g_t
        h_acc = h_acc + h_t
    g_sp = _stamp_seriespoly(g_acc, w, _exact_wval(g1, w), eta, g1.degy())
    h_sp = _stamp_seriespoly(h_acc, w, _exact_wval(h1, w), eta, h1.degy())
    return LiftResult((g_sp, h_sp), w, v0 + eta)


def hensel_classic(f, g0: UniPoly, h0: UniPoly, prec: int):
    """Classic x-adic Hensel: f(0, y) = g0 * h0 lifts to f = g * h mod x^prec.

    This is exactly the weighted engine for the weights (1, 0).
    """
    field = g0.field
    w = WeightedValuation(1, 0)
    g1 = BiPoly(field, {(0, j): c for j, c in enumerate(g0.coeffs) if not c.is_zero()})
    h1 = BiPoly(field, {(0, j): c for j, c in enumerate(h0.coeffs) if not c.is_zero()})
    return hensel_weighted(f, g1, h1, w, prec)


# ----------------------------------------------------------------------
# Blow-up of a monic series polynomial (used by the branch recursion)
# ----------------------------------------------------------------------

def blowup_seriespoly(g: SeriesPoly, zeta, n: int) -> SeriesPoly:
    """g(x, x*(z + zeta)) / x^n as a SeriesPoly in (x, z).

    Requires the (1,1)-weighted valuation of g to be at least n; the
    x-adic precision drops by n.
    """
    prec = g.prec
    if prec != inf and prec - n < 1:
        raise PrecisionUnderflow("blow-up exhausts the x-adic precision")
    bp = g.to_bipoly().blowup(zeta, n)
    return SeriesPoly.from_bipoly(bp, prec if prec == inf else prec - n)
