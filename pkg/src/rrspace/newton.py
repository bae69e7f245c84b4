"""Weighted valuations, truncation operators, and Newton polygons.

A weighted valuation assigns val(x^a y^b) = gx*a + gy*b with gx >= 1 and
gcd(gx, gy) = 1; gy = 0 recovers the plain x-adic grading.  The Newton
polygon of f = sum f_i(x) y^i is the lower convex hull of the support
points (i, ord_x f_i); its edges carry quasi-homogeneous Newton
polynomials whose factorisations seed the lifting stage.
"""

from dataclasses import dataclass
from math import gcd, inf

from .errors import (
    EdgeNotOnPolygonError,
    PrecisionUnderflow,
    ZeroElementError,
    ZeroPolynomialError,
)
from .gf import UniPoly
from .polyring import BiPoly, SeriesPoly


@dataclass(frozen=True)
class WeightedValuation:
    """Weights (gamma_x, gamma_y) with gamma_x >= 1 and gcd = 1."""

    gx: int
    gy: int

    def __post_init__(self):
        if self.gx < 1 or self.gy < 0:
            raise ValueError("weights must satisfy gx >= 1, gy >= 0")
        if gcd(self.gx, self.gy) != 1:
            raise ValueError("weights must be coprime")

    def of(self, i: int, j: int) -> int:
        return self.gx * i + self.gy * j


def _certified_terms(a):
    """Yield ((i, j), coeff) over certified nonzero terms of a carrier."""
    if isinstance(a, BiPoly):
        yield from a.terms.items()
        return
    if isinstance(a, SeriesPoly):
        for j, s in enumerate(a.coeffs):
            for i, c in enumerate(s.coeffs):
                if not c.is_zero():
                    yield (i, j), c
        return
    raise TypeError(f"unsupported carrier {type(a)}")


def _unknown_region_min(a, w: WeightedValuation):
    """Smallest possible weighted valuation of an uncertified term (inf if none)."""
    if isinstance(a, BiPoly):
        return inf
    best = inf
    for j, s in enumerate(a.coeffs):
        if s.prec != inf:
            best = min(best, w.of(int(s.prec), j))
    return best


def wval(a, w: WeightedValuation):
    """Minimum weighted valuation over certified terms; inf for zero.

    Raises PRECISION_UNDERFLOW when the certified terms do not pin the
    minimum down (either none exist, or an uncertified term could be
    smaller).
    """
    best = inf
    for (i, j), _ in _certified_terms(a):
        v = w.of(i, j)
        if v < best:
            best = v
    unknown = _unknown_region_min(a, w)
    if best == inf:
        if unknown == inf:
            return inf
        raise PrecisionUnderflow("no certified term; valuation >= %s" % unknown)
    if best > unknown:
        raise PrecisionUnderflow("an uncertified term could have smaller weight")
    return best


def component(a, w: WeightedValuation, e: int) -> BiPoly:
    """The quasi-homogeneous component of weighted valuation exactly e."""
    field = a.field
    terms = {}
    for (i, j), c in _certified_terms(a):
        if w.of(i, j) == e:
            terms[(i, j)] = c
    return BiPoly(field, terms)


def slab(a, w: WeightedValuation, e: int, eta: int) -> BiPoly:
    """Terms with weighted valuation in [e, e + eta)."""
    field = a.field
    terms = {}
    for (i, j), c in _certified_terms(a):
        if e <= w.of(i, j) < e + eta:
            terms[(i, j)] = c
    return BiPoly(field, terms)


def initial_form(a, w: WeightedValuation) -> BiPoly:
    """All terms of minimal weighted valuation."""
    if isinstance(a, (BiPoly, SeriesPoly)) and a.is_zero():
        raise ZeroElementError("initial form of zero")
    return component(a, w, wval(a, w))


# ----------------------------------------------------------------------
# Newton polygons
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    """Lower border of the convex hull of support points, left to right."""

    vertices: tuple

    def edges(self):
        return [
            (self.vertices[k], self.vertices[k + 1])
            for k in range(len(self.vertices) - 1)
        ]

    def is_degenerate(self):
        return len(self.vertices) == 1

    def height_at_num_den(self, i):
        """Height of the polygon above abscissa i, as (num, den); None outside."""
        vs = self.vertices
        if i < vs[0][0] or i > vs[-1][0]:
            return None
        for (i0, j0), (i1, j1) in self.edges():
            if i0 <= i <= i1:
                return (j0 * (i1 - i0) + (j1 - j0) * (i - i0), i1 - i0)
        return (vs[0][1], 1)


def _lower_hull(points):
    """Monotone-chain lower hull; collinear interior points are dropped."""
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep only right turns (strict) for the lower border
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(f) -> NewtonPolygon:
    """Newton polygon of f in K[[x]][y] (SeriesPoly) or an exact BiPoly.

    Support points are (i, ord_x f_i).  A coefficient that vanishes to its
    finite precision is treated as absent, but only when that cannot
    change the polygon; otherwise PRECISION_UNDERFLOW is raised.
    """
    if isinstance(f, BiPoly):
        f = SeriesPoly.from_bipoly(f)
    if f.is_zero():
        raise ZeroPolynomialError("Newton polygon of zero")
    known = []
    unknown = []  # (i, precision lower bound)
    for i, s in enumerate(f.coeffs):
        if s.is_zero():
            if s.prec != inf:
                unknown.append((i, int(s.prec)))
            continue
        known.append((i, s.valuation()))
    if not known:
        raise PrecisionUnderflow("all coefficients vanish to precision")
    hull = _lower_hull(known)
    poly = NewtonPolygon(tuple(hull))
    lo, hi = hull[0][0], hull[-1][0]
    for i, bound in unknown:
        if i < lo or i > hi:
            raise PrecisionUnderflow(
                "support at y^%d unknown outside the certified polygon" % i
            )
        num, den = poly.height_at_num_den(i)
        if bound * den < num:
            raise PrecisionUnderflow(
                "coefficient of y^%d certified only to x^%d" % (i, bound)
            )
    return poly


def edge_weights(edge) -> WeightedValuation:
    """The coprime weights (gx, gy) for which the edge is isobaric."""
    (i0, j0), (i1, j1) = edge
    di, dj = i1 - i0, j0 - j1
    g = gcd(di, dj)
    if di <= 0:
        raise EdgeNotOnPolygonError("edge must increase in i")
    if g == 0:
        g = 1
    return WeightedValuation(di // g, dj // g)


def newton_polynomial(f, edge) -> BiPoly:
    """Quasi-homogeneous polynomial carried by one polygon edge.

    The result is sum over the integer lattice points (i, j) of the edge of
    the degree-j term of f_i times y^(i - i_left), where i_left is the
    abscissa of the edge's left endpoint.
    """
    if isinstance(f, BiPoly):
        f = SeriesPoly.from_bipoly(f)
    poly = newton_polygon(f)
    if tuple(edge) not in [tuple(e) for e in poly.edges()]:
        raise EdgeNotOnPolygonError(f"{edge} is not an edge of {poly.vertices}")
    (i0, j0), (i1, j1) = edge
    di, dj = i1 - i0, j1 - j0
    g = gcd(di, abs(dj)) if dj else di
    terms = {}
    for k in range(g + 1):
        i = i0 + k * (di // g)
        j = j0 + k * (dj // g)
        c = f.coeff(i).coeff(j)
        if not c.is_zero():
            terms[(j, i - i0)] = c
    return BiPoly(f.field, terms)


def theta_polynomial(f, edge) -> UniPoly:
    """The edge's Newton polynomial written as theta(T) with T = y^gx / x^gy.

    For an edge from (i0, j0) to (i1, j1) with weights (gx, gy) the lattice
    points are (i0 + k*gx, j0 - k*gy); theta has degree (i1 - i0) / gx.
    """
    if isinstance(f, BiPoly):
        f = SeriesPoly.from_bipoly(f)
    (i0, j0), (i1, j1) = edge
    w = edge_weights(edge)
    s = (i1 - i0) // w.gx
    coeffs = []
    for k in range(s + 1):
        i = i0 + k * w.gx
        j = j0 - k * w.gy
        coeffs.append(f.coeff(i).coeff(j))
    return UniPoly(f.field, coeffs)
