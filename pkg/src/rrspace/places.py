"""Branches of a plane curve at a point, their parametrizations and valuations.

At a centred point the curve's affine equation factors over the algebraic
closure into irreducible branch factors.  The factorisation is computed by
a recursion that interleaves Weierstrass normalisation, Newton-polygon
edge splitting, Hensel lifting of coprime Newton-polynomial factors, and
blow-up / variable-swap steps for the remaining ramified pieces.  The
discrete steps of the recursion (a BranchTransform chain) are replayable,
which yields a parametrization x = phi(t), y = psi(t) by a uniformizer t
in every characteristic; the monic local factor of each branch is rebuilt
by walking the same chain upwards.

Valuations of polynomials along a branch are computed two ways: through
the resultant of the local factor with the polynomial (the canonical
normalisation, values in Z) and through the parametrization; agreement of
the two is the module's standing self-check.
"""

from dataclasses import dataclass
from math import inf
from random import Random

from .errors import (
    CenterNotOnCurveError,
    InternalError,
    PrecisionExhausted,
    PrecisionUnderflow,
)
from .gf import GF, UniPoly, build_extension, common_field, embed, factor_univariate
from .lifting import BiSeries, blowup_seriespoly, hensel_weighted, unit_monic_factor, weierstrass
from .newton import WeightedValuation, edge_weights, newton_polygon, theta_polynomial
from .polyring import (
    BiPoly,
    ProjPoint,
    SeriesPoly,
    TriHomog,
    TruncSeries,
    det_division_free,
)

INFINITE_VALUATION = inf

# chart permutations: original coordinate i is the chart coordinate sigma[i]
_CHART_PERMS = (
    (0, 1, 2),
    (2, 1, 0),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
)


_CAP_OVERRIDE = None


def set_precision_cap(value):
    """Global override of the per-curve precision cap (None restores it)."""
    global _CAP_OVERRIDE
    _CAP_OVERRIDE = value


def precision_cap(F: TriHomog) -> int:
    if _CAP_OVERRIDE is not None:
        return _CAP_OVERRIDE
    d = max(F.degree, 1)
    return 8 * d * d + 64


def _min_precision(F: TriHomog) -> int:
    # starting uniformizer precision; doubled on underflow up to the cap
    return max(4 * F.degree, 8)


def _perm_matrix(field, sigma):
    o, z = field.one(), field.zero()
    return [[o if sigma[r] == c else z for c in range(3)] for r in range(3)]


def chart_embed(F: TriHomog, chart_id: int, target_field) -> TriHomog:
    """The curve equation in the chart's coordinates over the target field."""
    Ft = F.map_coeffs(lambda c: embed(c, target_field), target_field)
    return Ft.substitute_linear(_perm_matrix(target_field, _CHART_PERMS[chart_id]))


def _chart_center(center: ProjPoint, chart_id: int):
    sigma = _CHART_PERMS[chart_id]
    new = [None] * 3
    for i in range(3):
        new[sigma[i]] = center.coords[i]
    return new


def choose_chart(F: TriHomog, center: ProjPoint):
    """First chart (in a fixed order) placing the centre in the affine plane
    with a local equation not divisible by the chart's x coordinate."""
    for chart_id in range(6):
        cc = _chart_center(center, chart_id)
        if cc[2].is_zero():
            continue
        zinv = cc[2].inverse()
        a, b = cc[0] * zinv, cc[1] * zinv
        f_chart = chart_embed(F, chart_id, center.field)
        f_cent = f_chart.dehomogenize("z").shift(a, b)
        if all(i > 0 for (i, _j) in f_cent.terms):
            continue  # x divides the local equation; try another chart
        return chart_id, (a, b), f_cent
    raise InternalError("no admissible chart for the centre")


# ----------------------------------------------------------------------
# Branch transform chains
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BranchTransform:
    """Replayable chain of branch-resolution steps, top to leaf.

    Steps are ('swap',) exchanging the local coordinates, and
    ('blowup', zeta, n) for the substitution y = x * (z + zeta) after
    dividing the local equation by x^n.
    """

    steps: tuple

    def signature(self):
        out = []
        for s in self.steps:
            if s[0] == "swap":
                out.append(("s",))
            else:
                out.append(("b", s[1].coeffs, s[2]))
        return tuple(out)


class _Branch:
    """Mutable branch record used during the recursion."""

    def __init__(self, steps, leaf, field):
        self.steps = steps          # list of chain steps, top to leaf
        self.leaf = leaf            # TruncSeries c with y = c(x) at the leaf
        self.field = field


# ----------------------------------------------------------------------
# The splitting recursion
# ----------------------------------------------------------------------

def _embed_series(s: TruncSeries, K) -> TruncSeries:
    return s.map_coeffs(lambda c: embed(c, K), K)


def _embed_seriespoly(f: SeriesPoly, K) -> SeriesPoly:
    return f.map_coeffs(lambda c: embed(c, K), K)


def _embed_bipoly(f: BiPoly, K) -> BiPoly:
    return f.map_coeffs(lambda c: embed(c, K), K)


def _embed_steps(steps, K):
    out = []
    for s in steps:
        if s[0] == "swap":
            out.append(s)
        else:
            out.append(("blowup", embed(s[1], K), s[2]))
    return out


def _split_any(fbs: BiSeries, fld, steps, state):
    """Split a not-yet-monic local series: Weierstrass, then recurse."""
    state["budget"] -= 1
    if state["budget"] < 0:
        raise InternalError("branch recursion exceeded its budget")
    u, g = weierstrass(fbs)
    return _split_monic(g, fld, steps, state)


def _split_monic(g: SeriesPoly, fld, steps, state):
    """Split a monic factor with g(0, y) = y^n into resolved branches."""
    state["budget"] -= 1
    if state["budget"] < 0:
        raise InternalError("branch recursion exceeded its budget")
    n = g.ydeg
    if n == 0:
        return []
    if n == 1:
        leaf = -g.coeff(0)
        return [_Branch(list(steps), leaf, fld)]
    polygon = newton_polygon(g)
    edges = polygon.edges()
    if not edges:
        # single vertex (n, 0) would mean y^n times a unit, impossible for
        # a squarefree curve; demand more precision instead of guessing
        raise PrecisionUnderflow("degenerate polygon at y-degree %d" % n)
    if len(edges) > 1:
        w1 = edge_weights(edges[0])
        u_bs, g_low = unit_monic_factor(g, w1)
        out = _split_monic(g_low, fld, steps, state)
        out.extend(_split_any(u_bs, fld, steps, state))
        return out
    edge = edges[0]
    w = edge_weights(edge)
    theta = theta_polynomial(g, edge)
    factors = factor_univariate(theta, state["rng"])
    if len(factors) > 1:
        head, mult = factors[0]
        g1 = _quasi_from_theta(head, mult, w, fld)
        rest = BiPoly.constant(fld, 1)
        for fac, m2 in factors[1:]:
            rest = rest * _quasi_from_theta(fac, m2, w, fld)
        gg, hh = hensel_weighted(g, g1, rest, w)
        out = _split_monic(gg, fld, steps, state)
        out.extend(_split_monic(hh, fld, steps, state))
        return out
    theta1, e = factors[0]
    if theta1.degree >= 2:
        # the Newton polynomial needs roots from an extension; enlarge the
        # working field so theta splits, then redo this node
        K2 = build_extension(GF(fld.p), fld.degree * theta1.degree)
        g2 = _embed_seriespoly(g, K2)
        return _split_monic(g2, K2, _embed_steps(steps, K2), state)
    # theta = (T - rho)^e: either a primitive edge (e = 1, still unresolved
    # when gx >= 2) or a ramified cluster; both resolve by blow-up / swap
    rho = -theta1.coeff(0)
    m = polygon.vertices[0][1]
    if n <= m:
        zeta = rho if n == m else fld.zero()
        g2 = blowup_seriespoly(g, zeta, n)
        return _split_monic(g2, fld, steps + [("blowup", zeta, n)], state)
    # n > m: swap the local coordinates and renormalise
    sw = BiSeries.from_seriespoly(g).swap()
    return _split_any(sw, fld, steps + [("swap",)], state)


def _quasi_from_theta(theta: UniPoly, mult: int, w: WeightedValuation, fld) -> BiPoly:
    """x^(gy*deg) * theta(y^gx / x^gy)^mult as a monic-in-y polynomial."""
    d = theta.degree
    terms = {}
    for k, c in enumerate(theta.coeffs):
        if not c.is_zero():
            terms[((d - k) * w.gy, k * w.gx)] = c
    base = BiPoly(fld, terms)
    out = BiPoly.constant(fld, 1)
    for _ in range(mult):
        out = out * base
    return out


# ----------------------------------------------------------------------
# Factor reconstruction and parametrization replay
# ----------------------------------------------------------------------

def _reconstruct_factor(branch: _Branch) -> SeriesPoly:
    """Walk the chain upwards, turning the leaf graph y = c(x) into the
    monic local factor at the original centre."""
    fld = branch.field
    c = branch.leaf
    fac = SeriesPoly(fld, [-c, TruncSeries.one(fld, inf)])
    for step in reversed(branch.steps):
        if step[0] == "swap":
            sw = BiSeries.from_seriespoly(fac).swap()
            _u, fac = weierstrass(sw)
        else:
            zeta = step[1]
            k = fac.ydeg
            prec = fac.prec
            bp = fac.to_bipoly()
            out = {}
            one = fld.one()
            # z^b coefficient c_b(x) -> c_b(x) * x^(k-b) * (y - zeta*x)^b
            lin = BiPoly(fld, {(0, 1): one, (1, 0): -zeta})
            lin_pows = [BiPoly.constant(fld, 1)]
            for _ in range(k):
                lin_pows.append(lin_pows[-1] * lin)
            acc = BiPoly.zero(fld)
            for (a, b), cc in bp.terms.items():
                acc = acc + BiPoly(fld, {(a + k - b, 0): cc}) * lin_pows[b]
            fac = SeriesPoly.from_bipoly(acc, prec)
            # restore the exact monic leading coefficient
            coeffs = list(fac.coeffs)
            while len(coeffs) < k + 1:
                coeffs.append(TruncSeries(fld, [], prec))
            coeffs[k] = TruncSeries.one(fld, inf)
            fac = SeriesPoly(fld, coeffs)
    return fac


def _replay_parametrization(branch: _Branch):
    fld = branch.field
    if branch.leaf.prec < 2:
        raise PrecisionUnderflow("leaf precision too small to replay")
    # at the leaf the independent coordinate is the uniformizer itself
    X = TruncSeries.x(fld, inf)
    Y = branch.leaf
    for step in reversed(branch.steps):
        if step[0] == "swap":
            X, Y = Y, X
        else:
            zeta = step[1]
            Y = X * (Y + TruncSeries(fld, [zeta], inf))
    return X, Y


def _normalize_tame(phi: TruncSeries, psi: TruncSeries, ram: int):
    """For char not dividing ram, rescale the uniformizer so phi = c*t^ram."""
    fld = phi.field
    if ram % fld.p == 0 or ram == 1:
        return phi, psi
    c = phi.coeff(ram)
    work = phi.prec - ram
    if work < 2:
        return phi, psi
    unit = TruncSeries(
        fld, [phi.coeff(ram + k) / c for k in range(int(work))], work
    )
    root = unit.nth_root_unit(ram)
    from .polyring import series_reverse_unit

    sigma = series_reverse_unit(root)
    phi_new = TruncSeries(
        fld, [fld.zero()] * ram + [c], min(phi.prec, sigma.prec + ram)
    )
    psi_new = psi.truncate(sigma.prec).compose(sigma)
    return phi_new, psi_new


# ----------------------------------------------------------------------
# Places
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """One analytic branch of the curve at a centre.

    phi and psi are the centred expansions of the chart's affine
    coordinates in a uniformizer t: chart-x = a + phi(t), chart-y =
    b + psi(t) with (a, b) the affine centre.
    """

    curve: TriHomog
    chart_id: int
    center: ProjPoint
    affine_center: tuple
    field: object
    branch_index: int
    ram_index: int
    local_factor: SeriesPoly
    transform: BranchTransform
    phi: TruncSeries
    psi: TruncSeries
    origin: object = None  # the place from the analysis field, if embedded

    @property
    def prec(self):
        return min(self.phi.prec, self.psi.prec)

    def key(self):
        return (self.curve.key(), self.center.field, self.center.coords, self.branch_index)

    def refined(self, prec, factor_prec=None) -> "Place":
        """The same place with parametrization certified to at least prec
        (and, when requested, the local factor to factor_prec).

        Refinement always reruns the analysis over the original analysis
        field (branch numbering is only canonical there) and re-embeds.
        """
        if self.prec >= prec and (
            factor_prec is None or self.local_factor.prec >= factor_prec
        ):
            return self
        base = self.origin or self
        ref = local_branches(
            base.curve, base.center, prec=prec, factor_prec=factor_prec
        ).places[base.branch_index]
        if ref.field == self.field:
            return ref
        return ref.embedded(common_field([ref.field, self.field]))

    def embedded(self, K) -> "Place":
        if K == self.field:
            return self
        return Place(
            curve=self.curve,
            chart_id=self.chart_id,
            center=self.center.embedded(K),
            affine_center=tuple(embed(c, K) for c in self.affine_center),
            field=K,
            branch_index=self.branch_index,
            ram_index=self.ram_index,
            local_factor=_embed_seriespoly(self.local_factor, K),
            transform=self.transform,
            phi=_embed_series(self.phi, K),
            psi=_embed_series(self.psi, K),
            origin=self.origin or self,
        )

    def __eq__(self, other):
        return isinstance(other, Place) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"P({self.center},{self.branch_index})"


@dataclass
class LocalFactorization:
    """F(x, y, 1) centred at a point, as unit times monic branch factors."""

    curve: TriHomog
    center: ProjPoint
    chart_id: int
    field: object
    unit: SeriesPoly
    factors: list  # [(SeriesPoly, Place)]

    @property
    def places(self):
        return [p for (_f, p) in self.factors]


_BRANCH_CACHE: dict = {}
_ORDER_REGISTRY: dict = {}


def _sort_signature(ram, psi, phi, depth, chain_sig):
    return (
        ram,
        tuple(psi.coeff(i).coeffs for i in range(depth)),
        tuple(phi.coeff(i).coeffs for i in range(depth)),
        chain_sig,
    )


def local_branches(F: TriHomog, center: ProjPoint, prec=None, rng=None, factor_prec=None) -> LocalFactorization:
    """All branches of the curve at the centre, with parametrizations.

    prec asks for uniformizer precision of the expansions; factor_prec
    additionally asks for x-adic precision of the monic local factors
    (left low by default, since rebuilding factors through deep blow-up
    towers is much costlier than extending the expansions).  Retries with
    doubled carrier precision on internal underflow, up to the configured
    cap; results are cached per (curve, centre).
    """
    center = center.minimized(F.field.degree)
    if center.field.degree % F.field.degree != 0:
        center = center.embedded(common_field([F.field, center.field]))
    FK = F.map_coeffs(lambda c: embed(c, center.field), center.field)
    if not FK(center.x, center.y, center.z).is_zero():
        raise CenterNotOnCurveError(f"{center} does not lie on the curve")
    want = max(prec or 0, _min_precision(F))
    want_factor = max(factor_prec or 0, F.degree + 3)
    cap = precision_cap(F)
    if max(want, want_factor) > cap:
        raise PrecisionExhausted(
            f"requested precision {max(want, want_factor)} exceeds the cap {cap}"
        )
    cache_key = (F.key(), center.field, center.coords)
    hit = _BRANCH_CACHE.get(cache_key)
    if hit is not None and hit[0] >= want and hit[1] >= want_factor:
        return hit[2]
    rng = rng or Random(0)
    N = max(want, _min_precision(F))
    last_err = None
    # the carrier precision may far exceed the uniformizer cap: every
    # blow-up and swap in a resolution tower spends x-adic digits
    while N <= 16 * cap:
        try:
            result = _local_branches_at(F, center, N, want, want_factor, rng)
            ach_tau = min(
                (int(p.prec) for p in result.places if p.prec != inf), default=want
            )
            ach_fac = min(
                (
                    int(p.local_factor.prec)
                    for p in result.places
                    if p.local_factor.prec != inf
                ),
                default=want_factor,
            )
            _BRANCH_CACHE[cache_key] = (
                max(want, ach_tau),
                max(want_factor, ach_fac),
                result,
            )
            return result
        except PrecisionUnderflow as err:
            last_err = err
            N *= 2
    raise PrecisionExhausted(
        f"branch analysis at {center} exceeded the precision cap ({last_err})"
    )


def _local_branches_at(F, center, N, want_tau, want_factor, rng):
    chart_id, (a, b), f_cent = choose_chart(F, center)
    fld0 = center.field
    if not f_cent.coeff(0, 0).is_zero():
        raise CenterNotOnCurveError("centred equation has nonzero constant term")
    carrier = BiSeries(
        f_cent, ((1, 0, N),), f_cent.degy()
    )
    state = {"budget": 16 * (F.degree + 2) ** 2, "rng": rng}
    branches = _split_any(carrier, fld0, [], state)
    if not branches:
        raise InternalError("no branches found at a curve point")

    # one common field per centre
    K = common_field([br.field for br in branches] + [fld0])
    for br in branches:
        br.field = K
        br.leaf = _embed_series(br.leaf, K)
        br.steps = _embed_steps(br.steps, K)

    data = []
    for br in branches:
        fac = _reconstruct_factor(br)
        phi, psi = _replay_parametrization(br)
        try:
            ram = phi.valuation()
        except PrecisionUnderflow:
            raise PrecisionUnderflow("ramification index not certified")
        if ram == inf:
            raise InternalError("vertical branch escaped the chart filter")
        phi, psi = _normalize_tame(phi, psi, ram)
        if min(phi.prec, psi.prec) < want_tau:
            raise PrecisionUnderflow("parametrization below requested precision")
        if fac.prec != inf and fac.prec < max(want_factor, ram + 1):
            raise PrecisionUnderflow("local factor below requested precision")
        data.append([ram, fac, phi.truncate(want_tau + ram), psi.truncate(want_tau + ram), br])

    sort_depth = _min_precision(F)
    data.sort(
        key=lambda d: _sort_signature(
            d[0], d[3], d[2], sort_depth, BranchTransform(tuple(d[4].steps)).signature()
        )
    )

    # keep branch numbering consistent with the first analysis of this centre
    reg_key = (F.key(), center.field, center.coords)
    sigs = [
        _sort_signature(d[0], d[3], d[2], sort_depth, BranchTransform(tuple(d[4].steps)).signature())
        for d in data
    ]
    known = _ORDER_REGISTRY.get(reg_key)
    if known is None:
        _ORDER_REGISTRY[reg_key] = sigs
    elif known != sigs:
        raise InternalError("branch ordering changed between refinements")

    factors = []
    f_chart_K = chart_embed(F, chart_id, K)
    aK, bK = embed(a, K), embed(b, K)
    center_K = center.embedded(K)
    for idx, (ram, fac, phi, psi, br) in enumerate(data):
        place = Place(
            curve=F,
            chart_id=chart_id,
            center=center_K,
            affine_center=(aK, bK),
            field=K,
            branch_index=idx,
            ram_index=ram,
            local_factor=fac,
            transform=BranchTransform(tuple(br.steps)),
            phi=phi,
            psi=psi,
        )
        factors.append((fac, place))

    # reconstruction invariant: unit * product of factors == centred equation
    f_cent_K = f_chart_K.dehomogenize("z").shift(aK, bK)
    prod = SeriesPoly.from_bipoly(BiPoly.constant(K, 1))
    for fac, _pl in factors:
        prod = prod * fac
    centred = SeriesPoly.from_bipoly(f_cent_K, N)
    unit, rem = centred.divrem_monic(prod)
    if not rem.is_zero():
        raise PrecisionUnderflow("branch product does not reproduce the centre")
    if unit.coeff(0).coeff(0).is_zero():
        raise InternalError("unit of the local factorization vanishes")
    return LocalFactorization(F, center, chart_id, K, unit, factors)


def parametrize(place: Place, prec: int):
    """Absolute affine expansions (chart coordinates) to the given precision."""
    pl = place.refined(prec)
    a, b = pl.affine_center
    phi_abs = pl.phi.truncate(prec) + TruncSeries(pl.field, [a], inf)
    psi_abs = pl.psi.truncate(prec) + TruncSeries(pl.field, [b], inf)
    return phi_abs, psi_abs


# ----------------------------------------------------------------------
# Valuations along a place
# ----------------------------------------------------------------------

def _local_polynomial(place: Place, A: TriHomog) -> BiPoly:
    """A dehomogenised in the place's chart and centred at the place."""
    A_chart = chart_embed(A, place.chart_id, place.field)
    a, b = place.affine_center
    return A_chart.dehomogenize("z").shift(a, b)


def place_valuation(place: Place, A: TriHomog):
    """Valuation of a homogeneous polynomial along the place.

    Computed as ord_x of the resultant of the local branch factor with the
    centred polynomial, doubling the precision until the order is
    certified; beyond the intersection-number cap the valuation is
    reported as INFINITE_VALUATION.
    """
    if A.is_zero():
        return INFINITE_VALUATION
    cap = A.degree * place.curve.degree + 4
    K = common_field([place.field, A.field])
    pl = place.embedded(K)
    for _attempt in range(3):
        a_loc = _local_polynomial(pl, A)
        if a_loc.is_zero():
            return INFINITE_VALUATION
        res = _resultant_against_factor(pl.local_factor, a_loc)
        nz = [i for i, c in enumerate(res.coeffs) if not c.is_zero()]
        if nz:
            return nz[0]
        if res.prec == inf or res.prec > cap:
            return INFINITE_VALUATION
        # one refinement to the intersection-number target settles it: the
        # refined factor is certified past the cap, so the next resultant
        # either shows a term or proves the valuation infinite
        pl = pl.refined(2, factor_prec=cap + place.curve.degree + 6)
    raise InternalError("valuation refinement did not converge")


def _resultant_against_factor(fac: SeriesPoly, a_loc: BiPoly) -> TruncSeries:
    """ord-preserving resultant: determinant of multiplication by a_loc in
    the quotient by the monic local factor."""
    fld = fac.field
    n = fac.ydeg
    a_sp = SeriesPoly.from_bipoly(a_loc)
    abar = a_sp.divrem_monic(fac)[1] if a_sp.ydeg >= n else a_sp
    if n == 0:
        return TruncSeries.one(fld, inf)
    cols = []
    cur = abar
    for _ in range(n):
        cols.append([cur.coeff(j) for j in range(n)])
        # multiply by y modulo fac
        shifted = SeriesPoly(fld, [TruncSeries(fld, [], inf)] + list(cur.coeffs))
        cur = shifted.divrem_monic(fac)[1]
    mat = [[cols[c][r] for c in range(n)] for r in range(n)]
    return det_division_free(
        mat, TruncSeries(fld, [], inf), TruncSeries.one(fld, inf)
    )


def valuation_via_parametrization(place: Place, A: TriHomog):
    """t-order of A along the branch parametrization; the cross-check twin
    of place_valuation."""
    if A.is_zero():
        return INFINITE_VALUATION
    cap = A.degree * place.curve.degree + 4
    K = common_field([place.field, A.field])
    pl = place.embedded(K)
    for _attempt in range(3):
        a_loc = _local_polynomial(pl, A)
        if a_loc.is_zero():
            return INFINITE_VALUATION
        series = a_loc.eval_series(pl.phi, pl.psi)
        try:
            v = series.valuation()
            return v if v != inf else INFINITE_VALUATION
        except PrecisionUnderflow:
            if series.prec > cap:
                return INFINITE_VALUATION
            pl = pl.refined(cap + 6)
    raise InternalError("valuation refinement did not converge")


def conjugate_center(center: ProjPoint, q: int) -> ProjPoint:
    return ProjPoint(center.field, [c ** q for c in center.coords])
