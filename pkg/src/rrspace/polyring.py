"""Polynomial and truncated-series carriers for the curve pipeline.

Four carriers cover everything downstream:

* ``TruncSeries``   -- univariate power series known modulo x^prec,
* ``SeriesPoly``    -- polynomial in y with TruncSeries coefficients,
* ``BiPoly``        -- exact sparse bivariate polynomial,
* ``TriHomog``      -- exact sparse homogeneous trivariate polynomial.

Precision is tracked conservatively: every arithmetic result carries the
x-adic precision that is actually certified by its operands, never more.
Resultants follow the convention that Res(f, g) is the determinant of
(u, v) |-> u f + v g on the coefficient columns; see ``resultant_y``.
"""

import math
from math import comb, inf

from .errors import (
    DegreeMismatchError,
    DegreeTooSmallError,
    DivisionByZeroError,
    InternalError,
    NotAUnitError,
    NotMonicError,
    PrecisionUnderflow,
    ZeroPolynomialError,
)
from .gf import FieldElement, UniPoly, embed, format_element


# ----------------------------------------------------------------------
# Truncated univariate power series
# ----------------------------------------------------------------------

class TruncSeries:
    """A power series known modulo x^prec (prec may be math.inf for exact)."""

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field, coeffs, prec=inf):
        if prec != inf and prec < 1:
            raise PrecisionUnderflow("series precision must be at least 1")
        if prec != inf:
            coeffs = list(coeffs)[: int(prec)]
        else:
            coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @classmethod
    def from_ints(cls, field, ints, prec=inf):
        return cls(field, [field.element(c) for c in ints], prec)

    @classmethod
    def zero(cls, field, prec=inf):
        return cls(field, [], prec)

    @classmethod
    def one(cls, field, prec=inf):
        return cls(field, [field.one()], prec)

    @classmethod
    def x(cls, field, prec=inf):
        return cls(field, [field.zero(), field.one()], prec)

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def is_zero(self):
        """True when every certified coefficient vanishes."""
        return not self.coeffs

    def valuation(self):
        """x-adic order of the first certified nonzero term.

        Returns math.inf for an exact zero and raises PrecisionUnderflow
        when the series is zero to its (finite) precision, since the true
        order is then merely known to be >= prec.
        """
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        if self.prec == inf:
            return inf
        raise PrecisionUnderflow("series is zero to precision %s" % self.prec)

    def val_lower(self):
        """A certified lower bound for the valuation (prec when all zero)."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return self.prec

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return TruncSeries(self.field, self.coeffs, prec)

    def __add__(self, other):
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        n = max(len(self.coeffs), len(other.coeffs))
        if prec != inf:
            n = min(n, int(prec))
        return TruncSeries(
            self.field, [self.coeff(i) + other.coeff(i) for i in range(n)], prec
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __neg__(self):
        return TruncSeries(self.field, [-c for c in self.coeffs], self.prec)

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, (FieldElement, int)):
            return TruncSeries(self.field, [self.field.element(other)], inf)
        raise TypeError(f"cannot combine TruncSeries with {type(other)}")

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            c = self.field.element(other)
            return TruncSeries(self.field, [a * c for a in self.coeffs], self.prec)
        other = self._coerce(other)
        prec = min(self.prec + other.val_lower(), other.prec + self.val_lower())
        if self.is_zero() and self.prec == inf:
            return TruncSeries(self.field, [], prec)
        if other.is_zero() and other.prec == inf:
            return TruncSeries(self.field, [], prec)
        bound = len(self.coeffs) + len(other.coeffs) - 1
        if prec != inf:
            bound = min(bound, int(prec))
        out = [self.field.zero()] * max(bound, 0)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= bound:
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.field, out, prec)

    __rmul__ = __mul__

    def shift_up(self, k):
        """Multiply by x^k."""
        prec = self.prec if self.prec == inf else self.prec + k
        return TruncSeries(self.field, [self.field.zero()] * k + list(self.coeffs), prec)

    def shift_down(self, k):
        """Divide by x^k; the k lowest certified coefficients must vanish."""
        for i in range(min(k, len(self.coeffs))):
            if not self.coeffs[i].is_zero():
                raise DivisionByZeroError("series not divisible by x^%d" % k)
        prec = self.prec if self.prec == inf else self.prec - k
        if prec != inf and prec < 1:
            raise PrecisionUnderflow("precision exhausted by x-power division")
        return TruncSeries(self.field, list(self.coeffs[k:]), prec)

    def invert_unit(self, prec=None):
        """Multiplicative inverse of a series with nonzero constant term."""
        if self.coeff(0).is_zero():
            raise NotAUnitError("constant term vanishes")
        prec = self.prec if prec is None else min(prec, self.prec)
        if prec == inf:
            raise PrecisionUnderflow("an inverse needs a finite target precision")
        n = int(prec)
        c0_inv = self.coeff(0).inverse()
        out = [self.field.zero()] * n
        out[0] = c0_inv
        for k in range(1, n):
            acc = self.field.zero()
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeff(i) * out[k - i]
            out[k] = -acc * c0_inv
        return TruncSeries(self.field, out, n)

    def compose(self, inner):
        """self(inner) for inner with valuation >= 1."""
        if not inner.is_zero() and inner.val_lower() < 1:
            raise PrecisionUnderflow("composition needs positive valuation")
        v = max(inner.val_lower(), 1)
        prec = min(self.prec * v if self.prec != inf else inf, inner.prec)
        acc = TruncSeries(self.field, [], prec)
        for c in reversed(self.coeffs):
            acc = acc * inner + TruncSeries(self.field, [c], inf)
        return acc.truncate(prec)

    def derivative(self):
        prec = self.prec if self.prec == inf else max(self.prec - 1, 1)
        return TruncSeries(
            self.field,
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
            prec,
        )

    def nth_root_unit(self, n):
        """The n-th root with constant term 1 (characteristic must not divide n)."""
        if not self.coeff(0).is_one():
            raise NotAUnitError("n-th root normalised for constant term 1")
        if n % self.field.p == 0:
            raise NotAUnitError("characteristic divides the root order")
        prec = self.prec
        if prec == inf:
            raise PrecisionUnderflow("n-th root needs a finite precision")
        r = TruncSeries.one(self.field, prec)
        n_inv = self.field.element(n).inverse()
        for _ in range(int(prec)):
            # Newton step r <- r - (r^n - s) / (n r^(n-1))
            rn1 = TruncSeries.one(self.field, prec)
            for _ in range(n - 1):
                rn1 = rn1 * r
            err = rn1 * r - self
            if err.is_zero():
                break
            r = r - err * rn1.invert_unit(prec) * n_inv
        return r

    def agrees(self, other, upto):
        return all(self.coeff(i) == other.coeff(i) for i in range(upto))

    def map_coeffs(self, fn, field=None):
        return TruncSeries(field or self.field, [fn(c) for c in self.coeffs], self.prec)

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and other.field == self.field
            and other.prec == self.prec
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs, self.prec))

    def __repr__(self):
        return format_series(self, "x")


def format_series(s: TruncSeries, var: str) -> str:
    parts = []
    for i, c in enumerate(s.coeffs):
        if c.is_zero():
            continue
        cs = format_element(c)
        if i == 0:
            parts.append(cs)
        else:
            v = var if i == 1 else f"{var}^{i}"
            if c.is_one():
                parts.append(v)
            else:
                parts.append(f"({cs})*{v}" if "+" in cs else f"{cs}*{v}")
    if s.prec != inf:
        parts.append(f"O({var}^{int(s.prec)})")
    return " + ".join(parts) if parts else "0"


def series_reverse_unit(u: TruncSeries) -> TruncSeries:
    """sigma with sigma(t) * u(sigma(t)) = t, for u a unit with u(0) = 1.

    In other words the compositional inverse of t |-> t * u(t), returned to
    the precision of u.
    """
    if not u.coeff(0).is_one():
        raise NotAUnitError("reversion normalised for constant term 1")
    prec = u.prec
    if prec == inf:
        raise PrecisionUnderflow("reversion needs a finite precision")
    field = u.field
    t = TruncSeries.x(field, prec)
    sigma = t
    for _ in range(int(prec)):
        new_sigma = t * u.compose(sigma).invert_unit(prec)
        if new_sigma.coeffs == sigma.coeffs:
            break
        sigma = new_sigma
    return sigma


# ----------------------------------------------------------------------
# Polynomials in y with series coefficients
# ----------------------------------------------------------------------

class SeriesPoly:
    """Element of K[[x]][y] with coefficientwise x-adic precision."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero() and coeffs[-1].prec == inf:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_bipoly(cls, bp: "BiPoly", prec=inf):
        cols = {}
        for (i, j), c in bp.terms.items():
            cols.setdefault(j, {})[i] = c
        ydeg = max(cols) if cols else -1
        coeffs = []
        for j in range(ydeg + 1):
            col = cols.get(j, {})
            n = max(col) + 1 if col else 0
            coeffs.append(
                TruncSeries(
                    bp.field,
                    [col.get(i, bp.field.zero()) for i in range(n)],
                    prec,
                )
            )
        return cls(bp.field, coeffs)

    @classmethod
    def from_unipoly_in_y(cls, f: UniPoly, prec=inf):
        return cls(f.field, [TruncSeries(f.field, [c], prec) for c in f.coeffs])

    @property
    def ydeg(self):
        return len(self.coeffs) - 1

    @property
    def prec(self):
        return min((c.prec for c in self.coeffs), default=inf)

    def coeff(self, j) -> TruncSeries:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return TruncSeries(self.field, [], inf)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def is_monic(self):
        lead = self.coeff(self.ydeg)
        return len(lead.coeffs) == 1 and lead.coeffs[0].is_one()

    def truncate(self, prec):
        return SeriesPoly(self.field, [c.truncate(prec) for c in self.coeffs])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly(self.field, [self.coeff(j) + other.coeff(j) for j in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly(self.field, [self.coeff(j) - other.coeff(j) for j in range(n)])

    def __neg__(self):
        return SeriesPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (TruncSeries, FieldElement, int)):
            return SeriesPoly(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            prec = min(self.prec, other.prec)
            return SeriesPoly(self.field, [TruncSeries(self.field, [], prec)])
        out = [TruncSeries(self.field, [], inf)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return SeriesPoly(self.field, out)

    __rmul__ = __mul__

    def divrem_monic(self, divisor: "SeriesPoly"):
        """(q, r) with self = q * divisor + r and deg_y r < deg_y divisor."""
        if not divisor.is_monic():
            raise NotMonicError("divisor must be monic in y")
        n = divisor.ydeg
        rem = list(self.coeffs)
        if len(rem) <= n:
            return SeriesPoly(self.field, []), self
        q = [TruncSeries(self.field, [], inf)] * (len(rem) - n)
        for shift in range(len(rem) - n - 1, -1, -1):
            c = rem[shift + n]
            q[shift] = c
            if c.is_zero():
                continue
            for j in range(n + 1):
                rem[shift + j] = rem[shift + j] - c * divisor.coeff(j)
        return SeriesPoly(self.field, q), SeriesPoly(self.field, rem[:n])

    def eval_y(self, s: TruncSeries) -> TruncSeries:
        acc = TruncSeries(self.field, [], inf)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def at_x_zero(self) -> UniPoly:
        """The polynomial f(0, y); each coefficient's constant term is certified."""
        return UniPoly(self.field, [c.coeff(0) for c in self.coeffs])

    def derivative_y(self):
        return SeriesPoly(
            self.field,
            [self.coeffs[j] * j for j in range(1, len(self.coeffs))],
        )

    def to_bipoly(self) -> "BiPoly":
        terms = {}
        for j, c in enumerate(self.coeffs):
            for i, v in enumerate(c.coeffs):
                if not v.is_zero():
                    terms[(i, j)] = v
        return BiPoly(self.field, terms)

    def map_coeffs(self, fn, field=None):
        return SeriesPoly(field or self.field, [c.map_coeffs(fn, field) for c in self.coeffs])

    def agrees(self, other, upto):
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(j).agrees(other.coeff(j), upto) for j in range(n))

    def __eq__(self, other):
        return (
            isinstance(other, SeriesPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(self.ydeg, -1, -1):
            c = self.coeff(j)
            if c.is_zero() and c.prec == inf:
                continue
            cs = format_series(c, "x")
            if j == 0:
                parts.append(f"({cs})")
            else:
                yv = "y" if j == 1 else f"y^{j}"
                parts.append(f"({cs})*{yv}")
        return " + ".join(parts) if parts else "0"


# ----------------------------------------------------------------------
# Exact sparse bivariate polynomials
# ----------------------------------------------------------------------

class BiPoly:
    """Sparse exact polynomial in two variables over a finite field."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        self.field = field
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    @classmethod
    def from_ints(cls, field, int_terms):
        return cls(field, {e: field.element(c) for e, c in int_terms.items()})

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(0, 0): field.element(c)})

    def coeff(self, i, j):
        return self.terms.get((i, j), self.field.zero())

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def degx(self):
        return max((i for i, _ in self.terms), default=-1)

    def degy(self):
        return max((j for _, j in self.terms), default=-1)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, self.field.zero()) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return BiPoly(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return BiPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            c = self.field.element(other)
            return BiPoly(self.field, {e: v * c for e, v in self.terms.items()})
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                s = out.get(e, self.field.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return BiPoly(self.field, out)

    __rmul__ = __mul__

    def __call__(self, a, b):
        acc = self.field.zero()
        pow_a, pow_b = {0: self.field.one()}, {0: self.field.one()}

        def p(table, base, e):
            if e not in table:
                table[e] = p(table, base, e - 1) * base
            return table[e]

        for (i, j), c in self.terms.items():
            acc = acc + c * p(pow_a, a, i) * p(pow_b, b, j)
        return acc

    def eval_series(self, sx: TruncSeries, sy: TruncSeries) -> TruncSeries:
        """Substitute two series for the variables."""
        field = self.field
        prec = min(sx.prec, sy.prec)
        acc = TruncSeries(field, [], prec if self.terms else inf)
        pow_x = {0: TruncSeries.one(field, inf)}
        pow_y = {0: TruncSeries.one(field, inf)}

        def p(table, base, e):
            while e not in table:
                m = max(table)
                table[m + 1] = table[m] * base
            return table[e]

        for (i, j), c in sorted(self.terms.items()):
            acc = acc + p(pow_x, sx, i) * p(pow_y, sy, j) * c
        return acc

    def y_coeffs(self):
        """Coefficients of powers of y, as univariate polynomials in x."""
        cols = {}
        for (i, j), c in self.terms.items():
            cols.setdefault(j, {})[i] = c
        ydeg = max(cols) if cols else -1
        out = []
        for j in range(ydeg + 1):
            col = cols.get(j, {})
            n = max(col) + 1 if col else 0
            out.append(UniPoly(self.field, [col.get(i, self.field.zero()) for i in range(n)]))
        return out

    @classmethod
    def from_y_coeffs(cls, field, unipolys):
        terms = {}
        for j, u in enumerate(unipolys):
            for i, c in enumerate(u.coeffs):
                if not c.is_zero():
                    terms[(i, j)] = c
        return cls(field, terms)

    def swap(self):
        return BiPoly(self.field, {(j, i): c for (i, j), c in self.terms.items()})

    def shift(self, a, b):
        """Substitute x -> x + a, y -> y + b."""
        cur = self
        if not self.field.element(a).is_zero():
            cur = BiPoly.from_y_coeffs(
                self.field, [u.shift(self.field.element(a)) for u in cur.y_coeffs()]
            )
        if not self.field.element(b).is_zero():
            cur = BiPoly.from_y_coeffs(
                self.field, [u.shift(self.field.element(b)) for u in cur.swap().y_coeffs()]
            ).swap()
        return cur

    def blowup(self, zeta, n):
        """g(x, x*(z + zeta)) / x^n, which must be polynomial."""
        field = self.field
        zeta = field.element(zeta)
        out = {}
        for (i, j), c in self.terms.items():
            # x^i * x^j * (z + zeta)^j
            for l in range(j + 1):
                coeff = c * field.element(comb(j, l)) * zeta ** (j - l)
                if coeff.is_zero():
                    continue
                e = (i + j - n, l)
                if e[0] < 0:
                    raise InternalError("blow-up division is not exact")
                s = out.get(e, field.zero()) + coeff
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return BiPoly(field, out)

    def derivative(self, var):
        out = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i > 0:
                out[(i - 1, j)] = out.get((i - 1, j), self.field.zero()) + c * i
            elif var == "y" and j > 0:
                out[(i, j - 1)] = out.get((i, j - 1), self.field.zero()) + c * j
        return BiPoly(self.field, out)

    def divrem_y(self, divisor: "BiPoly"):
        """Division in y by a divisor whose leading y-coefficient is 1."""
        dcoeffs = divisor.y_coeffs()
        n = len(dcoeffs) - 1
        if n < 0 or not (dcoeffs[-1].degree == 0 and dcoeffs[-1].coeff(0).is_one()):
            raise NotMonicError("divisor must be monic in y")
        rem = self.y_coeffs()
        if len(rem) <= n:
            return BiPoly.zero(self.field), self
        q = [UniPoly(self.field, []) for _ in range(len(rem) - n)]
        for shift in range(len(rem) - n - 1, -1, -1):
            c = rem[shift + n]
            q[shift] = c
            if c.is_zero():
                continue
            for j in range(n + 1):
                rem[shift + j] = rem[shift + j] - c * dcoeffs[j]
        return (
            BiPoly.from_y_coeffs(self.field, q),
            BiPoly.from_y_coeffs(self.field, rem[:n]),
        )

    def map_coeffs(self, fn, field=None):
        return BiPoly(field or self.field, {e: fn(c) for e, c in self.terms.items()})

    def key(self):
        return (self.field, tuple(sorted((e, c.coeffs) for e, c in self.terms.items())))

    def __eq__(self, other):
        return (
            isinstance(other, BiPoly)
            and other.field == self.field
            and other.terms == self.terms
        )

    def __repr__(self):
        return format_bipoly(self, "x", "y")


def format_bipoly(f: BiPoly, vx: str, vy: str) -> str:
    if not f.terms:
        return "0"
    parts = []
    for (i, j) in sorted(f.terms, key=lambda e: (-e[1], -e[0])):
        c = f.terms[(i, j)]
        cs = format_element(c)
        mono = []
        if i:
            mono.append(vx if i == 1 else f"{vx}^{i}")
        if j:
            mono.append(vy if j == 1 else f"{vy}^{j}")
        if not mono:
            parts.append(cs)
        elif c.is_one():
            parts.append("*".join(mono))
        else:
            head = f"({cs})" if "+" in cs else cs
            parts.append("*".join([head] + mono))
    return " + ".join(parts)


# ----------------------------------------------------------------------
# Homogeneous trivariate polynomials and projective points
# ----------------------------------------------------------------------

_CHARTS = ("z", "y", "x")

# chart c: the original coordinates expressed in chart coordinates
# (u, v, 1): for chart 'z' the original triple is (u, v, 1); for chart
# 'y' it is (u, 1, v); for chart 'x' it is (1, u, v).
_CHART_POSITIONS = {"z": (0, 1, 2), "y": (0, 2, 1), "x": (1, 2, 0)}


class TriHomog:
    """Sparse homogeneous polynomial in x, y, z."""

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field, degree, terms):
        terms = {e: c for e, c in terms.items() if not c.is_zero()}
        for (i, j, k) in terms:
            if i + j + k != degree:
                raise DegreeMismatchError("non-homogeneous term")
        self.field = field
        self.degree = degree
        self.terms = terms

    @classmethod
    def from_ints(cls, field, degree, int_terms):
        return cls(field, degree, {e: field.element(c) for e, c in int_terms.items()})

    @classmethod
    def from_terms_auto(cls, field, terms):
        degree = max((sum(e) for e in terms), default=0)
        return cls(field, degree, terms)

    def coeff(self, e):
        return self.terms.get(e, self.field.zero())

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise DegreeMismatchError("cannot add different degrees")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, self.field.zero()) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return TriHomog(self.field, self.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TriHomog(self.field, self.degree, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            c = self.field.element(other)
            return TriHomog(self.field, self.degree, {e: v * c for e, v in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = out.get(e, self.field.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return TriHomog(self.field, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __call__(self, a, b, c):
        f = self.field
        acc = f.zero()
        for (i, j, k), coeff in self.terms.items():
            acc = acc + coeff * a ** i * b ** j * c ** k
        return acc

    def partial(self, var):
        idx = "xyz".index(var)
        out = {}
        for e, c in self.terms.items():
            if e[idx] > 0:
                ne = list(e)
                ne[idx] -= 1
                d = c * e[idx]
                if not d.is_zero():
                    out[tuple(ne)] = out.get(tuple(ne), self.field.zero()) + d
        return TriHomog(self.field, max(self.degree - 1, 0), out)

    def substitute_linear(self, matrix):
        """F(M . v) for a 3x3 matrix of field elements acting on (x, y, z)."""
        f = self.field
        rows = [
            TriHomog(f, 1, {(1, 0, 0): matrix[r][0], (0, 1, 0): matrix[r][1], (0, 0, 1): matrix[r][2]})
            for r in range(3)
        ]
        pow_cache = [{0: None} for _ in range(3)]

        def power(r, e):
            if e == 0:
                return TriHomog(f, 0, {(0, 0, 0): f.one()})
            if e not in pow_cache[r]:
                pow_cache[r][e] = power(r, e - 1) * rows[r]
            return pow_cache[r][e]

        acc = TriHomog(f, self.degree, {})
        for (i, j, k), c in self.terms.items():
            term = power(0, i) * power(1, j) * power(2, k) * c
            acc = acc + term
        return acc

    def dehomogenize(self, chart="z") -> BiPoly:
        """Affine restriction; chart 'z' yields F(x, y, 1), chart 'y' yields
        F(x, 1, z) in variables (x, z), chart 'x' yields F(1, y, z) in (y, z)."""
        iu, iv, _ = _CHART_POSITIONS[chart]
        out = {}
        for e, c in self.terms.items():
            key = (e[iu], e[iv])
            s = out.get(key, self.field.zero()) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return BiPoly(self.field, out)

    def map_coeffs(self, fn, field=None):
        return TriHomog(field or self.field, self.degree, {e: fn(c) for e, c in self.terms.items()})

    def key(self):
        return (self.field, self.degree, tuple(sorted((e, c.coeffs) for e, c in self.terms.items())))

    def __eq__(self, other):
        return (
            isinstance(other, TriHomog)
            and other.field == self.field
            and other.terms == self.terms
            and (other.degree == self.degree or not self.terms)
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j, k) in sorted(self.terms, key=lambda e: (-e[1], -e[0], -e[2])):
            c = self.terms[(i, j, k)]
            cs = format_element(c)
            mono = []
            for exp, var in ((i, "x"), (j, "y"), (k, "z")):
                if exp == 1:
                    mono.append(var)
                elif exp > 1:
                    mono.append(f"{var}^{exp}")
            if not mono:
                parts.append(cs)
            elif c.is_one():
                parts.append("*".join(mono))
            else:
                head = f"({cs})" if "+" in cs else cs
                parts.append("*".join([head] + mono))

        return " + ".join(parts)


def homogenize(f: BiPoly, d: int, field=None) -> TriHomog:
    """z^d * f(x/z, y/z); DEGREE_TOO_SMALL if d is below the total degree."""
    field = field or f.field
    if d < f.degree():
        raise DegreeTooSmallError(f"degree {d} below total degree {f.degree()}")
    terms = {}
    for (i, j), c in f.terms.items():
        terms[(i, j, d - i - j)] = c
    return TriHomog(field, d, terms)


def dehomogenize(F: TriHomog, chart="z") -> BiPoly:
    return F.dehomogenize(chart)


class ProjPoint:
    """Projective point with coordinates scaled so the last nonzero one is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        coords = [field.element(c) for c in coords]
        if all(c.is_zero() for c in coords):
            raise ZeroPolynomialError("(0:0:0) is not a projective point")
        scale = None
        for c in reversed(coords):
            if not c.is_zero():
                scale = c.inverse()
                break
        self.field = field
        self.coords = tuple(c * scale for c in coords)

    @property
    def x(self):
        return self.coords[0]

    @property
    def y(self):
        return self.coords[1]

    @property
    def z(self):
        return self.coords[2]

    def is_affine(self):
        return self.coords[2].is_one()

    def embedded(self, target):
        if target == self.field:
            return self
        return ProjPoint(target, [embed(c, target) for c in self.coords])

    def minimized(self, floor_degree=1):
        """The same point over the smallest field containing its coordinates.

        floor_degree keeps the result over (an extension of) a prescribed
        base field, e.g. the coefficient field of a curve.
        """
        from math import lcm

        from .gf import GF, project_to_subfield, subfield_degree

        k = self.field.degree
        if k == 1:
            return self
        d = floor_degree
        for c in self.coords:
            d = lcm(d, subfield_degree(c))
        if d == k:
            return self
        sub = GF(self.field.p, d)
        return ProjPoint(sub, [project_to_subfield(c, sub) for c in self.coords])

    def apply_matrix(self, matrix):
        f = self.field
        new = []
        for r in range(3):
            acc = f.zero()
            for c in range(3):
                acc = acc + matrix[r][c] * self.coords[c]
            new.append(acc)
        return ProjPoint(f, new)

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and other.field == self.field
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return "(" + ":".join(format_element(c) for c in self.coords) + ")"


# ----------------------------------------------------------------------
# Coordinate changes
# ----------------------------------------------------------------------

def identity_matrix(field):
    o, z = field.one(), field.zero()
    return [[o, z, z], [z, o, z], [z, z, o]]


def shear_a1_matrix(field, alpha, beta):
    """x -> x + alpha*y, z -> z + beta*y."""
    o, z = field.one(), field.zero()
    a, b = field.element(alpha), field.element(beta)
    return [[o, a, z], [z, o, z], [z, b, o]]


def shear_a2_matrix(field, gamma):
    """z -> z + gamma*x."""
    o, z = field.one(), field.zero()
    g = field.element(gamma)
    return [[o, z, z], [z, o, z], [g, z, o]]


def translate_matrix(field, a, b):
    """Move (a : b : 1) to the origin of the affine chart: x -> x + a z, y -> y + b z."""
    o, z = field.one(), field.zero()
    return [[o, z, field.element(a)], [z, o, field.element(b)], [z, z, o]]


def swap_matrix(field, v1, v2):
    m = identity_matrix(field)
    i, j = "xyz".index(v1), "xyz".index(v2)
    m[i], m[j] = m[j], m[i]
    return m


def matmul3(a, b):
    f_zero = a[0][0] - a[0][0]
    return [
        [sum((a[r][k] * b[k][c] for k in range(3)), f_zero) for c in range(3)]
        for r in range(3)
    ]


def matrix_inverse3(m, field):
    rows = [list(m[r]) + [field.one() if c == r else field.zero() for c in range(3)] for r in range(3)]
    from .linalg import rref

    red, pivots = rref(rows, field)
    if pivots != [0, 1, 2]:
        raise InternalError("singular coordinate change")
    return [r[3:] for r in red]


def coord_change(F: TriHomog, params, kind: str) -> TriHomog:
    """Exact coordinate substitutions used to restore genericity assumptions.

    kind 'shear_A1' uses params (alpha, beta): x -> x + alpha*y, z -> z + beta*y.
    kind 'shear_A2' uses params (gamma,): z -> z + gamma*x.
    kind 'translate' uses params (a, b): moves (a : b : 1) to (0 : 0 : 1).
    kind 'swap' uses params (v1, v2): exchanges two of the variables.
    """
    field = F.field
    if kind == "shear_A1":
        m = shear_a1_matrix(field, params[0], params[1])
    elif kind == "shear_A2":
        m = shear_a2_matrix(field, params[0])
    elif kind == "translate":
        m = translate_matrix(field, params[0], params[1])
    elif kind == "swap":
        m = swap_matrix(field, params[0], params[1])
    else:
        raise ValueError(f"unknown coordinate change {kind!r}")
    return F.substitute_linear(m)


# ----------------------------------------------------------------------
# Resultants
# ----------------------------------------------------------------------

def _sylvester_columns(fc, gc):
    """Columns of the map (u, v) |-> u f + v g on coefficient vectors.

    fc, gc are coefficient lists in the division variable (low first);
    the matrix has deg g columns built from f followed by deg f columns
    built from g, and rows indexed by y^0 ... y^(deg f + deg g - 1).
    """
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    cols = []
    for shift in range(n):
        col = [None] * size
        for i, c in enumerate(fc):
            col[shift + i] = c
        cols.append(col)
    for shift in range(m):
        col = [None] * size
        for i, c in enumerate(gc):
            col[shift + i] = c
        cols.append(col)
    return cols, size


def det_division_free(mat, zero, one):
    """Determinant by memoised minor expansion; no divisions performed."""
    n = len(mat)
    if n == 0:
        return one
    full = (1 << n) - 1
    memo = {}

    def rec(row, colmask):
        if row == n:
            return one
        key = colmask
        if key in memo:
            return memo[key]
        acc = zero
        sign = 1
        for c in range(n):
            bit = 1 << c
            if not (colmask & bit):
                continue
            entry = mat[row][c]
            if entry is not None:
                term = entry * rec(row + 1, colmask & ~bit)
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[key] = acc
        return acc

    return rec(0, full)


def det_bareiss(mat, one_poly):
    """Fraction-free determinant for entries in an integral domain.

    Entries must support +, -, *, divmod with exact division at the points
    Bareiss guarantees it (UniPoly does).
    """
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return one_poly
    sign = 1
    prev = one_poly
    for k in range(n - 1):
        if a[k][k].is_zero():
            sel = None
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    sel = r
                    break
            if sel is None:
                return one_poly - one_poly  # zero of the ring
            a[k], a[sel] = a[sel], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                if not r.is_zero():
                    raise InternalError("Bareiss division not exact")
                a[i][j] = q
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return result if sign > 0 else -result


def resultant_y(f, g, with_cofactors=False):
    """Resultant with respect to y under the (u, v) |-> u f + v g convention.

    Accepts two BiPoly (exact; returns a UniPoly in x), two SeriesPoly
    (returns a TruncSeries with the certified precision), or two TriHomog
    (returns the homogeneous resultant in (x, z) as a BiPoly).
    With cofactors, also returns (u, v) with u f + v g = Res, computed from
    the adjugate of the Sylvester matrix.
    """
    if isinstance(f, TriHomog) and isinstance(g, TriHomog):
        return _resultant_trihomog(f, g)
    if isinstance(f, BiPoly) and isinstance(g, BiPoly):
        return _resultant_bipoly(f, g, with_cofactors)
    if isinstance(f, SeriesPoly) and isinstance(g, SeriesPoly):
        return _resultant_seriespoly(f, g, with_cofactors)
    raise TypeError("unsupported carriers for resultant_y")


def _resultant_bipoly(f: BiPoly, g: BiPoly, with_cofactors):
    field = f.field
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomialError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return UniPoly(field, [])
    fc, gc = f.y_coeffs(), g.y_coeffs()
    cols, size = _sylvester_columns(fc, gc)
    if size == 0:
        return UniPoly.constant(field, 1)
    zero_p = UniPoly(field, [])
    mat = [[cols[c][r] if cols[c][r] is not None else zero_p for c in range(size)] for r in range(size)]
    res = det_bareiss(mat, UniPoly.constant(field, 1))
    if not with_cofactors:
        return res
    cof = _adjugate_first_column(mat, zero_p, UniPoly.constant(field, 1))
    n_u = len(gc) - 1
    u = BiPoly.from_y_coeffs(field, cof[:n_u]) if n_u > 0 else BiPoly.zero(field)
    v = BiPoly.from_y_coeffs(field, cof[n_u:])
    return res, u, v


def _resultant_seriespoly(f: SeriesPoly, g: SeriesPoly, with_cofactors):
    field = f.field
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomialError("resultant of two zero polynomials")
    fc, gc = list(f.coeffs), list(g.coeffs)
    if not fc or not gc:
        return TruncSeries(field, [], min(f.prec, g.prec))
    cols, size = _sylvester_columns(fc, gc)
    zero_s = TruncSeries(field, [], inf)
    one_s = TruncSeries.one(field, inf)
    if size == 0:
        return one_s
    mat = [[cols[c][r] if cols[c][r] is not None else zero_s for c in range(size)] for r in range(size)]
    res = det_division_free(mat, zero_s, one_s)
    if res.prec != inf and res.prec < 1:
        raise PrecisionUnderflow("resultant precision exhausted")
    if not with_cofactors:
        return res
    cof = _adjugate_first_column(mat, zero_s, one_s)
    n_u = len(gc) - 1
    u = SeriesPoly(field, cof[:n_u]) if n_u > 0 else SeriesPoly(field, [])
    v = SeriesPoly(field, cof[n_u:])
    return res, u, v


def _adjugate_first_column(mat, zero, one):
    """Entries w_c = adj(S)[c][0], so S . w = det(S) e_0."""
    n = len(mat)
    out = []
    for c in range(n):
        minor = [
            [mat[r][cc] for cc in range(n) if cc != c]
            for r in range(1, n)
        ]
        d = det_division_free(minor, zero, one)
        out.append(d if c % 2 == 0 else (zero - d))
    return out


def _resultant_trihomog(F: TriHomog, G: TriHomog) -> BiPoly:
    """Res_y(F, G) as a homogeneous BiPoly in (x, z).

    Every permutation term of the Sylvester determinant of homogeneous
    inputs carries one total degree, so the resultant is homogeneous and
    fully determined by its z = 1 slice together with that degree.
    """
    field = F.field
    fz, gz = F.dehomogenize("z"), G.dehomogenize("z")
    r_x = _resultant_bipoly(fz, gz, False)
    if r_x.is_zero():
        return BiPoly.zero(field)
    deg_total = _sylvester_homog_degree(F, G)
    if r_x.degree > deg_total:
        raise InternalError("resultant degree exceeds homogeneous bound")
    terms = {}
    for i, c in enumerate(r_x.coeffs):
        if not c.is_zero():
            terms[(i, deg_total - i)] = c
    return BiPoly(field, terms)


def _sylvester_homog_degree(F: TriHomog, G: TriHomog) -> int:
    # With m = deg_y F and n = deg_y G every permutation term of the
    # Sylvester determinant has total degree n*deg F + m*deg G - m*n.
    m = F.dehomogenize("z").degy()
    n = G.dehomogenize("z").degy()
    return F.degree * n + G.degree * m - m * n


def resultant_univariate(f: UniPoly, g: UniPoly):
    """Resultant of two univariate polynomials, as a field element."""
    field = f.field
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomialError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return field.zero()
    cols, size = _sylvester_columns(list(f.coeffs), list(g.coeffs))
    if size == 0:
        return field.one()
    mat = [
        [cols[c][r] if cols[c][r] is not None else field.zero() for c in range(size)]
        for r in range(size)
    ]
    from .linalg import det

    return det(mat, field)
