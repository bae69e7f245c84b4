"""Exact arithmetic in finite prime fields and their extensions.

Fields are always represented relative to the prime field: an element of
GF(p^k) is a coordinate vector of length k over GF(p), reduced modulo a
monic irreducible modulus in the generator ``t``.  Extensions of the same
prime field are merged on demand by embedding everything into one common
field whose degree is the lcm of the degrees involved; the modulus of each
extension and every embedding are chosen deterministically so repeated
runs produce identical coordinates.

The univariate polynomial type ``UniPoly`` and its factorisation routines
live here as well, since root finding over dynamically built extensions is
what the rest of the package asks this module for.
"""

import math
from random import Random

from .errors import (
    DivisionByZeroError,
    FieldMismatchError,
    InternalError,
    NoEmbeddingError,
    ParseError,
    ZeroPolynomialError,
)

_DEFAULT_SEED = 0


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for word-size integers."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ----------------------------------------------------------------------
# Field descriptors
# ----------------------------------------------------------------------

class PrimeField:
    """The field GF(p) for a word-size prime p."""

    __slots__ = ("p", "degree", "order")

    def __init__(self, p: int):
        if p >= 1 << 62:
            raise ParseError("prime modulus must fit in a machine word")
        if not _is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = p
        self.degree = 1
        self.order = p

    @property
    def prime_field(self):
        return self

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatchError("element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != 1:
            raise FieldMismatchError("prime-field element needs one coordinate")
        return FieldElement(self, coeffs)

    def zero(self):
        return FieldElement(self, (0,))

    def one(self):
        return FieldElement(self, (1,))

    def generator_symbol(self):
        return None

    def elements(self):
        for v in range(self.p):
            yield FieldElement(self, (v,))

    def random_element(self, rng: Random):
        return FieldElement(self, (rng.randrange(self.p),))

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class ExtensionField:
    """GF(p^k) presented as GF(p)[t] modulo a monic irreducible of degree k."""

    __slots__ = ("base", "p", "degree", "order", "modulus")

    def __init__(self, base: PrimeField, modulus: tuple):
        # modulus holds the coefficients of t^0 .. t^{k-1}; the leading
        # coefficient of the monic modulus is implicit.
        self.base = base
        self.p = base.p
        self.degree = len(modulus)
        self.order = base.p ** self.degree
        self.modulus = tuple(c % base.p for c in modulus)

    @property
    def prime_field(self):
        return self.base

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatchError("element belongs to another field")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.degree - 1)
            return FieldElement(self, coeffs)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.degree:
            raise FieldMismatchError("too many coordinates")
        coeffs += [0] * (self.degree - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def zero(self):
        return FieldElement(self, (0,) * self.degree)

    def one(self):
        return FieldElement(self, (1,) + (0,) * (self.degree - 1))

    def generator(self):
        """The class of t, a root of the modulus."""
        coeffs = [0] * self.degree
        coeffs[1 if self.degree > 1 else 0] = 1
        return FieldElement(self, tuple(coeffs))

    def elements(self):
        p, k = self.p, self.degree
        for code in range(self.order):
            coeffs = []
            c = code
            for _ in range(k):
                coeffs.append(c % p)
                c //= p
            yield FieldElement(self, tuple(coeffs))

    def random_element(self, rng: Random):
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtensionField", self.p, self.modulus))


# ----------------------------------------------------------------------
# Coordinate-level helpers (int tuples over GF(p))
# ----------------------------------------------------------------------

def _vec_add(a, b, p):
    return tuple((x + y) % p for x, y in zip(a, b))


def _vec_sub(a, b, p):
    return tuple((x - y) % p for x, y in zip(a, b))


def _vec_neg(a, p):
    return tuple((-x) % p for x in a)


def _poly_mul_mod(a, b, modulus, p):
    """Product of coordinate vectors modulo the monic modulus."""
    k = len(a)
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    # reduce t^m for m >= k using t^k = -modulus
    for m in range(2 * k - 2, k - 1, -1):
        c = prod[m] % p
        if c:
            prod[m] = 0
            for j, mj in enumerate(modulus):
                if mj:
                    prod[m - k + j] -= c * mj
    return tuple(v % p for v in prod[:k])


def _coeffs_inverse(a, modulus, p):
    """Inverse of a coordinate vector via extended Euclid over GF(p)[t]."""
    k = len(a)
    mod_list = list(modulus) + [1]

    def trim(u):
        while u and u[-1] % p == 0:
            u.pop()
        return u

    r0, r1 = trim(mod_list[:]), trim([c % p for c in a])
    if not r1:
        raise DivisionByZeroError("inverse of zero")
    s0, s1 = [], [1]
    while len(r1) > 1 or (len(r1) == 1 and False):
        # divide r0 by r1
        q = [0] * (len(r0) - len(r1) + 1) if len(r0) >= len(r1) else []
        rem = r0[:]
        inv_lead = pow(r1[-1], p - 2, p)
        while len(rem) >= len(r1) and rem:
            shift = len(rem) - len(r1)
            c = rem[-1] * inv_lead % p
            q[shift] = c
            for j, cj in enumerate(r1):
                rem[shift + j] = (rem[shift + j] - c * cj) % p
            trim(rem)
        new_s = s0[:]
        # new_s = s0 - q * s1
        prod = [0] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    prod[i + j] = (prod[i + j] + qi * sj) % p
        ln = max(len(new_s), len(prod))
        new_s += [0] * (ln - len(new_s))
        prod += [0] * (ln - len(prod))
        new_s = trim([(x - y) % p for x, y in zip(new_s, prod)])
        r0, r1 = r1, trim(rem)
        s0, s1 = s1, new_s
        if not r1:
            raise InternalError("modulus not coprime with element")
    # r1 is a nonzero constant: scale s1
    c_inv = pow(r1[0], p - 2, p)
    out = [x * c_inv % p for x in s1]
    out += [0] * (k - len(out))
    return tuple(out[:k])


# ----------------------------------------------------------------------
# Field elements
# ----------------------------------------------------------------------

class FieldElement:
    """Immutable element of a PrimeField or ExtensionField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    # -- predicates -----------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return other
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, _vec_add(self.coeffs, o.coeffs, self.field.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, _vec_sub(self.coeffs, o.coeffs, self.field.p))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return FieldElement(self.field, _vec_neg(self.coeffs, self.field.p))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        if f.degree == 1:
            return FieldElement(f, (self.coeffs[0] * o.coeffs[0] % f.p,))
        return FieldElement(f, _poly_mul_mod(self.coeffs, o.coeffs, f.modulus, f.p))

    __rmul__ = __mul__

    def inverse(self):
        f = self.field
        if self.is_zero():
            raise DivisionByZeroError("inverse of zero")
        if f.degree == 1:
            return FieldElement(f, (pow(self.coeffs[0], f.p - 2, f.p),))
        return FieldElement(f, _coeffs_inverse(self.coeffs, f.modulus, f.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- identity -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.element(other)
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def to_int(self):
        if self.field.degree != 1:
            raise FieldMismatchError("to_int needs a prime-field element")
        return self.coeffs[0]

    def __repr__(self):
        return format_element(self)


def format_element(a: FieldElement) -> str:
    """Render an element as an integer or a polynomial expression in t."""
    if a.field.degree == 1:
        return str(a.coeffs[0])
    terms = []
    for i in range(a.field.degree - 1, -1, -1):
        c = a.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("t" if c == 1 else f"{c}*t")
        else:
            terms.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
    return " + ".join(terms) if terms else "0"


# ----------------------------------------------------------------------
# Univariate polynomials
# ----------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over a finite field, low degree first.

    The zero polynomial has degree -1 (sentinel).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.element(c) for c in ints])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [field.element(c)])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero(), field.one()])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def leading(self):
        if self.is_zero():
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return UniPoly(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    def __divmod__(self, other):
        if other.is_zero():
            raise DivisionByZeroError("division by zero polynomial")
        if self.degree < other.degree:
            return UniPoly(self.field, []), self
        inv_lead = other.leading().inverse()
        rem = list(self.coeffs)
        q = [self.field.zero()] * (len(rem) - len(other.coeffs) + 1)
        for shift in range(len(q) - 1, -1, -1):
            c = rem[shift + other.degree] * inv_lead
            if c.is_zero():
                continue
            q[shift] = c
            for j, oc in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - c * oc
        return UniPoly(self.field, q), UniPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self * self.leading().inverse()

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, u, v) with u*self + v*other = g, g monic."""
        f = self.field
        r0, r1 = self, other
        s0, s1 = UniPoly.constant(f, 1), UniPoly(f, [])
        t0, t1 = UniPoly(f, []), UniPoly.constant(f, 1)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        c = r0.leading().inverse()
        return r0 * c, s0 * c, t0 * c

    def derivative(self):
        return UniPoly(
            self.field,
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
        )

    def __call__(self, value):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def shift(self, a):
        """Compose with x -> x + a."""
        out = UniPoly(self.field, [])
        xa = UniPoly(self.field, [a, self.field.one()])
        for c in reversed(self.coeffs):
            out = out * xa + UniPoly.constant(self.field, c)
        return out

    def compose(self, other):
        out = UniPoly(self.field, [])
        for c in reversed(self.coeffs):
            out = out * other + UniPoly(self.field, [c])
        return out

    def pow_mod(self, e: int, modulus: "UniPoly"):
        result = UniPoly.constant(self.field, 1) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def map_coeffs(self, fn, field=None):
        return UniPoly(field or self.field, [fn(c) for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c.is_zero():
                continue
            cs = format_element(c)
            if i == 0:
                parts.append(cs)
            else:
                var = "x" if i == 1 else f"x^{i}"
                parts.append(var if c.is_one() else f"({cs})*{var}" if "+" in cs else f"{cs}*{var}")
        return " + ".join(parts)


# ----------------------------------------------------------------------
# Field construction
# ----------------------------------------------------------------------

_PRIME_CACHE: dict = {}
_EXT_CACHE: dict = {}


def GF(p: int, k: int = 1):
    """The finite field with p^k elements, built deterministically."""
    if p not in _PRIME_CACHE:
        _PRIME_CACHE[p] = PrimeField(p)
    base = _PRIME_CACHE[p]
    if k == 1:
        return base
    return build_extension(base, k)


def parse_field(text: str):
    """Parse a field literal: GF(p), GF(p^k), or GF(q) for a prime power q."""
    s = text.strip().replace(" ", "")
    if not (s.startswith("GF(") and s.endswith(")")):
        raise ParseError(f"bad field literal: {text!r}")
    body = s[3:-1]
    if "^" in body:
        ps, ks = body.split("^", 1)
        try:
            p, k = int(ps), int(ks)
        except ValueError as exc:
            raise ParseError(f"bad field literal: {text!r}") from exc
    else:
        try:
            q = int(body)
        except ValueError as exc:
            raise ParseError(f"bad field literal: {text!r}") from exc
        if q < 2:
            raise ParseError("field order must be at least 2")
        p = q
        d = 2
        while d * d <= p:
            if p % d == 0:
                p = d
                break
            d += 1
        k = 0
        n = q
        while n % p == 0 and n > 1:
            n //= p
            k += 1
        if n != 1:
            raise ParseError(f"{q} is not a prime power")
    if k < 1:
        raise ParseError("extension degree must be positive")
    return GF(p, k)


def _poly_is_irreducible(m: UniPoly) -> bool:
    """Irreducibility over the coefficient field via Rabin's test."""
    field = m.field
    q = field.order
    k = m.degree
    x = UniPoly.x(field)
    # x^(q^k) == x mod m
    h = x
    for _ in range(k):
        h = h.pow_mod(q, m)
    if h != x % m:
        return False
    # gcd(x^(q^(k/l)) - x, m) == 1 for every prime l | k
    n, primes = k, []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    for l in primes:
        h = x
        for _ in range(k // l):
            h = h.pow_mod(q, m)
        if not m.gcd(h - x).is_one():
            return False
    return True


def build_extension(base: PrimeField, k: int):
    """GF(p^k) with the lexicographically first monic irreducible modulus.

    Candidate moduli t^k + c_{k-1} t^{k-1} + ... + c_0 are enumerated by the
    integer code sum(c_i p^i), ascending, so the choice is reproducible.
    """
    if k < 1:
        raise ParseError("extension degree must be positive")
    if k == 1:
        return base
    key = (base.p, k)
    if key in _EXT_CACHE:
        return _EXT_CACHE[key]
    p = base.p
    for code in range(p ** k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        candidate = UniPoly.from_ints(base, coeffs + [1])
        if _poly_is_irreducible(candidate):
            ext = ExtensionField(base, tuple(coeffs))
            _EXT_CACHE[key] = ext
            return ext
    raise InternalError("no irreducible modulus found")  # pragma: no cover


def common_field(fields):
    """The smallest deterministically built field containing all inputs."""
    fields = list(fields)
    p = fields[0].p if isinstance(fields[0], ExtensionField) else fields[0].p
    k = 1
    for f in fields:
        if f.p != p:
            raise FieldMismatchError("mixed characteristics")
        k = math.lcm(k, f.degree)
    return GF(p, k)


# ----------------------------------------------------------------------
# Embeddings
# ----------------------------------------------------------------------

_EMBED_CACHE: dict = {}


def _element_sort_key(a: FieldElement):
    return a.coeffs


def embed(a: FieldElement, target) -> "FieldElement":
    """Image of a under the fixed embedding of its field into target.

    The embedding sends the source generator to the deterministically first
    root (smallest coordinate tuple) of the source modulus in the target.
    """
    src = a.field
    if src == target:
        return a
    if target.degree % src.degree != 0 or src.p != target.p:
        raise NoEmbeddingError(f"no embedding {src} -> {target}")
    if src.degree == 1:
        return target.element(a.coeffs[0])
    key = (src, target)
    if key not in _EMBED_CACHE:
        mod_poly = UniPoly.from_ints(target, list(src.modulus) + [1])
        roots = find_roots(mod_poly, target)
        if not roots:
            raise InternalError("modulus has no root in target field")
        rho = min(set(roots), key=_element_sort_key)
        powers = [target.one()]
        for _ in range(src.degree - 1):
            powers.append(powers[-1] * rho)
        _EMBED_CACHE[key] = powers
    powers = _EMBED_CACHE[key]
    acc = target.zero()
    for c, rp in zip(a.coeffs, powers):
        if c:
            acc = acc + rp * c
    return acc


def embed_poly(f: UniPoly, target) -> UniPoly:
    return UniPoly(target, [embed(c, target) for c in f.coeffs])


def relative_coordinates(xi: FieldElement, base_field, ext_field):
    """Coordinates of xi in the basis 1, g, ..., g^{r-1} of ext over base.

    Here g is the generator of ext_field and r = [ext:base]; the returned
    list holds base_field elements c_s with xi = sum c_s g^s.
    """
    j, k = base_field.degree, ext_field.degree
    if k % j != 0:
        raise NoEmbeddingError("not a subfield")
    r = k // j
    if r == 1:
        # identify via the embedding: find c with embed(c) == xi
        # (the embedding is a bijection here)
        inv = _subfield_inverse_map(base_field, ext_field)
        return [inv(xi)]
    p = base_field.p
    g = ext_field.generator()
    # columns: embed(b_u) * g^s for u < j, s < r, with b_u the monomial
    # basis of base over GF(p)
    cols = []
    gs = ext_field.one()
    for s in range(r):
        for u in range(j):
            bu = base_field.element([0] * u + [1])
            cols.append((embed(bu, ext_field) * gs).coeffs)
        gs = gs * g
    sol = _solve_mod_p([list(col) for col in cols], list(xi.coeffs), p)
    out = []
    for s in range(r):
        out.append(base_field.element(sol[s * j:(s + 1) * j]))
    return out


def _subfield_inverse_map(base_field, ext_field):
    def inv(xi):
        p = base_field.p
        cols = []
        for u in range(base_field.degree):
            bu = base_field.element([0] * u + [1])
            cols.append(list(embed(bu, ext_field).coeffs))
        sol = _solve_mod_p(cols, list(xi.coeffs), p)
        return base_field.element(sol)
    return inv


def _solve_mod_p(columns, rhs, p):
    """Solve the integer system (columns as vectors) * x = rhs over GF(p)."""
    m = len(rhs)
    n = len(columns)
    a = [[columns[c][r] % p for c in range(n)] + [rhs[r] % p] for r in range(m)]
    piv_cols = []
    row = 0
    for col in range(n):
        sel = None
        for r in range(row, m):
            if a[r][col] % p:
                sel = r
                break
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        inv = pow(a[row][col], p - 2, p)
        a[row] = [v * inv % p for v in a[row]]
        for r in range(m):
            if r != row and a[r][col]:
                c = a[r][col]
                a[r] = [(x - c * y) % p for x, y in zip(a[r], a[row])]
        piv_cols.append(col)
        row += 1
    for r in range(row, m):
        if a[r][n] % p:
            raise InternalError("inconsistent coordinate system")
    sol = [0] * n
    for r, col in enumerate(piv_cols):
        sol[col] = a[r][n]
    return sol


# ----------------------------------------------------------------------
# Factorisation and roots
# ----------------------------------------------------------------------

def _pth_root_element(c: FieldElement) -> FieldElement:
    # Frobenius is bijective; the p-th root is c^(p^(k-1)).
    k = c.field.degree
    if k == 1:
        return c
    return c ** (c.field.p ** (k - 1))


def _squarefree_decomposition(f: UniPoly):
    """List of (monic squarefree factor, multiplicity), f monic."""
    field = f.field
    p = field.p
    out = []
    if f.degree < 1:
        return out
    df = f.derivative()
    if df.is_zero():
        # f is a polynomial in x^p; take the p-th root and recurse
        root_coeffs = [
            _pth_root_element(f.coeff(i)) for i in range(0, f.degree + 1, p)
        ]
        for g, m in _squarefree_decomposition(UniPoly(field, root_coeffs)):
            out.append((g, m * p))
        return out
    c = f.gcd(df)
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        z = w // y
        if not z.is_one():
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        root_coeffs = [
            _pth_root_element(c.coeff(i)) for i in range(0, c.degree + 1, p)
        ]
        for g, m in _squarefree_decomposition(UniPoly(field, root_coeffs)):
            out.append((g, m * p))
    return out


def _distinct_degree(f: UniPoly):
    """Split a monic squarefree f into (product of degree-d irreducibles, d)."""
    field = f.field
    q = field.order
    out = []
    x = UniPoly.x(field)
    h = x
    rest = f
    d = 0
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest, rest.degree))
            break
        h = h.pow_mod(q, rest)
        g = rest.gcd(h - x)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            h = h % rest
    return out


def _equal_degree_split(f: UniPoly, d: int, rng: Random):
    """One nontrivial factor of a product of degree-d irreducibles."""
    field = f.field
    q = field.order
    n = f.degree
    x = UniPoly.x(field)
    while True:
        a = UniPoly(field, [field.random_element(rng) for _ in range(n)])
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < n:
            return g
        if field.p == 2:
            # trace map over GF(2^(j*d))
            t = a % f
            acc = t
            for _ in range(field.degree * d - 1):
                t = (t * t) % f
                acc = (acc + t) % f
            g = f.gcd(acc)
        else:
            e = (q ** d - 1) // 2
            b = a.pow_mod(e, f)
            g = f.gcd(b - UniPoly.constant(field, 1))
        if 0 < g.degree < n:
            return g


def _equal_degree_factor(f: UniPoly, d: int, rng: Random):
    if f.degree == d:
        return [f]
    g = _equal_degree_split(f, d, rng)
    return _equal_degree_factor(g, d, rng) + _equal_degree_factor(f // g, d, rng)


def factor_univariate(f: UniPoly, rng: Random = None):
    """Full factorisation into monic irreducibles with multiplicities.

    Returns a list of (factor, multiplicity) sorted deterministically by
    (degree, coefficient tuple); the product times the leading coefficient
    of f reproduces f exactly.
    """
    if f.is_zero():
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    rng = rng or Random(_DEFAULT_SEED)
    monic = f.monic()
    result = []
    for part, mult in _squarefree_decomposition(monic):
        for prod, d in _distinct_degree(part):
            for irr in _equal_degree_factor(prod, d, rng):
                result.append((irr, mult))
    result.sort(key=lambda fm: (fm[0].degree, [c.coeffs for c in fm[0].coeffs]))
    return result


def find_roots(f: UniPoly, target, rng: Random = None):
    """All roots of f in the target field, with multiplicity repeats.

    The coefficient field of f must embed into target; the returned list is
    sorted by coordinate tuple.
    """
    if f.is_zero():
        raise ZeroPolynomialError("zero polynomial has every root")
    ff = f if f.field == target else embed_poly(f, target)
    if ff.degree < 1:
        return []
    roots = []
    for factor, mult in factor_univariate(ff, rng):
        if factor.degree == 1:
            r = -factor.coeff(0)
            roots.extend([r] * mult)
    roots.sort(key=_element_sort_key)
    return roots


def frobenius(a: FieldElement, q: int) -> FieldElement:
    """The q-power Frobenius (q a power of the characteristic)."""
    return a ** q


def subfield_degree(a: FieldElement) -> int:
    """Degree over the prime field of the smallest subfield containing a."""
    k = a.field.degree
    p = a.field.p
    for d in range(1, k):
        if k % d == 0 and a ** (p ** d) == a:
            return d
    return k


def project_to_subfield(a: FieldElement, sub) -> FieldElement:
    """Preimage of a under the canonical embedding of sub into a's field."""
    if sub == a.field:
        return a
    if a.field.degree % sub.degree != 0:
        raise NoEmbeddingError("not a subfield")
    return _subfield_inverse_map(sub, a.field)(a)
