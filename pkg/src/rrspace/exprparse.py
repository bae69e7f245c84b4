"""Parser for polynomial expressions and point/field literals used by the CLI.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' integer)?
    atom   := integer | 'x' | 'y' | 'z' | 't' | '(' expr ')' | '-' factor

The letter t denotes the generator of the coefficient field's extension;
x, y, z are the projective coordinates.  Points are written (e1:e2:e3)
with coordinate expressions in t.
"""

from .errors import DegreeMismatchError, ParseError
from .gf import parse_field
from .polyring import ProjPoint, TriHomog

_VARS = ("x", "y", "z", "t")


class _SymPoly:
    """Polynomial in x, y, z, t with integer coefficients, used while parsing."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms or {})

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0, 0): c} if c else {})

    @classmethod
    def var(cls, name):
        e = [0, 0, 0, 0]
        e[_VARS.index(name)] = 1
        return cls({tuple(e): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
            if out[e] == 0:
                del out[e]
        return _SymPoly(out)

    def __sub__(self, other):
        return self + other.__neg__()

    def __neg__(self):
        return _SymPoly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
                if out[e] == 0:
                    del out[e]
        return _SymPoly(out)

    def __pow__(self, n):
        out = _SymPoly.const(1)
        for _ in range(n):
            out = out * self
        return out


class _Parser:
    def __init__(self, text):
        self.text = text.replace(" ", "").replace("\t", "")
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        c = self.peek()
        self.pos += 1
        return c

    def expect(self, c):
        if self.take() != c:
            raise ParseError(f"expected {c!r} at position {self.pos} in {self.text!r}")

    def parse_expr(self):
        acc = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def parse_term(self):
        acc = self.parse_factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self):
        atom = self.parse_atom()
        if self.peek() == "^":
            self.take()
            n = self.parse_int()
            if n < 0:
                raise ParseError("negative exponents are not allowed")
            atom = atom ** n
        return atom

    def parse_atom(self):
        c = self.peek()
        if c == "-":
            self.take()
            return -self.parse_factor()
        if c == "(":
            self.take()
            e = self.parse_expr()
            self.expect(")")
            return e
        if c.isdigit():
            return _SymPoly.const(self.parse_int())
        if c in _VARS:
            self.take()
            return _SymPoly.var(c)
        raise ParseError(f"unexpected {c!r} at position {self.pos} in {self.text!r}")

    def parse_int(self):
        start = self.pos
        while self.peek().isdigit():
            self.take()
        if start == self.pos:
            raise ParseError(f"expected an integer at position {self.pos}")
        return int(self.text[start:self.pos])

    def finished(self):
        return self.pos == len(self.text)


def _symbolic(text) -> _SymPoly:
    p = _Parser(text)
    e = p.parse_expr()
    if not p.finished():
        raise ParseError(f"trailing input at position {p.pos} in {text!r}")
    return e


def parse_polynomial(text: str, field) -> TriHomog:
    """Parse a homogeneous polynomial in x, y, z over the field."""
    sym = _symbolic(text)
    gen_pow = {}

    def t_power(e):
        if e not in gen_pow:
            if field.degree == 1:
                raise ParseError("t appears but the field is a prime field")
            gen_pow[e] = field.generator() ** e
        return gen_pow[e]

    terms = {}
    for (i, j, k, l), c in sym.terms.items():
        coeff = field.element(c) if l == 0 else field.element(c) * t_power(l)
        key = (i, j, k)
        terms[key] = terms.get(key, field.zero()) + coeff
    terms = {e: c for e, c in terms.items() if not c.is_zero()}
    if not terms:
        return TriHomog(field, 0, {})
    degrees = {sum(e) for e in terms}
    if len(degrees) != 1:
        raise DegreeMismatchError(f"polynomial {text!r} is not homogeneous")
    return TriHomog(field, degrees.pop(), terms)


def parse_scalar(text: str, field):
    """Parse a field element written in t and integers."""
    sym = _symbolic(text)
    acc = field.zero()
    for (i, j, k, l), c in sym.terms.items():
        if i or j or k:
            raise ParseError(f"{text!r} is not a scalar")
        val = field.element(c)
        if l:
            if field.degree == 1:
                raise ParseError("t appears but the field is a prime field")
            val = val * field.generator() ** l
        acc = acc + val
    return acc


def parse_point(text: str, field) -> ProjPoint:
    """Parse a projective point literal (e1:e2:e3)."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"bad point literal {text!r}")
    parts = s[1:-1].split(":")
    if len(parts) != 3:
        raise ParseError(f"a point needs three coordinates: {text!r}")
    return ProjPoint(field, [parse_scalar(p, field) for p in parts])


def parse_point_with_field(text: str, default_field):
    """Parse `(e1:e2:e3)` optionally followed by `in GF(p^k)`."""
    s = text.strip()
    fld = default_field
    if " in " in s:
        pt_part, fld_part = s.split(" in ", 1)
        fld = parse_field(fld_part)
        if fld.p != default_field.p:
            raise ParseError("point field has a different characteristic")
        s = pt_part.strip()
    return parse_point(s, fld)
