"""Evaluation codes from function spaces, and threshold secret sharing.

The generator matrix of an evaluation code lists, row by row, the values
of the basis functions at the chosen rational points.  On the line with
the divisor (k-1) * (point at infinity) this reproduces the classical
Vandermonde generator matrix, which is also the backbone of the
polynomial secret-sharing scheme.
"""

from dataclasses import dataclass
from random import Random

from .divisors import Divisor, genus
from .errors import (
    DuplicatePointsError,
    KTooLargeError,
    PointNotOnCurveError,
    PointOnDenominatorError,
    SingularSystemError,
    TooFewSharesError,
)
from .gf import common_field, embed
from .linalg import rank, solve
from .polyring import ProjPoint, TriHomog
from .riemannroch import RRBasis, rr_basis


@dataclass
class GeneratorMatrix:
    rows: int
    cols: int
    entries: list
    provenance: dict

    def row(self, i):
        return self.entries[i]

    def rank(self, field):
        if not self.entries:
            return 0
        return rank(self.entries, field)

    def render(self):
        from .gf import format_element

        return "\n".join(
            " ".join(format_element(e) for e in row) for row in self.entries
        )


def _eval_function(G: TriHomog, H: TriHomog, pt: ProjPoint, field):
    GK = G.map_coeffs(lambda c: embed(c, field), field)
    HK = H.map_coeffs(lambda c: embed(c, field), field)
    hv = HK(pt.x, pt.y, pt.z)
    if hv.is_zero():
        raise PointOnDenominatorError(f"denominator vanishes at {pt}")
    return GK(pt.x, pt.y, pt.z) / hv


def ag_generator_matrix(F: TriHomog, D: Divisor, points, basis: RRBasis = None, rng: Random = None) -> GeneratorMatrix:
    """Matrix of the evaluation map of the function space of D at the points.

    Points must lie on the curve, away from the support of D and from the
    zeros of the denominator.
    """
    basis = basis or rr_basis(F, D, rng)
    support_centers = {p.center.minimized() for p in D.support()}
    field = common_field(
        [basis.field] + [pt.field for pt in points] + [F.field]
    )
    entries = [[] for _ in range(basis.ell)]
    for pt in points:
        ptK = pt.embedded(field)
        FK = F.map_coeffs(lambda c: embed(c, field), field)
        if not FK(ptK.x, ptK.y, ptK.z).is_zero():
            raise PointNotOnCurveError(f"{pt} is not on the curve")
        if pt.minimized() in support_centers:
            raise PointOnDenominatorError(f"{pt} lies in the divisor support")
        for i, G in enumerate(basis.numerators):
            entries[i].append(_eval_function(G, basis.H, ptK, field))
    return GeneratorMatrix(
        rows=basis.ell,
        cols=len(points),
        entries=entries,
        provenance={"kind": "ag", "curve": F, "divisor": D, "points": list(points)},
    )


def rs_generator_matrix(k: int, alphas, field) -> GeneratorMatrix:
    """Vandermonde generator matrix: row i lists alpha^i for each point."""
    alphas = [field.element(a) for a in alphas]
    if len(set(alphas)) != len(alphas):
        raise DuplicatePointsError("evaluation points must be distinct")
    if k > len(alphas):
        raise KTooLargeError(f"dimension {k} exceeds the {len(alphas)} points")
    entries = []
    row = [field.one() for _ in alphas]
    for i in range(k):
        if i:
            row = [r * a for r, a in zip(row, alphas)]
        entries.append(list(row))
    return GeneratorMatrix(
        rows=k,
        cols=len(alphas),
        entries=entries,
        provenance={"kind": "rs", "k": k, "alphas": alphas},
    )


# ----------------------------------------------------------------------
# Secret sharing
# ----------------------------------------------------------------------

@dataclass
class SecretShares:
    shares: list      # (identifier, value) pairs
    threshold: int
    scheme: str
    params: dict


def share_secret(secret, t: int, ids, field, rng: Random = None) -> SecretShares:
    """Polynomial threshold sharing: a random degree < t polynomial with
    constant term equal to the secret, evaluated at the identifiers."""
    rng = rng or Random(0)
    ids = [field.element(i) for i in ids]
    if len(set(ids)) != len(ids):
        raise DuplicatePointsError("share identifiers must be distinct")
    if any(i.is_zero() for i in ids):
        raise DuplicatePointsError("identifier 0 would leak the secret")
    if t < 1 or t > len(ids):
        raise TooFewSharesError("threshold must be between 1 and the share count")
    secret = field.element(secret)
    coeffs = [secret] + [field.random_element(rng) for _ in range(t - 1)]
    shares = []
    for ident in ids:
        acc = field.zero()
        for c in reversed(coeffs):
            acc = acc * ident + c
        shares.append((ident, acc))
    return SecretShares(shares, t, "shamir", {"field": field})


def reconstruct(shares: SecretShares, subset=None):
    """Recover the secret from at least threshold shares (Lagrange at 0)."""
    pairs = subset if subset is not None else shares.shares
    if len(pairs) < shares.threshold:
        raise TooFewSharesError(
            f"{len(pairs)} shares given, {shares.threshold} needed"
        )
    field = shares.params["field"]
    pts = pairs[: shares.threshold]
    ids = [p[0]
           for p in pts]
    if len(set(ids)) != len(ids):
        raise DuplicatePointsError("repeated share identifiers")
    acc = field.zero()
    for i, (xi, yi) in enumerate(pts):
        num = field.one()
        den = field.one()
        for j, (xj, _yj) in enumerate(pts):
            if i == j:
                continue
            num = num * (-xj)
            den = den * (xi - xj)
        acc = acc + yi * num / den
    return acc


class AGSecretScheme:
    """Secret sharing over a curve: the secret is the value of a random
    function of the space of D at a distinguished point; shares are its
    values at the remaining points.

    Reported thresholds: any deg(D) + 1 shares always reconstruct, while
    coalitions of at most deg(D) - 2*genus shares learn nothing.
    """

    def __init__(self, F: TriHomog, D: Divisor, secret_point, share_points, rng: Random = None):
        self.curve = F
        self.divisor = D
        self.rng = rng or Random(0)
        self.basis = rr_basis(F, D, self.rng)
        self.matrix = ag_generator_matrix(
            F, D, [secret_point] + list(share_points), self.basis, self.rng
        )
        self.secret_point = secret_point
        self.share_points = list(share_points)
        g = genus(F, self.rng)
        self.t1 = D.degree() + 1
        self.t2 = max(D.degree() - 2 * g, 0)
        self.field = common_field(
            [self.basis.field] + [p.field for p in self.matrix.provenance["points"]]
        )

    def share(self, secret) -> SecretShares:
        """Draw a random function with the prescribed secret value."""
        field = self.field
        secret = embed(field.element(secret) if isinstance(secret, int) else secret, field)
        col0 = [self.matrix.entries[i][0] for i in range(self.matrix.rows)]
        pivot = next((i for i, e in enumerate(col0) if not e.is_zero()), None)
        if pivot is None:
            raise SingularSystemError("every function vanishes at the secret point")
        coeffs = [field.random_element(self.rng) for _ in range(self.matrix.rows)]
        val = field.zero()
        for c, e in zip(coeffs, col0):
            val = val + c * e
        coeffs[pivot] = coeffs[pivot] + (secret - val) / col0[pivot]
        shares = []
        for j in range(1, self.matrix.cols):
            val = field.zero()
            for i in range(self.matrix.rows):
                val = val + coeffs[i] * self.matrix.entries[i][j]
            shares.append((self.share_points[j - 1], val))
        return SecretShares(shares, self.t1, "ag", {"scheme": self, "t1": self.t1, "t2": self.t2})

    def reconstruct(self, shares: SecretShares, subset=None):
        pairs = subset if subset is not None else shares.shares
        if len(pairs) < self.t1:
            raise TooFewSharesError(f"{len(pairs)} shares given, {self.t1} needed")
        field = self.field
        index = {pt: j + 1 for j, pt in enumerate(self.share_points)}
        rows = []
        rhs = []
        for pt, val in pairs:
            j = index.get(pt)
            if j is None:
                raise SingularSystemError(f"unknown share point {pt}")
            rows.append([self.matrix.entries[i][j] for i in range(self.matrix.rows)])
            rhs.append(embed(val, field))
        coeffs = solve(rows, rhs, field)
        # consistency of the solved function with every provided share
        for row, b in zip(rows, rhs):
            acc = field.zero()
            for c, e in zip(coeffs, row):
                acc = acc + c * e
            if not (acc - b).is_zero():
                raise SingularSystemError("shares are inconsistent")
        secret = field.zero()
        for i, c in enumerate(coeffs):
            secret = secret + c * self.matrix.entries[i][0]
        return secret
