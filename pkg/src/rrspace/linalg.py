"""Exact dense linear algebra over finite fields.

Plain Gaussian elimination with deterministic pivoting (first row with a
nonzero entry in the current column), which keeps kernels and reduced
forms reproducible across runs.
"""

from .errors import SingularSystemError


def rref(rows, field):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    row = 0
    for col in range(n):
        sel = None
        for r in range(row, m):
            if not a[r][col].is_zero():
                sel = r
                break
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        inv = a[row][col].inverse()
        a[row] = [v * inv for v in a[row]]
        for r in range(m):
            if r != row and not a[r][col].is_zero():
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return a[:row], pivots


def rank(rows, field):
    if not rows:
        return 0
    _, pivots = rref(rows, field)
    return len(pivots)


def nullspace(rows, field, ncols=None):
    """Deterministic kernel basis of the matrix given by rows.

    Basis vector k has a 1 in the k-th free column (columns in their given
    order) and zeros in the other free columns.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty row list")
        ncols = len(rows[0])
    if not rows:
        rows = []
    red, pivots = rref(rows, field) if rows else ([], [])
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    one = field.one()
    zero = field.zero()
    for fc in free_cols:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """One solution of rows * x = rhs, or SINGULAR_SYSTEM if inconsistent."""
    if not rows:
        if any(not b.is_zero() for b in rhs):
            raise SingularSystemError("inconsistent empty system")
        return []
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    for r in red:
        if all(v.is_zero() for v in r[:n]) and not r[n].is_zero():
            raise SingularSystemError("inconsistent linear system")
    x = [field.zero()] * n
    for r, pc in enumerate(pivots):
        if pc < n:
            x[pc] = red[r][n]
    return x


def det(rows, field):
    """Determinant by Gaussian elimination (entries are field elements)."""
    a = [list(r) for r in rows]
    n = len(a)
    sign_flip = False
    acc = field.one()
    for col in range(n):
        sel = None
        for r in range(col, n):
            if not a[r][col].is_zero():
                sel = r
                break
        if sel is None:
            return field.zero()
        if sel != col:
            a[col], a[sel] = a[sel], a[col]
            sign_flip = not sign_flip
        acc = acc * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, n):
            if not a[r][col].is_zero():
                c = a[r][col] * inv
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return -acc if sign_flip else acc
