"""Dense linear algebra over exact rationals and mpmath floats.

Exact systems go through fraction-free (Bareiss) elimination on an
integer-scaled copy of the matrix; floating systems use partial pivoting
with a relative pivot threshold of ``2**(-prec + 8)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import mpmath

from ..errors import NoSolution, NonUnique, SingularSystem
from .domain import EXACT, infer_domain, is_exact_value

__all__ = [
    "DenseMatrix", "lin_solve", "det", "lu_factor", "solve_refined",
    "nullspace", "solve_general", "PIVOT_GUARD_BITS",
]

PIVOT_GUARD_BITS = 8


@dataclass(frozen=True)
class DenseMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major
    domain: object = EXACT

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")

    @classmethod
    def from_rows(cls, rows, domain=None):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(Fraction(v) if isinstance(v, int) else v for r in rows for v in r)
        if domain is None:
            domain = infer_domain(flat)
        return cls(len(rows), ncols, flat, domain)

    @classmethod
    def identity(cls, n):
        return cls.from_rows([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return DenseMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
            self.domain)

    def matvec(self, x):
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((self[i, j] * x[j] for j in range(self.cols)), 0)
                for i in range(self.rows)]

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def is_exact(self):
        return all(is_exact_value(v) for v in self.entries)


def _as_rows(A):
    if isinstance(A, DenseMatrix):
        return A.to_rows()
    return [list(r) for r in A]


def _integer_rows(rows):
    """Scale each rational row to integers; return rows and the scale factors."""
    out, scales = [], []
    for r in rows:
        r = [Fraction(v) for v in r]
        m = lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * m) for v in r])
        scales.append(m)
    return out, scales


def _bareiss(M, nelim):
    """In-place fraction-free elimination of the first ``nelim`` columns.

    Returns the sign of the row permutation, or raises SingularSystem.
    """
    n = len(M)
    ncols = len(M[0]) if n else 0
    sign = 1
    prev = 1
    for k in range(nelim):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            raise SingularSystem(f"no nonzero pivot in column {k}")
        if p != k:
            M[k], M[p] = M[p], M[k]
            sign = -sign
        pk = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            lik = rowi[k]
            for j in range(k + 1, ncols):
                rowi[j] = (rowi[j] * pk - lik * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return sign


def _exact_det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    M, scales = _integer_rows(rows)
    try:
        sign = _bareiss(M, n)
    except SingularSystem:
        return Fraction(0)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * M[n - 1][n - 1], denom)


def _exact_solve(rows, b):
    n = len(rows)
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    M, _ = _integer_rows(aug)
    _bareiss(M, n)
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n])
        for j in range(i + 1, n):
            acc -= M[i][j] * x[j]
        x[i] = acc / M[i][i]
    return x


class LU:
    """Partial-pivoting LU factorization at the current mpmath precision."""

    def __init__(self, rows, threshold_bits=PIVOT_GUARD_BITS):
        n = len(rows)
        self.n = n
        self.prec = mpmath.mp.prec
        M = [[mpmath.mpmathify(v) if not is_exact_value(v) else _mpf(v) for v in r] for r in rows]
        scale = max((abs(v) for r in M for v in r), default=mpmath.mpf(0))
        if threshold_bits is None:
            tiny = 0
        else:
            tiny = scale * mpmath.ldexp(1, -self.prec + threshold_bits)
        perm = list(range(n))
        sign = 1
        for k in range(n):
            p = max(range(k, n), key=lambda i: abs(M[i][k]))
            if M[p][k] == 0 or abs(M[p][k]) < tiny:
                raise SingularSystem(
                    f"pivot {mpmath.nstr(abs(M[p][k]), 5)} below threshold in column {k}",
                    exact_zero=(M[p][k] == 0))
            if p != k:
                M[k], M[p] = M[p], M[k]
                perm[k], perm[p] = perm[p], perm[k]
                sign = -sign
            pivot = M[k][k]
            for i in range(k + 1, n):
                f = M[i][k] / pivot
                M[i][k] = f
                if f != 0:
                    rowi, rowk = M[i], M[k]
                    for j in range(k + 1, n):
                        rowi[j] -= f * rowk[j]
        self.M = M
        self.perm = perm
        self.sign = sign

    def solve(self, b):
        n, M = self.n, self.M
        y = [_coerce(b[self.perm[i]]) for i in range(n)]
        for i in range(n):
            acc = y[i]
            for j in range(i):
                acc -= M[i][j] * y[j]
            y[i] = acc
        for i in range(n - 1, -1, -1):
            acc = y[i]
            for j in range(i + 1, n):
                acc -= M[i][j] * y[j]
            y[i] = acc / M[i][i]
        return y

    def det(self):
        d = mpmath.mpf(self.sign)
        for i in range(self.n):
            d *= self.M[i][i]
        return d


def _mpf(v):
    v = Fraction(v)
    return mpmath.mpf(v.numerator) / v.denominator


def _coerce(v):
    return _mpf(v) if is_exact_value(v) else v


def lu_factor(A):
    return LU(_as_rows(A))


def _residual(rows, x, b):
    return max((abs(sum((a * xi for a, xi in zip(r, x)), 0) - bi)
                for r, bi in zip(rows, b)), default=0)


def lin_solve(A, b, return_residual=False):
    """Solve the square system ``A x = b``.

    Exact input (all ``Fraction``/``int``) is solved exactly.  Otherwise the
    solve happens at the current mpmath precision and, with
    ``return_residual=True``, ``(x, max|Ax - b|)`` is returned instead of ``x``.
    Raises SingularSystem when no acceptable pivot exists.
    """
    rows = _as_rows(A)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if len(b) != n:
        raise ValueError("right-hand side has wrong length")
    exact = all(is_exact_value(v) for r in rows for v in r) and all(is_exact_value(v) for v in b)
    if exact:
        x = _exact_solve(rows, b)
        return (x, Fraction(0)) if return_residual else x
    x = LU(rows).solve(b)
    if return_residual:
        return x, _residual(rows, x, b)
    return x


def solve_refined(rows, b):
    """Float solve plus one step of iterative refinement.

    The residual is evaluated at twice the working precision.  Returns
    ``(x, rel_correction)`` where ``rel_correction = |dx|/|x|`` estimates the
    forward error of the unrefined solution.
    """
    lu = LU(rows)
    x = lu.solve(b)
    prec = mpmath.mp.prec
    with mpmath.workprec(2 * prec):
        r = [_coerce(bi) - sum((_coerce(a) * xi for a, xi in zip(row, x)), 0)
             for row, bi in zip(rows, b)]
    with mpmath.workprec(prec):
        r = [+ri for ri in r]
        dx = lu.solve(r)
        xnorm = max((abs(v) for v in x), default=mpmath.mpf(0))
        dnorm = max((abs(v) for v in dx), default=mpmath.mpf(0))
        x = [xi + di for xi, di in zip(x, dx)]
        rel = dnorm / xnorm if xnorm else dnorm
    return x, rel


def det(A, return_error=False):
    """Determinant; exact for rational input.

    For float input the value comes from the LU factorization and, with
    ``return_error=True``, is paired with a crude a-priori error bound.
    """
    rows = _as_rows(A)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if all(is_exact_value(v) for r in rows for v in r):
        d = _exact_det(rows)
        return (d, Fraction(0)) if return_error else d
    try:
        lu = LU(rows, threshold_bits=None)
        d = lu.det()
    except SingularSystem:
        d = mpmath.mpf(0)
    if return_error:
        return d, abs(d) * n * mpmath.ldexp(1, -mpmath.mp.prec + PIVOT_GUARD_BITS)
    return d


def rref(rows):
    """Reduced row echelon form over Fractions; returns (R, pivot columns)."""
    R = [[Fraction(v) for v in r] for r in rows]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [v * inv for v in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def nullspace(rows, ncols=None):
    """Basis of the exact null space, one list per basis vector."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve_general(rows, b):
    """Exact solve of a possibly rectangular system with a unique solution.

    Raises NoSolution when inconsistent and NonUnique when underdetermined.
    """
    ncols = len(rows[0]) if rows else 0
    R, pivots = rref([list(r) + [bi] for r, bi in zip(rows, b)])
    if ncols in pivots:
        raise NoSolution("inconsistent linear system")
    if len(pivots) < ncols:
        raise NonUnique(f"solution space has dimension {ncols - len(pivots)}")
    return [R[i][ncols] for i in range(ncols)]
