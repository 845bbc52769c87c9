"""Type I, type II and mixed multiple orthogonal polynomials from moments.

Everything here is assembled from the measures' moment sequences: an
integral ``int x^k p(x) dmu_j`` is always expanded as ``sum_i p_i m_j(k+i)``,
never evaluated by quadrature.

Canonical orderings
-------------------
Type II unknowns are the non-leading coefficients ``p_0 .. p_{N-1}`` of the
monic ``P_n`` (``N = |n|``); the rows are the conditions ``(j, k)`` for
``j = 1..r`` and ``k = 0..n_j-1``.  Type I unknowns are the coefficients
``a_{j,i}`` (``i = 0..n_j-1``) of ``A_{n,j}``, listed block by block; the
rows are ``k = 0..N-1``.  With these orderings the type I matrix is exactly
the transpose of the type II matrix.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import gcd, lcm

import mpmath

from .errors import (IllConditioned, NoFit, NonNormalIndex,
                     NonUnique, NoSolution, SingularSystem)
from .measures import moment
from .numerics.domain import EXACT, ScalarDomain
from .numerics.linalg import (DenseMatrix, det, lin_solve, nullspace,
                              solve_general, solve_refined)
from .numerics.poly import Polynomial

__all__ = [
    "MultiIndex", "multi_indices", "lattice_paths",
    "Systems", "TypeISolution", "TypeIISolution", "MixedSystemSpec", "LinearForm",
    "NNRecurrenceData",
    "assemble_systems", "type_i", "type_ii", "is_normal", "perfectness_scan",
    "mixed_solve", "biortho_table", "nn_recurrence", "integrate",
    "float_solve_with_retry",
]

MAX_RETRIES = 4


# ---------------------------------------------------------------------------
# multi-indices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class MultiIndex:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("a multi-index needs at least one component")
        if any(p < 0 for p in parts):
            raise ValueError("multi-index components must be non-negative")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, value):
        if isinstance(value, MultiIndex):
            return value
        if isinstance(value, int):
            return cls((value,))
        if isinstance(value, str):
            return cls(tuple(int(v) for v in value.replace("(", "").replace(")", "").split(",") if v.strip()))
        return cls(tuple(value))

    @classmethod
    def zero(cls, r):
        return cls((0,) * r)

    @property
    def size(self):
        return sum(self.parts)

    @property
    def r(self):
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, j):
        return self.parts[j]

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def shifted(self, j, delta=1):
        parts = list(self.parts)
        parts[j] += delta
        return MultiIndex(tuple(parts))

    def unit(self, j):
        return MultiIndex(tuple(int(i == j) for i in range(self.r)))

    def dominated_by(self, other):
        return all(a <= b for a, b in zip(self.parts, other.parts))


def multi_indices(r, max_size, min_size=0):
    """All multi-indices in N^r with ``min_size <= |n| <= max_size``, size-major."""
    out = []
    for size in range(min_size, max_size + 1):
        for combo in combinations_with_replacement(range(r), size):
            parts = [0] * r
            for j in combo:
                parts[j] += 1
            out.append(MultiIndex(tuple(parts)))
    # combinations_with_replacement already yields a deterministic order; sort
    # within each size for a stable, readable listing
    return sorted(out, key=lambda m: (m.size, tuple(-p for p in m.parts)))


def lattice_paths(n):
    """Every monotone path of multi-indices from zero to ``n``."""
    n = MultiIndex.of(n)

    def extend(cur):
        if cur == n:
            yield [cur]
            return
        for j in range(n.r):
            if cur[j] < n[j]:
                for rest in extend(cur.shifted(j)):
                    yield [cur] + rest

    return [tuple(p) for p in extend(MultiIndex.zero(n.r))]


def _check_shape(measures, n):
    n = MultiIndex.of(n)
    measures = tuple(measures)
    if len(measures) != n.r:
        raise ValueError(f"{len(measures)} measures for a multi-index of length {n.r}")
    return measures, n


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Systems:
    M_I: DenseMatrix
    M_II: DenseMatrix
    rhs_II: tuple

    def __iter__(self):
        return iter((self.M_I, self.M_II, self.rhs_II))


def _type_ii_rows(measures, n):
    N = n.size
    rows, rhs = [], []
    for j, mu in enumerate(measures):
        for k in range(n[j]):
            rows.append([moment(mu, k + i) for i in range(N)])
            rhs.append(-moment(mu, k + N))
    return rows, rhs


def _type_i_rows(measures, n):
    N = n.size
    return [[moment(mu, k + i) for j, mu in enumerate(measures) for i in range(n[j])]
            for k in range(N)]


def assemble_systems(measures, n):
    """Type I and type II moment matrices for ``n`` (see module docstring)."""
    measures, n = _check_shape(measures, n)
    rows_ii, rhs_ii = _type_ii_rows(measures, n)
    rows_i = _type_i_rows(measures, n)
    return Systems(DenseMatrix.from_rows(rows_i, EXACT),
                   DenseMatrix.from_rows(rows_ii, EXACT),
                   tuple(rhs_ii))


def integrate(poly, mu, k=0, domain=EXACT):
    """``int x^k poly(x) dmu`` through the moment sequence."""
    if domain.is_exact:
        return sum((c * moment(mu, k + i) for i, c in enumerate(poly.coeffs)), Fraction(0))
    with domain.workprec():
        return sum((c * domain.convert(moment(mu, k + i)) for i, c in enumerate(poly.coeffs)),
                   domain.zero)


def float_solve_with_retry(build, domain, size, exact_fallback=None):
    """Solve a float system, doubling precision until it is trustworthy.

    ``build(prec)`` returns ``(rows, rhs)`` at working precision ``prec``.
    A solve is accepted once one step of iterative refinement moves the
    solution by less than ``2**(-domain.prec/2)`` relative.  Starting
    precision is ``max(domain.prec, 64 + 16*size)``; at most
    ``MAX_RETRIES`` doublings are tried.  Returns ``(x, working_prec)``.
    """
    prec = max(domain.prec, 64 + 16 * size)
    target = mpmath.ldexp(1, -(domain.prec // 2))
    for _ in range(MAX_RETRIES + 1):
        with mpmath.workprec(prec):
            rows, rhs = build(prec)
            try:
                x, rel = solve_refined(rows, rhs)
            except SingularSystem as exc:
                if exc.exact_zero:
                    raise NonNormalIndex(str(exc)) from exc
                rel = None
            if rel is not None and rel <= target:
                with mpmath.workprec(domain.prec):
                    return [+v for v in x], prec
        prec *= 2
    if exact_fallback is not None and not exact_fallback():
        raise NonNormalIndex("system matrix is exactly singular")
    raise IllConditioned(
        f"no accurate solve up to {prec // 2} bits (target {domain.prec // 2} bits)")


# ---------------------------------------------------------------------------
# type II
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeIISolution:
    index: MultiIndex
    poly: Polynomial
    residuals: tuple
    domain: ScalarDomain = EXACT

    @property
    def max_residual(self):
        return max((abs(r) for r in self.residuals), default=0)


def _type_ii_residuals(measures, n, poly, domain):
    return tuple(integrate(poly, mu, k, domain)
                 for j, mu in enumerate(measures) for k in range(n[j]))


@lru_cache(maxsize=4096)
def _type_ii_exact(measures, n):
    N = n.size
    if N == 0:
        return Polynomial([1])
    rows, rhs = _type_ii_rows(measures, n)
    try:
        x = lin_solve(rows, rhs)
    except SingularSystem as exc:
        raise NonNormalIndex(f"multi-index {n} is not normal") from exc
    return Polynomial(list(x) + [Fraction(1)])


def type_ii(measures, n, domain=EXACT):
    """Monic type II polynomial ``P_n``.

    Raises NonNormalIndex when the moment system is singular.
    """
    measures, n = _check_shape(measures, n)
    if domain.is_exact:
        poly = _type_ii_exact(measures, n)
    elif n.size == 0:
        with domain.workprec():
            poly = Polynomial([domain.one])
    else:
        def build(prec):
            d = domain.with_prec(prec)
            rows, rhs = _type_ii_rows(measures, n)
            return ([[d.convert(v) for v in r] for r in rows], [d.convert(v) for v in rhs])

        x, _ = float_solve_with_retry(build, domain, n.size,
                                      exact_fallback=lambda: is_normal(measures, n))
        with domain.workprec():
            poly = Polynomial(x + [domain.one])
    return TypeIISolution(n, poly, _type_ii_residuals(measures, n, poly, domain), domain)


# ---------------------------------------------------------------------------
# type I
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeISolution:
    """``(A_{n,1}, ..., A_{n,r})`` with the last-moment normalization.

    When ``moments_normalized`` is set, the polynomials belong to the
    measures divided by their total mass (hermite_external); against the
    unnormalized measures ``A_j`` must be divided by ``m_0(mu_j)``.
    """

    index: MultiIndex
    polys: tuple
    normalization_value: object
    residuals: tuple
    moments_normalized: bool = False
    domain: ScalarDomain = EXACT

    @property
    def max_residual(self):
        return max((abs(r) for r in self.residuals), default=0)


def _type_i_pairing(measures, polys, k, domain):
    if domain.is_exact:
        return sum((integrate(p, mu, k) for p, mu in zip(polys, measures)), Fraction(0))
    with domain.workprec():
        return sum((integrate(p, mu, k, domain) for p, mu in zip(polys, measures)), domain.zero)


def _split(x, n):
    polys, pos = [], 0
    for nj in n:
        polys.append(Polynomial(x[pos:pos + nj]))
        pos += nj
    return tuple(polys)


@lru_cache(maxsize=4096)
def _type_i_exact(measures, n):
    N = n.size
    rows = _type_i_rows(measures, n)
    rhs = [Fraction(0)] * (N - 1) + [Fraction(1)]
    try:
        x = lin_solve(rows, rhs)
    except SingularSystem as exc:
        raise NonNormalIndex(f"multi-index {n} is not normal") from exc
    return _split(x, n)


def type_i(measures, n, domain=EXACT):
    """Type I vector normalized so the pairing with ``x^(|n|-1)`` equals 1."""
    measures, n = _check_shape(measures, n)
    N = n.size
    if N == 0:
        raise NoSolution("type I polynomials need |n| >= 1 (the normalization has no unknowns)")
    if domain.is_exact:
        polys = _type_i_exact(measures, n)
    else:
        def build(prec):
            d = domain.with_prec(prec)
            rows = _type_i_rows(measures, n)
            rhs = [0] * (N - 1) + [1]
            return ([[d.convert(v) for v in r] for r in rows], [d.convert(v) for v in rhs])

        x, _ = float_solve_with_retry(build, domain, N,
                                      exact_fallback=lambda: is_normal(measures, n))
        polys = _split(x, n)
    residuals = tuple(_type_i_pairing(measures, polys, k, domain) for k in range(N - 1))
    norm = _type_i_pairing(measures, polys, N - 1, domain)
    return TypeISolution(n, polys, norm, residuals,
                         moments_normalized=any(mu.normalized for mu in measures),
                         domain=domain)


# ---------------------------------------------------------------------------
# normality
# ---------------------------------------------------------------------------

def is_normal(measures, n):
    """True iff the type II moment matrix is nonsingular (exact determinant)."""
    measures, n = _check_shape(measures, n)
    if n.size == 0:
        return True
    rows, _ = _type_ii_rows(measures, n)
    return det(rows) != 0


def perfectness_scan(measures, max_size):
    """Non-normal multi-indices with ``1 <= |n| <= max_size`` (empty list: perfect so far)."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    measures = tuple(measures)
    return [n for n in multi_indices(len(measures), max_size, min_size=1)
            if not is_normal(measures, n)]


# ---------------------------------------------------------------------------
# mixed type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearForm:
    """``sum coef * int x^k poly_u(x) dmu_m = 0`` for ``k < order``.

    ``terms`` holds ``(coefficient, measure position, unknown id)`` triples.
    """

    terms: tuple
    order: int


@dataclass(frozen=True)
class MixedSystemSpec:
    """A mixed-type system of moment conditions and point constraints.

    ``degrees`` maps each unknown id to its degree cap (insertion order is
    the unknown order).  ``solution`` declares the expected solution space:
    ``"nullspace"`` (one dimension, normalized to coprime integers) or
    ``"unique"``.  Unknowns listed in ``nonzero`` must not vanish
    identically in an acceptable solution.
    """

    degrees: dict
    forms: tuple
    point_constraints: tuple = ()
    solution: str = "nullspace"
    nonzero: tuple = ()

    def __post_init__(self):
        if self.solution not in ("nullspace", "unique"):
            raise ValueError("solution must be 'nullspace' or 'unique'")
        ids = set(self.degrees)
        for form in self.forms:
            for _, _, uid in form.terms:
                if uid not in ids:
                    raise ValueError(f"form references unknown {uid!r}")
        for uid, _, _ in self.point_constraints:
            if uid not in ids:
                raise ValueError(f"point constraint references unknown {uid!r}")
        expected = self.unknown_count - (1 if self.solution == "nullspace" else 0)
        if self.constraint_count != expected:
            raise ValueError(
                f"{self.constraint_count} constraints for {self.unknown_count} unknown "
                f"coefficients; a {self.solution} system needs {expected}")

    @property
    def unknown_count(self):
        return sum(d + 1 for d in self.degrees.values())

    @property
    def constraint_count(self):
        return sum(f.order for f in self.forms) + len(self.point_constraints)

    def offsets(self):
        out, pos = {}, 0
        for uid, d in self.degrees.items():
            out[uid] = pos
            pos += d + 1
        return out


def _mixed_rows(spec, measures):
    offsets = spec.offsets()
    ncols = spec.unknown_count
    rows, rhs = [], []
    for form in spec.forms:
        for k in range(form.order):
            row = [Fraction(0)] * ncols
            for coef, m, uid in form.terms:
                coef = Fraction(coef)
                for i in range(spec.degrees[uid] + 1):
                    row[offsets[uid] + i] += coef * moment(measures[m], k + i)
            rows.append(row)
            rhs.append(Fraction(0))
    for uid, point, value in spec.point_constraints:
        row = [Fraction(0)] * ncols
        point = Fraction(point)
        for i in range(spec.degrees[uid] + 1):
            row[offsets[uid] + i] = point ** i
        rows.append(row)
        rhs.append(Fraction(value))
    return rows, rhs


def _normalize_integer(vec, spec):
    """Scale to coprime integers; leading coefficient of the first nonzero unknown positive."""
    m = lcm(*(v.denominator for v in vec))
    ints = [int(v * m) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    offsets = spec.offsets()
    for uid, d in spec.degrees.items():
        block = ints[offsets[uid]:offsets[uid] + d + 1]
        lead = next((v for v in reversed(block) if v != 0), 0)
        if lead:
            if lead < 0:
                ints = [-v for v in ints]
            break
    return [Fraction(v) for v in ints]


def mixed_solve(spec, measures, domain=EXACT):
    """Solve a mixed-type system; returns one polynomial per unknown, in order.

    The solve is exact; a floating ``domain`` only rounds the final
    coefficients.  Raises NoSolution (inconsistent, or a ``nonzero``
    unknown vanishes) and NonUnique (solution space too large).
    """
    measures = tuple(measures)
    rows, rhs = _mixed_rows(spec, measures)
    ncols = spec.unknown_count
    if spec.solution == "nullspace":
        if any(rhs):
            raise ValueError("a nullspace system must be homogeneous")
        basis = nullspace(rows, ncols)
        if not basis:
            raise NoSolution("only the trivial solution exists")
        if len(basis) > 1:
            raise NonUnique(f"solution space has dimension {len(basis)}")
        vec = _normalize_integer(basis[0], spec)
    else:
        vec = solve_general(rows, rhs)
    offsets = spec.offsets()
    polys = [Polynomial(vec[offsets[u]:offsets[u] + d + 1]) for u, d in spec.degrees.items()]
    named = dict(zip(spec.degrees, polys))
    for uid in spec.nonzero:
        if named[uid].is_zero():
            raise NoSolution(f"unknown {uid!r} vanishes identically")
    if not domain.is_exact:
        polys = [p.to_domain(domain) for p in polys]
    return polys


# ---------------------------------------------------------------------------
# biorthogonality and recurrences
# ---------------------------------------------------------------------------

def biortho_table(measures, m, n):
    """``sum_j int P_n(x) A_{m,j}(x) dmu_j`` in exact arithmetic."""
    measures, m = _check_shape(measures, m)
    _, n = _check_shape(measures, n)
    P = type_ii(measures, n).poly
    A = type_i(measures, m).polys
    return sum((integrate(P * Aj, mu) for Aj, mu in zip(A, measures)), Fraction(0))


@dataclass(frozen=True)
class NNRecurrenceData:
    """Nearest-neighbor recurrence coefficients at ``index``.

    For every direction ``j``::

        x P_n = P_{n+e_j} + b[j] P_n + sum_i a[j][i] P_{n-e_i}

    ``a[j][i]`` is ``None`` when ``n_i = 0``.  ``residual_polys[j]`` is the
    left side minus the right side after fitting; it is the zero polynomial
    when the recurrence holds exactly.
    """

    index: MultiIndex
    b: tuple
    a: tuple
    residual_polys: tuple = field(default=())

    @property
    def exact(self):
        return all(p.is_zero() for p in self.residual_polys)

    @property
    def residual_poly(self):
        """First nonzero residual, or the zero polynomial."""
        return next((p for p in self.residual_polys if not p.is_zero()), Polynomial())


def nn_recurrence(measures, n, directions=None):
    """Fit and verify the nearest-neighbor recurrence at ``n``.

    The fit is an exact linear solve over all ``|n|+1`` coefficients, so an
    inconsistent ansatz is reported (NoFit) rather than assumed away.
    """
    measures, n = _check_shape(measures, n)
    if directions is None:
        directions = range(n.r)
    down = [i for i in range(n.r) if n[i] > 0]
    try:
        Pn = type_ii(measures, n).poly
        Pdown = {i: type_ii(measures, n.shifted(i, -1)).poly for i in down}
        Pup = {j: type_ii(measures, n.shifted(j)).poly for j in directions}
    except NonNormalIndex as exc:
        raise NonNormalIndex(f"a neighbor of {n} is not normal: {exc}") from exc
    x = Polynomial.x()
    N = n.size
    basis = [Pn] + [Pdown[i] for i in down]
    rows = [[p[c] for p in basis] for c in range(N + 1)]
    bs, as_, residuals = [], [], []
    for j in directions:
        target = x * Pn - Pup[j]
        rhs = [target[c] for c in range(N + 1)]
        if target.degree > N:
            raise NoFit("x P_n - P_{n+e_j} has unexpected degree")
        try:
            sol = solve_general(rows, rhs)
        except NoSolution as exc:
            raise NoFit(f"recurrence ansatz fails at {n}, direction {j}") from exc
        except NonUnique as exc:
            raise NonUnique(f"recurrence coefficients not determined at {n}") from exc
        b = sol[0]
        a = [None] * n.r
        fit = b * Pn
        for i, coef in zip(down, sol[1:]):
            a[i] = coef
            fit = fit + coef * Pdown[i]
        bs.append(b)
        as_.append(tuple(a))
        residuals.append(target - fit)
    return NNRecurrenceData(n, tuple(bs), tuple(as_), tuple(residuals))

