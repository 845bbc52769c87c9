"""Hermite-Padé approximation at infinity from truncated Laurent series.

Type I: polynomials ``A_j`` (``deg A_j <= n_j - 1``) and ``B`` with

    sum_j A_j(z) f_j(z) - B(z) = O(z^-|n|),

normalized so the coefficient of ``z^-|n|`` is 1.  For Cauchy transforms
of measures this is the moment-side type I normalization, so both routes
give identical polynomials.

Type II: a monic ``P`` of degree ``|n|`` and ``Q_j`` with

    P(z) f_j(z) - Q_j(z) = O(z^-(n_j+1)).

Series with a nonzero polynomial part are handled by imposing the
conditions on their tails only; the polynomial parts are absorbed into
``B`` (type I) or ``Q_j`` (type II).  Results record this in
``poly_part_absorbed``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import (BranchAmbiguity, DomainError, InsufficientTerms,
                     NewtonDivergence, NoSolution, NonNormalIndex, SingularSystem)
from .mopcore import MultiIndex, float_solve_with_retry
from .numerics.domain import EXACT, ScalarDomain, is_exact_value, to_mpc
from .numerics.linalg import lin_solve
from .numerics.poly import Polynomial
from .numerics.roots import poly_roots
from .series import LaurentSeries, wider_domain

__all__ = [
    "HPTypeIResult", "HPTypeIIResult", "AlgebraicCurveSpec",
    "hp_type_i", "hp_type_ii", "pade", "order_of_contact",
    "algebraic_series", "curve_residual", "balance_roots",
    "DEFAULT_GUARD",
]

DEFAULT_GUARD = 4


@dataclass(frozen=True)
class HPTypeIResult:
    A: tuple
    B: Polynomial
    achieved_order: int
    index: MultiIndex = None
    domain: ScalarDomain = EXACT
    poly_part_absorbed: bool = False


@dataclass(frozen=True)
class HPTypeIIResult:
    P: Polynomial
    Q: tuple
    achieved_orders: tuple
    index: MultiIndex = None
    domain: ScalarDomain = EXACT
    poly_part_absorbed: bool = False
    remainder_zero: tuple = field(default=())


def _common_domain(series):
    dom = EXACT
    for s in series:
        dom = wider_domain(dom, s.domain)
    return dom


def _require_terms(series, needed, guard):
    for j, (s, need) in enumerate(zip(series, needed)):
        if s.terms < need + guard:
            raise InsufficientTerms(
                f"series {j} has {s.terms} tail terms; {need} needed plus {guard} guard")


def _solve(rows, rhs, domain, size):
    if domain.is_exact:
        try:
            return lin_solve(rows, rhs)
        except SingularSystem as exc:
            raise NonNormalIndex(f"coefficient system is singular: {exc}") from exc

    def build(prec):
        d = domain.with_prec(prec)
        return ([[d.convert(v) for v in r] for r in rows], [d.convert(v) for v in rhs])

    x, _ = float_solve_with_retry(build, domain, size)
    return x


def hp_type_i(series, n, guard=DEFAULT_GUARD):
    """Type I Hermite-Padé polynomials for ``series`` at multi-index ``n``."""
    series = tuple(series)
    n = MultiIndex.of(n)
    if len(series) != n.r:
        raise ValueError("one series per multi-index component")
    N = n.size
    if N == 0:
        raise NoSolution("type I approximation needs |n| >= 1")
    _require_terms(series, [N + nj - 1 for nj in n], guard)
    domain = _common_domain(series)
    rows = [[s.tail[k + i] for j, s in enumerate(series) for i in range(n[j])]
            for k in range(N)]
    rhs = [0] * (N - 1) + [1]
    if domain.is_exact:
        rhs = [Fraction(v) for v in rhs]
    x = _solve(rows, rhs, domain, N)
    A, pos = [], 0
    for nj in n:
        A.append(Polynomial(x[pos:pos + nj]))
        pos += nj
    with domain.workprec():
        B = _combination(series, A).polynomial()
    order = order_of_contact(series, A, B)
    return HPTypeIResult(tuple(A), B, order, n, domain,
                         poly_part_absorbed=any(s.poly_part for s in series))


def hp_type_ii(series, n, guard=DEFAULT_GUARD):
    """Type II (common denominator) Hermite-Padé approximants."""
    series = tuple(series)
    n = MultiIndex.of(n)
    if len(series) != n.r:
        raise ValueError("one series per multi-index component")
    N = n.size
    domain = _common_domain(series)
    _require_terms(series, [N + nj for nj in n], guard)
    if N == 0:
        P = Polynomial([domain.one])
    else:
        rows, rhs = [], []
        for j, s in enumerate(series):
            for k in range(n[j]):
                rows.append([s.tail[k + i] for i in range(N)])
                rhs.append(-s.tail[k + N])
        x = _solve(rows, rhs, domain, N)
        P = Polynomial(list(x) + [domain.one])
    Q, orders, zero = [], [], []
    for j, s in enumerate(series):
        with domain.workprec():
            prod = s.mul_poly(P)
        Qj = prod.polynomial()
        Q.append(Qj)
        try:
            orders.append(order_of_contact([s], [P], Qj))
            zero.append(False)
        except InsufficientTerms:
            # remainder vanishes on every known coefficient
            orders.append(prod.terms + 1)
            zero.append(True)
    return HPTypeIIResult(P, tuple(Q), tuple(orders), n, domain,
                          poly_part_absorbed=any(s.poly_part for s in series),
                          remainder_zero=tuple(zero))


def pade(series, n, guard=DEFAULT_GUARD):
    """Padé approximant ``Q/P`` at infinity (the single-function case)."""
    return hp_type_ii([series], (n,), guard=guard)


def _combination(series, A):
    total = None
    for s, a in zip(series, A):
        term = s.mul_poly(a)
        total = term if total is None else total + term
    return total


def _abs_series(s):
    return LaurentSeries(tuple(abs(c) for c in s.poly_part), tuple(abs(c) for c in s.tail),
                         EXACT)


def order_of_contact(series, A, B, tol=None):
    """Largest ``m`` with ``sum_j A_j f_j - B = O(z^-m)`` on the known coefficients.

    In a floating domain a coefficient counts as zero when it is below
    ``tol`` (default ``2**(-prec/2)``) times the sum of the magnitudes of
    the terms producing it.
    """
    series = tuple(series)
    A = [a if isinstance(a, Polynomial) else Polynomial(a) for a in A]
    domain = _common_domain(series)
    if any(not is_exact_value(c) for a in A for c in a.coeffs):
        domain = wider_domain(domain, ScalarDomain.complex(max(domain.prec or 0, 64)))
    if domain.is_exact:
        return _order_scan(_combination(series, A) - B, None, None)
    with domain.workprec():
        R = _combination(series, A) - B
        eps = tol if tol is not None else mpmath.ldexp(1, -(domain.prec // 2))
        scale = _combination([_abs_series(s) for s in series],
                             [Polynomial([abs(c) for c in a.coeffs]) for a in A])
        scale = scale + Polynomial([abs(c) for c in B.coeffs])
        return _order_scan(R, scale, eps)


def _order_scan(R, scale, eps):
    if scale is None:
        def is_zero(c, _scale):
            return c == 0
    else:
        def is_zero(c, s):
            return abs(c) <= eps * s

    for x in range(R.top, -1, -1):
        if not is_zero(R.coefficient(x), scale.coefficient(x) if scale else None):
            return -x
    for j, c in enumerate(R.tail):
        if not is_zero(c, scale.tail[j] if scale else None):
            return j + 1
    raise InsufficientTerms("remainder vanishes on all known coefficients")


# ---------------------------------------------------------------------------
# algebraic functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicCurveSpec:
    """Curve ``sum_m c_m(z) w^m = 0`` and the branch to expand at infinity.

    ``coefficients[m]`` is a Polynomial (or LaurentSeries) in ``z``.
    ``branch_seed`` approximates the leading coefficient ``c`` of the
    branch ``w ~ c z^exponent``; ``exponent`` defaults to the steepest
    integer slope of the Newton polygon at infinity.
    """

    coefficients: tuple
    branch_seed: object
    exponent: int = None

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if not coeffs or _is_zero_coef(coeffs[-1]):
            raise ValueError("leading coefficient of the curve must not vanish")
        object.__setattr__(self, "coefficients", coeffs)


def _is_zero_coef(c):
    if isinstance(c, Polynomial):
        return c.is_zero()
    if isinstance(c, LaurentSeries):
        return not any(c.poly_part) and not any(c.tail)
    return c == 0


def _coef_t(c):
    """``c(z) = z^d * gamma(t)`` with ``gamma(0) != 0``; returns (d, gamma, valid_len)."""
    if isinstance(c, LaurentSeries):
        e, u = c.to_t()
        valid = len(u)
    else:
        if not isinstance(c, Polynomial):
            c = Polynomial([c])
        e, u = c.degree, list(reversed(c.coeffs))
        valid = None
    shift = next((k for k, v in enumerate(u) if v != 0), None)
    if shift is None:
        return None
    return e - shift, u[shift:], (None if valid is None else valid - shift)


def _newton_polygon(ds, exponent):
    """Exponent ``e`` of the branch and the shift ``D = max_m (d_m + m e)``."""
    if exponent is None:
        cands = set()
        ms = sorted(ds)
        for i, m1 in enumerate(ms):
            for m2 in ms[i + 1:]:
                num = ds[m1] - ds[m2]
                if num % (m2 - m1) == 0:
                    cands.add(num // (m2 - m1))
        valid = [e for e in cands
                 if sum(1 for m in ds if ds[m] + m * e == max(ds[k] + k * e for k in ds)) >= 2]
        if not valid:
            raise DomainError("no integer-slope branch at infinity (Puiseux expansions unsupported)")
        exponent = max(valid)
    D = max(ds[m] + m * exponent for m in ds)
    return exponent, D


def _prepare(curve):
    parts = {}
    for m, c in enumerate(curve.coefficients):
        info = _coef_t(c)
        if info is not None:
            parts[m] = info
    ds = {m: info[0] for m, info in parts.items()}
    e, D = _newton_polygon(ds, curve.exponent)
    shifts = {m: D - ds[m] - m * e for m in parts}
    return parts, e, shifts


def balance_roots(curve, precision=256):
    """Leading coefficients of all branches with the curve's exponent."""
    parts, e, shifts = _prepare(curve)
    bal = _balance_poly(parts, shifts)
    return e, list(poly_roots(bal, precision).points)


def _balance_poly(parts, shifts):
    top = max(parts)
    coeffs = [0] * (top + 1)
    for m, (_, gamma, _) in parts.items():
        if shifts[m] == 0:
            coeffs[m] = gamma[0]
    return Polynomial(coeffs)


def _series_mul(a, b, n):
    out = [0] * n
    for i in range(min(len(a), n)):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += ai * b[j]
    return out


def _series_inv(a, n):
    if a[0] == 0:
        raise NewtonDivergence("derivative series has zero constant term")
    inv0 = 1 / a[0]
    out = [inv0] + [0] * (n - 1)
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            acc += a[i] * out[k - i]
        out[k] = -acc * inv0
    return out


def _evaluate(parts, shifts, u, n, convert):
    """``F(t, u)`` and ``F_u(t, u)`` modulo ``t^n``."""
    top = max(parts)
    gam = {}
    for m, (_, gamma, _) in parts.items():
        s = shifts[m]
        g = [0] * min(n, s) + [convert(c) for c in gamma[:max(n - s, 0)]]
        gam[m] = g + [0] * (n - len(g))
    zero = [0] * n
    F = list(zero)
    Fu = list(zero)
    # Horner in u for F and its u-derivative
    for m in range(top, -1, -1):
        Fu = [x + y for x, y in zip(_series_mul(Fu, u, n), F)]
        F = _series_mul(F, u, n)
        if m in gam:
            F = [x + y for x, y in zip(F, gam[m])]
    return F, Fu


def _pick_root(roots, seed, precision):
    dist = sorted((abs(r - seed), i) for i, r in enumerate(roots))
    if len(dist) > 1:
        d1, d2 = dist[0][0], dist[1][0]
        if d2 - d1 <= mpmath.ldexp(1, -(precision // 2)) * (1 + abs(seed)):
            raise BranchAmbiguity(
                f"seed {mpmath.nstr(seed, 8)} is equidistant from two branches")
    return roots[dist[0][1]]


def algebraic_series(curve, terms, precision=512):
    """Laurent expansion at infinity of the branch selected by ``curve.branch_seed``.

    Newton iteration on truncated series in ``t = 1/z``, doubling the
    number of correct coefficients per step.  Stays in exact rational
    arithmetic when the curve and the seed are rational and the seed is an
    exact root of the dominant balance; otherwise works in BigComplex at
    ``precision`` bits.  The returned series has ``terms`` tail coefficients.
    """
    parts, e, shifts = _prepare(curve)
    L = terms + e + 1
    if L < 1:
        raise ValueError("too few terms for this branch")
    for m, (_, _, valid) in parts.items():
        if valid is not None and valid + shifts[m] < L:
            raise InsufficientTerms(f"coefficient c_{m} is truncated too early")
    bal = _balance_poly(parts, shifts)
    seed = curve.branch_seed
    exact = (bal.is_exact and is_exact_value(seed) and bal(Fraction(seed)) == 0
             and bal.derivative()(Fraction(seed)) != 0)
    if exact:
        domain = EXACT
        u0 = Fraction(seed)
        convert = Fraction
    else:
        domain = ScalarDomain.complex(precision)
        work = precision + 32
        with mpmath.workprec(work):
            seed_c = to_mpc(seed) if not isinstance(seed, (tuple, list)) else to_mpc(tuple(seed))
            if not (mpmath.isfinite(seed_c.real) and mpmath.isfinite(seed_c.imag)):
                raise NewtonDivergence("branch seed is not finite")
            roots = list(poly_roots(bal, work).points)
            u0 = _pick_root(roots, seed_c, precision)
            if abs(bal.derivative().map(to_mpc)(u0)) <= mpmath.ldexp(1, -(precision // 2)):
                raise BranchAmbiguity("branches coalesce at infinity (repeated balance root)")
        convert = to_mpc
    with mpmath.workprec(precision + 32):
        u = [convert(u0) if not exact else u0]
        have = 1
        while have < L:
            want = min(2 * have, L)
            u = u + [0] * (want - len(u))
            F, Fu = _evaluate(parts, shifts, u, want, convert)
            if not exact and Fu[0] == 0:
                raise NewtonDivergence("zero derivative at the seed")
            delta = _series_mul(F, _series_inv(Fu, want), want)
            u = [a - b for a, b in zip(u, delta)]
            have = want
        if not exact:
            F, _ = _evaluate(parts, shifts, u, L, convert)
            eps = mpmath.ldexp(1, -(precision // 2))
            scale = max(1, max(abs(c) for c in u))
            if any(abs(c) > eps * scale for c in F):
                raise NewtonDivergence("series Newton iteration failed to converge")
    with mpmath.workprec(precision):
        if not exact:
            u = [+c for c in u]
        return LaurentSeries.from_t(e, u, domain)


def curve_residual(curve, series, terms=None):
    """Coefficients of ``F(t, w)`` after substituting ``series`` into the curve.

    ``F`` is the curve equation scaled by ``z^-D`` so that its constant term
    is the dominant balance.  The first ``terms`` coefficients are returned.
    """
    parts, e, shifts = _prepare(curve)
    L = series.terms + e + 1
    if terms is not None:
        L = min(L, terms)
    u = [series.coefficient(e - k) for k in range(L)]
    convert = (lambda c: c) if series.domain.is_exact else to_mpc
    prec = series.domain.prec or 64
    with mpmath.workprec(2 * prec):
        F, _ = _evaluate(parts, shifts, u, L, convert if series.domain.is_exact else to_mpc)
    return F
