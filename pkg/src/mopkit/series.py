"""Truncated Laurent series at infinity.

A :class:`LaurentSeries` stores a polynomial part and the first ``N`` tail
coefficients of

    f(z) = poly_part(z) + sum_{k<N} c_k z^(-k-1) + O(z^(-N-1)).

Coefficients beyond the stored tail are *unknown*, not zero; every
operation propagates that truncation and never reports coefficients it
cannot vouch for.
"""

from dataclasses import dataclass

from .numerics.domain import EXACT, ScalarDomain
from .numerics.poly import Polynomial

__all__ = ["LaurentSeries", "wider_domain"]


def wider_domain(a, b):
    if a.is_exact:
        return b
    if b.is_exact:
        return a
    kind = "complex" if "complex" in (a.kind, b.kind) else "real"
    return ScalarDomain(kind, max(a.prec, b.prec))


def _trim_poly(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class LaurentSeries:
    poly_part: tuple
    tail: tuple
    domain: ScalarDomain = EXACT

    def __post_init__(self):
        poly = self.poly_part
        if isinstance(poly, Polynomial):
            poly = poly.coeffs
        object.__setattr__(self, "poly_part", _trim_poly(poly))
        object.__setattr__(self, "tail", tuple(self.tail))

    @property
    def terms(self):
        """Number of known tail coefficients."""
        return len(self.tail)

    @property
    def top(self):
        """Exponent of the leading stored coefficient (``-1`` when no polynomial part)."""
        return len(self.poly_part) - 1 if self.poly_part else -1

    def polynomial(self):
        return Polynomial(self.poly_part)

    def coefficient(self, exponent):
        """Coefficient of ``z**exponent``; IndexError if beyond the truncation."""
        if exponent >= 0:
            return self.poly_part[exponent] if exponent < len(self.poly_part) else 0
        j = -exponent - 1
        if j >= len(self.tail):
            raise IndexError(f"z^{exponent} lies beyond the truncation order")
        return self.tail[j]

    def truncate(self, terms):
        if terms > self.terms:
            raise ValueError("cannot extend a truncated series")
        return LaurentSeries(self.poly_part, self.tail[:terms], self.domain)

    # -- t = 1/z representation: f = z^e * sum u_k t^k -------------------

    def to_t(self):
        e = self.top
        u = list(reversed(self.poly_part)) + list(self.tail)
        return e, u

    @classmethod
    def from_t(cls, e, u, domain=EXACT):
        poly, tail = [], []
        for k, c in enumerate(u):
            exp = e - k
            if exp >= 0:
                poly.append((exp, c))
            else:
                tail.append((-exp - 1, c))
        pp = [0] * (max((x for x, _ in poly), default=-1) + 1)
        for x, c in poly:
            pp[x] = c
        n_tail = len(u) - (e + 1) if e >= -1 else len(u) + (-e - 1)
        tt = [0] * max(n_tail, 0)
        for j, c in tail:
            tt[j] = c
        return cls(tuple(pp), tuple(tt), domain)

    # -- arithmetic -------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return self.mul_poly(other)
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(tuple(c * other for c in self.poly_part),
                                 tuple(c * other for c in self.tail), self.domain)
        e1, u1 = self.to_t()
        e2, u2 = other.to_t()
        n = min(len(u1), len(u2))
        out = [0] * n
        for i in range(n):
            a = u1[i]
            if a == 0:
                continue
            for j in range(n - i):
                out[i + j] += a * u2[j]
        return LaurentSeries.from_t(e1 + e2, out, wider_domain(self.domain, other.domain))

    __rmul__ = __mul__

    def mul_poly(self, poly):
        """Product with a polynomial of degree d; d tail coefficients become unknown."""
        e, u = self.to_t()
        if poly.is_zero():
            return LaurentSeries((), (0,) * self.terms, self.domain)
        d = poly.degree
        rev = list(reversed(poly.coeffs))
        # coefficient k uses u_{k-i} for i <= d, all known while k < len(u)
        out = [0] * len(u)
        for i, a in enumerate(rev):
            if a == 0:
                continue
            for k in range(i, len(u)):
                out[k] += a * u[k - i]
        return LaurentSeries.from_t(e + d, out, self.domain)

    def __add__(self, other):
        if isinstance(other, Polynomial):
            n_tail = self.terms
            other_dom = EXACT
            other_coef = lambda x: other[x] if x >= 0 else 0  # noqa: E731
        else:
            n_tail = min(self.terms, other.terms)
            other_dom = other.domain
            other_coef = other.coefficient
            other = other.polynomial()
        top = max(self.top, other.degree)
        poly = [self.coefficient(x) + other_coef(x) for x in range(top + 1)]
        tail = [self.coefficient(-j - 1) + other_coef(-j - 1) for j in range(n_tail)]
        return LaurentSeries(tuple(poly), tuple(tail), wider_domain(self.domain, other_dom))

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def polynomial_part(self):
        return self.polynomial()

    def without_polynomial_part(self):
        return LaurentSeries((), self.tail, self.domain)

    def to_domain(self, domain):
        with domain.workprec():
            return LaurentSeries(tuple(domain.convert(c) for c in self.poly_part),
                                 tuple(domain.convert(c) for c in self.tail), domain)
