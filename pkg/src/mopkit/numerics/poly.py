"""Dense univariate polynomials over any scalar domain."""

from fractions import Fraction

import mpmath

from .domain import EXACT, infer_domain, is_exact_value

__all__ = ["Polynomial"]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _exactify(c):
    return Fraction(c) if isinstance(c, int) else c


class Polynomial:
    """Coefficient vector, lowest degree first.

    Trailing zeros are dropped so that equal polynomials compare equal and
    ``degree`` is well defined.  The zero polynomial has degree -1.

    >>> p = Polynomial([Fraction(1, 6), -1, 1])
    >>> str(p)
    'x^2 - x + 1/6'
    >>> p(Fraction(1, 2))
    Fraction(-1, 12)
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(_exactify(c) for c in coeffs)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def from_roots(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def domain(self):
        if not self.coeffs:
            return EXACT
        return infer_domain(self.coeffs)

    @property
    def is_exact(self):
        return all(is_exact_value(c) for c in self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        return self.format()

    def format(self, var="x", digits=20):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if isinstance(c, (Fraction, int)):
                neg = c < 0
                mag = abs(c)
                text = str(mag)
                if mag == 1 and k > 0:
                    text = ""
            elif isinstance(c, mpmath.mpc):
                neg = False
                text = f"({mpmath.nstr(c, digits)})"
            else:
                neg = c < 0
                text = mpmath.nstr(abs(c), digits)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            terms.append((neg, text + ("*" if text and mono else "") + mono))
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial([other]) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Polynomial):
            raise TypeError("use divmod for polynomial division")
        if is_exact_value(scalar):
            scalar = Fraction(scalar)
        return Polynomial([c / scalar for c in self.coeffs])

    def __pow__(self, k):
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def shift_up(self, k=1):
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Polynomial([0] * k + list(self.coeffs))

    def monic(self):
        return self / self.leading

    def derivative(self):
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def map(self, fn):
        return Polynomial([fn(c) for c in self.coeffs])

    def to_domain(self, domain):
        """Coefficients converted into ``domain`` (inside its working precision)."""
        with domain.workprec():
            return Polynomial([domain.convert(c) for c in self.coeffs])

    def padded(self, length):
        """Coefficient list of exactly ``length`` entries (zero filled)."""
        if len(self.coeffs) > length:
            raise ValueError("polynomial longer than requested length")
        return list(self.coeffs) + [0] * (length - len(self.coeffs))
