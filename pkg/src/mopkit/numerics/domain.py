"""Scalar domains: exact rationals and arbitrary-precision real/complex."""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

EXACT_KINDS = ("exact",)
FLOAT_KINDS = ("real", "complex")
MIN_PRECISION = 64


@dataclass(frozen=True)
class ScalarDomain:
    """Where coefficient arithmetic happens.

    ``kind`` is ``"exact"`` (Python ``Fraction``), ``"real"`` (``mpf``) or
    ``"complex"`` (``mpc``); ``prec`` is the binary precision for the two
    floating kinds and ``None`` for exact.
    """

    kind: str = "exact"
    prec: int = None

    def __post_init__(self):
        if self.kind == "exact":
            if self.prec is not None:
                raise ValueError("exact domain takes no precision")
        elif self.kind in FLOAT_KINDS:
            if self.prec is None or self.prec < MIN_PRECISION:
                raise ValueError(
                    f"{self.kind} domain needs precision >= {MIN_PRECISION} bits")
        else:
            raise ValueError(f"unknown domain kind {self.kind!r}")

    @classmethod
    def real(cls, bits):
        return cls("real", int(bits))

    @classmethod
    def complex(cls, bits):
        return cls("complex", int(bits))

    @classmethod
    def parse(cls, text):
        """Parse ``exact``, ``real:BITS`` or ``complex:BITS``."""
        text = text.strip()
        if text in ("exact", "rational"):
            return EXACT
        kind, sep, bits = text.partition(":")
        if not sep or kind not in FLOAT_KINDS:
            raise ValueError(f"bad domain {text!r}; use exact, real:BITS or complex:BITS")
        return cls(kind, int(bits))

    def __str__(self):
        return "exact" if self.is_exact else f"{self.kind}:{self.prec}"

    @property
    def is_exact(self):
        return self.kind == "exact"

    @property
    def file_tag(self):
        """Name used in the JSON file formats."""
        return "rational" if self.is_exact else self.kind

    def with_prec(self, bits):
        if self.is_exact:
            return self
        return ScalarDomain(self.kind, int(bits))

    def workprec(self):
        """Context manager setting mpmath's working precision (no-op when exact)."""
        return mpmath.workprec(self.prec if self.prec else mpmath.mp.prec)

    def convert(self, value):
        """Bring ``value`` into this domain (call inside :meth:`workprec`)."""
        if self.is_exact:
            return to_fraction(value)
        if self.kind == "real":
            return to_mpf(value)
        return to_mpc(value)

    @property
    def zero(self):
        return Fraction(0) if self.is_exact else self.convert(0)

    @property
    def one(self):
        return Fraction(1) if self.is_exact else self.convert(1)


EXACT = ScalarDomain()


def to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot represent {value!r} exactly as a rational")


def to_mpf(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, mpmath.mpc):
        if value.imag != 0:
            raise TypeError("complex value in real domain")
        return +value.real
    return mpmath.mpf(value)


def to_mpc(value):
    if isinstance(value, Fraction):
        return mpmath.mpc(to_mpf(value))
    if isinstance(value, (tuple, list)):
        re, im = value
        return mpmath.mpc(to_mpf(to_number(re)), to_mpf(to_number(im)))
    return mpmath.mpc(value)


def to_number(text):
    """Parse a scalar string: ``p/q`` becomes a Fraction, decimals stay strings."""
    if isinstance(text, str) and ("." in text or "e" in text.lower() or "n" in text.lower()):
        return mpmath.mpf(text)
    return to_fraction(text)


def is_exact_value(value):
    return isinstance(value, (int, Fraction))


def infer_domain(values, prec=None):
    """Smallest domain holding every value in ``values``."""
    kind = "exact"
    for v in values:
        if isinstance(v, (mpmath.mpc, complex)):
            kind = "complex"
            break
        if not is_exact_value(v):
            kind = "real"
    if kind == "exact":
        return EXACT
    return ScalarDomain(kind, max(prec or mpmath.mp.prec, MIN_PRECISION))


def magnitude(value):
    """``|value|`` as an mpf (exact values are converted at current precision)."""
    if is_exact_value(value):
        return abs(to_mpf(Fraction(value)))
    return abs(value)


def is_zero(value):
    return value == 0
