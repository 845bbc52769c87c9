"""Measures described by closed-form moments.

Four families are supported:

* ``lebesgue_unit``: ``dx`` on ``[0, 1]``, moments ``1/(k+1)``.
* ``log_weight`` with ``power`` 1 or 2: ``-log x`` and ``log(x)**2 / 2`` on
  ``[0, 1]``, moments ``1/(k+1)**2`` and ``1/(k+1)**3``.
* ``hermite_external``: ``exp(-s (x**2 - a x))`` on the real line.  Moments
  are divided by the total mass so they stay rational.
* ``moment_table``: an explicit list of rational moments.

Together the first three give the measure triple behind the zeta(3)
approximants, available as :data:`APERY_TRIPLE`.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import DomainError, TableExhausted, UnsupportedForTable
from .numerics.domain import EXACT, to_fraction, to_mpf

__all__ = [
    "MeasureSpec", "moment", "moments", "cauchy_series", "weight_value",
    "LEBESGUE", "LOG1", "LOG2", "APERY_PAIR", "APERY_TRIPLE",
    "hermite_external", "moment_table", "preset",
]

KINDS = ("lebesgue_unit", "log_weight", "hermite_external", "moment_table")


@dataclass(frozen=True)
class MeasureSpec:
    kind: str
    power: int = None
    a: Fraction = None
    s: Fraction = None
    values: tuple = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "log_weight" and self.power not in (1, 2):
            raise ValueError("log_weight power must be 1 or 2")
        if self.kind == "hermite_external":
            object.__setattr__(self, "a", to_fraction(self.a))
            object.__setattr__(self, "s", to_fraction(self.s))
            if self.s <= 0:
                raise ValueError("hermite_external needs s > 0")
        if self.kind == "moment_table":
            if self.values is None:
                raise ValueError("moment_table needs values")
            try:
                vals = tuple(to_fraction(v) for v in self.values)
            except TypeError as exc:
                raise ValueError("moment tables hold exact rationals only") from exc
            object.__setattr__(self, "values", vals)

    def __str__(self):
        if self.kind == "log_weight":
            return f"log_weight(p={self.power})"
        if self.kind == "hermite_external":
            return f"hermite_external(a={self.a}, s={self.s})"
        if self.kind == "moment_table":
            return f"moment_table({len(self.values)} values)"
        return self.kind

    @property
    def support(self):
        if self.kind in ("lebesgue_unit", "log_weight"):
            return (0, 1)
        if self.kind == "hermite_external":
            return (-mpmath.inf, mpmath.inf)
        return None

    @property
    def normalized(self):
        """True when :func:`moment` returns moments divided by the total mass."""
        return self.kind == "hermite_external"


LEBESGUE = MeasureSpec("lebesgue_unit")
LOG1 = MeasureSpec("log_weight", power=1)
LOG2 = MeasureSpec("log_weight", power=2)
APERY_PAIR = (LEBESGUE, LOG1)
APERY_TRIPLE = (LEBESGUE, LOG1, LOG2)


def hermite_external(a, s):
    return MeasureSpec("hermite_external", a=a, s=s)


def moment_table(values):
    return MeasureSpec("moment_table", values=tuple(values))


def preset(name):
    """Resolve a named measure system.

    ``lebesgue``, ``apery-pair``, ``apery-triple`` or
    ``hermite-ext:a1,a2,...:s`` (rationals written ``p/q``).
    """
    if name == "lebesgue":
        return (LEBESGUE,)
    if name == "apery-pair":
        return APERY_PAIR
    if name == "apery-triple":
        return APERY_TRIPLE
    if name.startswith("hermite-ext:"):
        parts = name.split(":")
        if len(parts) != 3:
            raise ValueError("hermite-ext preset is hermite-ext:a1,a2,...:s")
        s = Fraction(parts[2])
        return tuple(hermite_external(Fraction(a), s) for a in parts[1].split(","))
    raise ValueError(f"unknown preset {name!r}")


@lru_cache(maxsize=None)
def _hermite_moments(a, s, upto):
    m = [Fraction(1), a / 2]
    for k in range(1, upto):
        m.append(a / 2 * m[k] + Fraction(k) / (2 * s) * m[k - 1])
    return tuple(m[:upto + 1])


def moment(spec, k):
    """Exact ``k``-th moment of ``spec`` (normalized for hermite_external)."""
    if k < 0:
        raise ValueError("moment index must be non-negative")
    kind = spec.kind
    if kind == "lebesgue_unit":
        return Fraction(1, k + 1)
    if kind == "log_weight":
        return Fraction(1, (k + 1) ** (spec.power + 1))
    if kind == "hermite_external":
        # grow the cache in blocks so repeated calls stay linear
        upto = max(16, 1 << (k + 1).bit_length())
        return _hermite_moments(spec.a, spec.s, upto)[k]
    if k >= len(spec.values):
        raise TableExhausted(f"moment {k} requested from a table of {len(spec.values)}")
    return spec.values[k]


def moments(spec, count):
    return [moment(spec, k) for k in range(count)]


def cauchy_series(spec, terms):
    """Expansion of ``int dmu(x)/(z - x)`` at infinity: tail ``c_k = m_k``."""
    from .series import LaurentSeries

    if terms < 1:
        raise ValueError("terms must be >= 1")
    return LaurentSeries(poly_part=(), tail=tuple(moments(spec, terms)), domain=EXACT)


def total_mass(spec, precision):
    """Unnormalized ``m_0``; only hermite_external differs from its stored moment."""
    with mpmath.workprec(precision):
        if spec.kind == "hermite_external":
            a, s = to_mpf(spec.a), to_mpf(spec.s)
            return mpmath.sqrt(mpmath.pi / s) * mpmath.exp(s * a * a / 4)
        return to_mpf(moment(spec, 0))


def weight_value(spec, x, precision, normalized=False):
    """Density ``w(x)`` of ``spec`` with respect to ``dx``.

    With ``normalized=True`` the density is divided by the total mass, which
    matches the moments :func:`moment` returns for hermite_external.
    """
    if spec.kind == "moment_table":
        raise UnsupportedForTable("moment tables have no weight function")
    with mpmath.workprec(precision):
        xv = to_mpf(x) if not isinstance(x, mpmath.mpf) else x
        if spec.kind == "lebesgue_unit":
            if not 0 <= xv <= 1:
                raise DomainError(f"x={x} outside [0, 1]")
            return mpmath.mpf(1)
        if spec.kind == "log_weight":
            if not 0 < xv <= 1:
                raise DomainError(f"x={x} outside (0, 1]")
            lg = mpmath.log(xv)
            return -lg if spec.power == 1 else lg * lg / 2
        a, s = to_mpf(spec.a), to_mpf(spec.s)
        w = mpmath.exp(-s * (xv * xv - a * xv))
        if normalized:
            w /= total_mass(spec, precision)
        return w
