"""JSON-syntax file formats for measures, polynomials, series and reports.

Rationals are written ``"p/q"`` (``"p"`` for integers) so files are bit
exact.  Floating values are decimal strings carrying their full precision;
complex values are ``["re", "im"]`` pairs.
"""

import json
from fractions import Fraction

import mpmath
from mpmath.libmp import repr_dps, to_str

from .measures import MeasureSpec
from .numerics.domain import ScalarDomain
from .numerics.poly import Polynomial
from .series import LaurentSeries

__all__ = [
    "rational_str", "number_to_json", "number_from_json",
    "measure_to_json", "measure_from_json", "load_measures",
    "poly_to_json", "poly_from_json", "series_to_json", "series_from_json",
    "MEASURE_SCHEMA", "POLY_SCHEMA", "SERIES_SCHEMA", "APERY_SCHEMA",
]

RATIONAL_PATTERN = r"^-?[0-9]+(/[0-9]+)?$"


def rational_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _dec(x, prec):
    # mpmath.mpf() would round to the ambient precision; keep the value as is
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    return to_str(x._mpf_, repr_dps(prec))


def number_to_json(c, prec=None):
    if isinstance(c, (int, Fraction)):
        return rational_str(c)
    if isinstance(c, complex):
        c = mpmath.mpc(c)
    elif isinstance(c, (tuple, list)):
        c = mpmath.mpc(*c)
    prec = prec or mpmath.mp.prec
    if isinstance(c, mpmath.mpc):
        return [_dec(c.real, prec), _dec(c.imag, prec)]
    return _dec(c, prec)


def number_from_json(v, prec=None):
    if isinstance(v, list):
        with mpmath.workprec(prec or mpmath.mp.prec):
            return mpmath.mpc(mpmath.mpf(v[0]), mpmath.mpf(v[1]))
    if "/" in v or ("." not in v and "e" not in v):
        return Fraction(v)
    with mpmath.workprec(prec or mpmath.mp.prec):
        return mpmath.mpf(v)


# -- measures --------------------------------------------------------------

def measure_to_json(spec):
    out = {"kind": spec.kind}
    if spec.kind == "log_weight":
        out["power"] = spec.power
    elif spec.kind == "hermite_external":
        out["a"] = rational_str(spec.a)
        out["s"] = rational_str(spec.s)
    elif spec.kind == "moment_table":
        out["values"] = [rational_str(v) for v in spec.values]
    return out


def measure_from_json(obj):
    kind = obj["kind"]
    if kind == "log_weight":
        return MeasureSpec(kind, power=int(obj["power"]))
    if kind == "hermite_external":
        return MeasureSpec(kind, a=Fraction(obj["a"]), s=Fraction(obj["s"]))
    if kind == "moment_table":
        return MeasureSpec(kind, values=tuple(Fraction(v) for v in obj["values"]))
    return MeasureSpec(kind)


def load_measures(path):
    """A measure file holds one measure object, a list, or ``{"measures": [...]}``."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "measures" in data:
        data = data["measures"]
    if isinstance(data, dict):
        data = [data]
    return tuple(measure_from_json(m) for m in data)


# -- polynomials and series --------------------------------------------------

def poly_to_json(poly, domain=None):
    domain = domain or poly.domain
    return {"domain": domain.file_tag,
            "coeffs": [number_to_json(c, domain.prec) for c in poly.coeffs]}


def poly_from_json(obj, prec=None):
    return Polynomial([number_from_json(c, prec) for c in obj["coeffs"]])


def series_to_json(s):
    prec = s.domain.prec
    return {"domain": s.domain.file_tag,
            "poly_part": [number_to_json(c, prec) for c in s.poly_part],
            "tail": [number_to_json(c, prec) for c in s.tail]}


def series_from_json(obj, prec=256):
    tag = obj["domain"]
    domain = ScalarDomain.parse("exact" if tag == "rational" else f"{tag}:{prec}")
    poly = [number_from_json(c, prec) for c in obj["poly_part"]]
    tail = [number_from_json(c, prec) for c in obj["tail"]]
    return LaurentSeries(tuple(poly), tuple(tail), domain)


# -- schemas -----------------------------------------------------------------

_NUMBER = {"oneOf": [
    {"type": "string"},
    {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
]}

MEASURE_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["lebesgue_unit", "log_weight", "hermite_external", "moment_table"]},
        "power": {"enum": [1, 2]},
        "a": {"type": "string", "pattern": RATIONAL_PATTERN},
        "s": {"type": "string", "pattern": RATIONAL_PATTERN},
        "values": {"type": "array", "items": {"type": "string", "pattern": RATIONAL_PATTERN}},
    },
}

POLY_SCHEMA = {
    "type": "object",
    "required": ["domain", "coeffs"],
    "properties": {
        "domain": {"enum": ["rational", "real", "complex"]},
        "coeffs": {"type": "array", "items": _NUMBER},
    },
}

SERIES_SCHEMA = {
    "type": "object",
    "required": ["domain", "poly_part", "tail"],
    "properties": {
        "domain": {"enum": ["rational", "real", "complex"]},
        "poly_part": {"type": "array", "items": _NUMBER},
        "tail": {"type": "array", "items": _NUMBER},
    },
}

APERY_SCHEMA = {
    "type": "object",
    "required": ["steps", "ratios"],
    "properties": {
        "steps": {"type": "array", "items": {
            "type": "object",
            "required": ["n", "A", "B", "C", "D", "approximant", "abs_error"],
            "properties": {
                "n": {"type": "integer", "minimum": 1},
                "approximant": {"type": "string", "pattern": RATIONAL_PATTERN},
                "abs_error": {"type": "string"},
            },
        }},
        "ratios": {"type": "array", "items": {"type": "string"}},
    },
}
