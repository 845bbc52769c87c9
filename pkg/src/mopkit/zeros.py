"""Zero sets of computed polynomials, the algebraic-function zero pipeline,
and CSV/SVG emission."""

import csv
from dataclasses import dataclass, field
from pathlib import Path

import mpmath
from mpmath.libmp import repr_dps, to_str

from .errors import DomainError, InsufficientTerms
from .hermitepade import (AlgebraicCurveSpec, algebraic_series, balance_roots,
                          hp_type_i)
from .mopcore import MultiIndex
from .numerics.domain import to_mpc
from .numerics.poly import Polynomial
from .numerics.roots import horner_with_bound, poly_roots

__all__ = [
    "ZeroCloud", "Fig1Result", "zero_cloud", "fig1_curve", "fig1_pipeline",
    "emit", "read_csv", "LABELS",
]

LABELS = ("A1", "A2", "B", "P")
SVG_COLORS = {"A1": "#1f77b4", "A2": "#d62728", "B": "#2ca02c", "P": "#9467bd"}


@dataclass(frozen=True)
class ZeroCloud:
    """Zeros of one labeled polynomial.

    ``poly`` is the monic polynomial the zeros and ``residual_max`` refer
    to; residuals are ``|poly(z)|`` evaluated at twice the precision.
    """

    label: str
    points: tuple
    index: MultiIndex = None
    residual_max: object = 0
    prec: int = 256
    poly: Polynomial = field(default=None, repr=False)

    def __len__(self):
        return len(self.points)


def zero_cloud(poly, label, precision, index=None):
    if label not in LABELS:
        raise ValueError(f"label must be one of {LABELS}")
    if poly.is_zero():
        raise DomainError("the zero polynomial has no zero set")
    if poly.degree == 0:
        return ZeroCloud(label, (), index, mpmath.mpf(0), precision, Polynomial([1]))
    with mpmath.workprec(2 * precision):
        monic = poly.monic() if poly.is_exact else Polynomial(
            [to_mpc(c) / to_mpc(poly.leading) for c in poly.coeffs])
    roots = poly_roots(monic, precision)
    return ZeroCloud(label, roots.points, index, max(roots.residuals), precision, monic)


def fig1_curve(seed=None):
    """``w^3 + 3(z-3)^2 w - 2i(3z-1)^3 = 0`` with a chosen branch at infinity.

    The default branch has the leading coefficient (a root of
    ``c^3 + 3c - 54i``) with largest imaginary part; two roots share it, and
    the one with positive real part is taken.
    """
    coeffs = (Polynomial([2j, -18j, 54j, -54j]),   # -2i (3z - 1)^3
              Polynomial([27, -18, 3]),            # 3 (z - 3)^2
              Polynomial([]),
              Polynomial([1]))
    if seed is None:
        probe = AlgebraicCurveSpec(coeffs, 0)
        _, roots = balance_roots(probe, 128)
        best = max(roots, key=lambda c: (mpmath.nint(c.imag * 2**40), c.real))
        seed = complex(best)
    return AlgebraicCurveSpec(coeffs, seed)


@dataclass(frozen=True)
class Fig1Result:
    clouds: tuple
    index: MultiIndex
    order_of_contact: int
    branch_coefficient: object
    precision: int
    terms: int

    def __iter__(self):
        return iter(self.clouds)


def fig1_pipeline(n, terms, precision=512, seed=None):
    """Zeros of type I Hermite-Padé polynomials for ``f1 = w``, ``f2 = w^2``.

    ``w`` is the selected branch of :func:`fig1_curve`.  Returns the clouds
    of ``A_{n,1}``, ``A_{n,2}`` and ``B_n`` together with the achieved order
    of contact.
    """
    n = MultiIndex.of(n)
    if n.r != 2:
        raise ValueError("the pipeline approximates two functions")
    if terms < 2 * n.size + 16:
        raise InsufficientTerms(f"need at least 2|n| + 16 = {2 * n.size + 16} terms")
    curve = fig1_curve(seed)
    w = algebraic_series(curve, terms, precision)
    with w.domain.workprec():
        w2 = w * w
    hp = hp_type_i([w, w2], n)
    clouds = (
        zero_cloud(hp.A[0], "A1", precision, n),
        zero_cloud(hp.A[1], "A2", precision, n),
        zero_cloud(hp.B, "B", precision, n),
    )
    return Fig1Result(clouds, n, hp.achieved_order, w.poly_part[1], precision, terms)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def _dec(x, prec):
    # mpmath.mpf() would round to the ambient precision; keep the value as is
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    return to_str(x._mpf_, repr_dps(prec))


def emit(clouds, fmt, path):
    """Write clouds as CSV (``label,re,im``) or a self-contained SVG scatter."""
    path = Path(path)
    clouds = list(clouds)
    if fmt == "csv":
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["label", "re", "im"])
            for cloud in clouds:
                for z in cloud.points:
                    z = z if isinstance(z, mpmath.mpc) else to_mpc(z)
                    writer.writerow([cloud.label, _dec(z.real, cloud.prec), _dec(z.imag, cloud.prec)])
    elif fmt == "svg":
        path.write_text(_svg(clouds))
    else:
        raise ValueError(f"unsupported format {fmt!r}")
    return path


def read_csv(path, prec):
    """Parse an emitted CSV back into ``(label, mpc)`` pairs at ``prec`` bits."""
    out = []
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["label", "re", "im"]:
            raise ValueError("not a zero-cloud CSV")
        with mpmath.workprec(prec):
            for label, re, im in reader:
                out.append((label, mpmath.mpc(mpmath.mpf(re), mpmath.mpf(im))))
    return out


def _svg(clouds, size=600, pad=40):
    pts = [(c.label, complex(z)) for c in clouds for z in c.points]
    if pts:
        xs = [z.real for _, z in pts]
        ys = [z.imag for _, z in pts]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0, x1, y0, y1 = -1.0, 1.0, -1.0, 1.0
    wx = (x1 - x0) or 1.0
    wy = (y1 - y0) or 1.0
    x0, x1 = x0 - 0.05 * wx, x1 + 0.05 * wx
    y0, y1 = y0 - 0.05 * wy, y1 + 0.05 * wy
    inner = size - 2 * pad

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * inner

    def sy(y):
        return pad + (y1 - y) / (y1 - y0) * inner

    labels = sorted({c.label for c in clouds}, key=LABELS.index)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        "<style>",
        ".frame{fill:none;stroke:#444;stroke-width:1}",
        ".axis{stroke:#bbb;stroke-width:0.5}",
    ]
    lines += [f".{lab}{{fill:{SVG_COLORS[lab]};stroke:none}}" for lab in labels]
    lines.append("</style>")
    lines.append(f'<rect class="frame" x="{pad}" y="{pad}" width="{inner}" height="{inner}"/>')
    if x0 < 0 < x1:
        lines.append(f'<line class="axis" x1="{sx(0):.3f}" y1="{pad}" x2="{sx(0):.3f}" y2="{pad + inner}"/>')
    if y0 < 0 < y1:
        lines.append(f'<line class="axis" x1="{pad}" y1="{sy(0):.3f}" x2="{pad + inner}" y2="{sy(0):.3f}"/>')
    for label, z in pts:
        lines.append(f'<circle class="{label}" cx="{sx(z.real):.3f}" cy="{sy(z.imag):.3f}" r="2.5"/>')
    for k, lab in enumerate(labels):
        y = pad + 14 + 16 * k
        lines.append(f'<circle class="{lab}" cx="{pad + 10}" cy="{y - 4}" r="4"/>')
        lines.append(f'<text x="{pad + 20}" y="{y}" font-size="12" font-family="sans-serif">{lab}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def residual_at(cloud, z, prec):
    """``|cloud.poly(z)|`` at ``prec`` bits."""
    with mpmath.workprec(prec):
        coeffs = [to_mpc(c) for c in cloud.poly.coeffs]
        return abs(horner_with_bound(coeffs, to_mpc(z))[0])
