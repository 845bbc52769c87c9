"""``mop`` command line.

Every subcommand writes its result together with a metadata block (tool
version, domain, precision, conventions).  Exit codes: 0 success, 1 domain
error, 2 usage error, 3 numeric failure.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from .apery import apery_sequence
from .errors import DomainError, MOPError, NumericError
from .formats import (load_measures, measure_to_json, number_to_json, poly_from_json,
                      poly_to_json, rational_str, series_from_json, series_to_json)
from .hermitepade import AlgebraicCurveSpec, algebraic_series, hp_type_i, hp_type_ii, pade
from .kernel import path_independence_check
from .measures import cauchy_series, preset
from .mopcore import (LinearForm, MixedSystemSpec, MultiIndex, is_normal, mixed_solve,
                      nn_recurrence, perfectness_scan, type_i, type_ii)
from .numerics.domain import EXACT, ScalarDomain
from .zeros import emit, fig1_curve, fig1_pipeline, zero_cloud

CONVENTIONS = {
    "type_ii": "monic",
    "type_i": "sum_j int x^(|n|-1) A_j dmu_j = 1",
    "mixed": "coprime integers, leading coefficient of first nonzero unknown positive",
    "hermite_external": "moments divided by total mass",
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _index(text):
    try:
        return MultiIndex(tuple(int(p) for p in text.split(",")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad multi-index {text!r}") from exc


def _domain(text):
    try:
        return ScalarDomain.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _complex(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex value {text!r}") from exc
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("complex values are written re,im")
    return complex(*parts)


def _measures(args):
    if getattr(args, "measures", None):
        return load_measures(args.measures)
    if getattr(args, "preset", None):
        return preset(args.preset)
    raise UsageError("one of --measures or --preset is required")


def _require_index(args):
    if args.index is None:
        raise UsageError("--index is required")
    return args.index


def _poly_text(p, digits=30):
    return p.format(digits=digits)


def _num_text(v, digits=30):
    if v is None:
        return "-"
    if isinstance(v, (int, Fraction)):
        return rational_str(v)
    return mpmath.nstr(v, digits)


def _metadata(args, **extra):
    domain = getattr(args, "domain", None) or EXACT
    meta = {
        "tool": "mopkit",
        "version": __version__,
        "command": args.command,
        "domain": domain.file_tag,
        "precision": domain.prec,
        "conventions": CONVENTIONS,
    }
    meta.update(extra)
    return meta


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _write(args, meta, payload, text_lines):
    fmt = args.format or "text"
    if fmt == "json":
        out = json.dumps({"metadata": meta, **payload}, indent=2) + "\n"
    elif fmt == "text":
        head = [f"# {k}: {json.dumps(v) if isinstance(v, dict) else v}" for k, v in meta.items()]
        out = "\n".join(head + list(text_lines)) + "\n"
    else:
        raise UsageError(f"--format {fmt} is not available for {args.command}")
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_type2(args):
    mus = _measures(args)
    sol = type_ii(mus, _require_index(args), args.domain)
    payload = {"index": list(sol.index), "poly": poly_to_json(sol.poly, args.domain),
               "residuals": [number_to_json(r, args.domain.prec) for r in sol.residuals],
               "measures": [measure_to_json(m) for m in mus]}
    _write(args, _metadata(args), payload, [_poly_text(sol.poly)])


def cmd_type1(args):
    mus = _measures(args)
    sol = type_i(mus, _require_index(args), args.domain)
    payload = {"index": list(sol.index),
               "polys": [poly_to_json(p, args.domain) for p in sol.polys],
               "normalization_value": number_to_json(sol.normalization_value, args.domain.prec),
               "residuals": [number_to_json(r, args.domain.prec) for r in sol.residuals],
               "moments_normalized": sol.moments_normalized}
    lines = [f"A{j + 1} = {_poly_text(p)}" for j, p in enumerate(sol.polys)]
    _write(args, _metadata(args), payload, lines)


def _load_mixed(path):
    data = json.loads(Path(path).read_text())
    forms = tuple(LinearForm(tuple((Fraction(c), int(m), u) for c, m, u in f["terms"]),
                             int(f["order"])) for f in data["forms"])
    points = tuple((u, Fraction(p), Fraction(v)) for u, p, v in data.get("point_constraints", []))
    return MixedSystemSpec(dict(data["degrees"]), forms, points,
                           data.get("solution", "nullspace"), tuple(data.get("nonzero", ())))


def cmd_mixed(args):
    if not args.spec:
        raise UsageError("--spec FILE is required")
    spec = _load_mixed(args.spec)
    polys = mixed_solve(spec, _measures(args), args.domain)
    payload = {"unknowns": {u: poly_to_json(p, args.domain) for u, p in zip(spec.degrees, polys)}}
    lines = [f"{u} = {_poly_text(p)}" for u, p in zip(spec.degrees, polys)]
    _write(args, _metadata(args), payload, lines)


def cmd_normal(args):
    n = _require_index(args)
    ok = is_normal(_measures(args), n)
    _write(args, _metadata(args), {"index": list(n), "normal": ok}, [f"{n} normal: {ok}"])


def cmd_perfect(args):
    bad = perfectness_scan(_measures(args), args.max)
    payload = {"max_size": args.max, "non_normal": [list(n) for n in bad]}
    lines = [f"non-normal up to |n| = {args.max}: " + (", ".join(map(str, bad)) or "none")]
    _write(args, _metadata(args), payload, lines)


def _series_inputs(args):
    if args.series:
        data = json.loads(Path(args.series).read_text())
        if isinstance(data, dict):
            data = [data]
        prec = args.domain.prec or 256
        return [series_from_json(s, prec) for s in data]
    if args.terms is None:
        raise UsageError("--terms is required when series come from measures")
    return [cauchy_series(mu, args.terms) for mu in _measures(args)]


def cmd_hp_type1(args):
    series = _series_inputs(args)
    res = hp_type_i(series, _require_index(args))
    payload = {"A": [poly_to_json(a) for a in res.A], "B": poly_to_json(res.B),
               "achieved_order": res.achieved_order, "poly_part_absorbed": res.poly_part_absorbed}
    lines = [f"A{j + 1} = {_poly_text(a)}" for j, a in enumerate(res.A)]
    lines += [f"B = {_poly_text(res.B)}", f"order = {res.achieved_order}"]
    _write(args, _metadata(args), payload, lines)


def _type2_output(args, res):
    payload = {"P": poly_to_json(res.P), "Q": [poly_to_json(q) for q in res.Q],
               "achieved_orders": list(res.achieved_orders),
               "remainder_zero": list(res.remainder_zero)}
    lines = [f"P = {_poly_text(res.P)}"]
    lines += [f"Q{j + 1} = {_poly_text(q)}" for j, q in enumerate(res.Q)]
    lines.append("orders = " + ", ".join(map(str, res.achieved_orders)))
    _write(args, _metadata(args), payload, lines)


def cmd_hp_type2(args):
    _type2_output(args, hp_type_ii(_series_inputs(args), _require_index(args)))


def cmd_pade(args):
    series = _series_inputs(args)
    if len(series) != 1:
        raise UsageError("pade takes exactly one series")
    n = _require_index(args)
    if n.r != 1:
        raise UsageError("pade takes a scalar index")
    _type2_output(args, pade(series[0], n[0]))


def _curve(args):
    if args.curve:
        data = json.loads(Path(args.curve).read_text())
        coeffs = tuple(poly_from_json(c) for c in data["coefficients"])
        seed = data.get("branch_seed")
        if args.seed is not None:
            seed = args.seed
        if seed is None:
            raise UsageError("a branch seed is required (curve file or --seed)")
        if isinstance(seed, list):
            seed = complex(float(seed[0]), float(seed[1]))
        return AlgebraicCurveSpec(coeffs, seed, data.get("exponent"))
    return fig1_curve(args.seed)


def cmd_series_alg(args):
    if args.terms is None:
        raise UsageError("--terms is required")
    prec = args.domain.prec or 512
    curve = _curve(args)
    s = algebraic_series(curve, args.terms, prec)
    meta = _metadata(args, branch_seed=number_to_json(complex(curve.branch_seed), 53))
    payload = {"series": series_to_json(s)}
    lines = [f"poly_part = {_poly_text(s.polynomial(), 20)}"]
    lines += [f"c_{k} = {_num_text(c, 20)}" for k, c in enumerate(s.tail)]
    _write(args, meta, payload, lines)


def cmd_apery(args):
    prec = max(64, int(args.digits * 3.33) + 16)
    seq = apery_sequence(args.n, prec)
    payload = {
        "steps": [{"n": s.n, "A": poly_to_json(s.A), "B": poly_to_json(s.B),
                   "C": poly_to_json(s.C), "D": poly_to_json(s.D),
                   "approximant": rational_str(s.approximant),
                   "abs_error": mpmath.nstr(s.abs_error, 15),
                   "orders": list(s.orders)} for s in seq],
        "ratios": [mpmath.nstr(r, 15) for r in seq.ratios],
    }
    lines = [f"{'n':>3}  {'approximant':<40} {'abs_error':>12}  {'ratio':>12}"]
    for k, s in enumerate(seq):
        ratio = mpmath.nstr(seq.ratios[k - 1], 6) if k else "-"
        approx = rational_str(s.approximant)
        lines.append(f"{s.n:>3}  {approx:<40} {mpmath.nstr(s.abs_error, 6):>12}  {ratio:>12}")
    if args.plot:
        from .plotting import plot_apery_errors
        plot_apery_errors(seq, args.plot)
    _write(args, _metadata(args, digits=args.digits), payload, lines)


def cmd_kernel_check(args):
    n = _require_index(args)
    points = [tuple(Fraction(v) for v in p.split(",")) for p in args.points]
    prec = args.domain.prec or 128
    chk = path_independence_check(_measures(args), n, points, prec)
    payload = {"index": list(n), "paths": chk.paths,
               "structural_deviation": rational_str(chk.structural_deviation),
               "max_deviation": mpmath.nstr(chk.max_deviation, 10)}
    lines = [f"paths = {chk.paths}",
             f"structural deviation = {rational_str(chk.structural_deviation)}",
             f"max numeric deviation = {mpmath.nstr(chk.max_deviation, 10)}"]
    _write(args, _metadata(args), payload, lines)


def cmd_nnrec(args):
    n = _require_index(args)
    rec = nn_recurrence(_measures(args), n)
    payload = {"index": list(n), "b": [rational_str(b) for b in rec.b],
               "a": [[None if v is None else rational_str(v) for v in row] for row in rec.a],
               "residual_polys": [poly_to_json(p) for p in rec.residual_polys],
               "exact": rec.exact}
    lines = []
    for j, (b, a, res) in enumerate(zip(rec.b, rec.a, rec.residual_polys)):
        a_txt = ", ".join(_num_text(v) for v in a)
        lines.append(f"direction {j + 1}: b = {_num_text(b)}; a = ({a_txt}); residual = {res}")
    _write(args, _metadata(args), payload, lines)


def _emit_clouds(args, clouds, meta):
    fmt = args.format or "csv"
    if fmt in ("csv", "svg"):
        if not args.out:
            raise UsageError(f"--out is required for {fmt} output")
        emit(clouds, fmt, args.out)
        Path(str(args.out) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
        return
    payload = {"clouds": [{"label": c.label, "residual_max": mpmath.nstr(c.residual_max, 6),
                           "points": [number_to_json(z, c.prec) for z in c.points]}
                          for c in clouds]}
    lines = []
    for c in clouds:
        lines.append(f"{c.label}: {len(c)} zeros, residual_max {mpmath.nstr(c.residual_max, 6)}")
        lines += [f"  {mpmath.nstr(z, 20)}" for z in c.points]
    _write(args, meta, payload, lines)


def cmd_zeros(args):
    if not args.poly:
        raise UsageError("--poly FILE is required")
    p = poly_from_json(json.loads(Path(args.poly).read_text()), args.domain.prec or 256)
    prec = args.domain.prec or 256
    cloud = zero_cloud(p, args.label, prec)
    if args.plot:
        from .plotting import plot_zero_clouds
        plot_zero_clouds([cloud], args.plot)
    _emit_clouds(args, [cloud], _metadata(args, precision=prec))


def cmd_fig1(args):
    n = args.index or MultiIndex((40, 40))
    prec = args.domain.prec or 512
    terms = args.terms or 4 * n.size + 16
    res = fig1_pipeline(n, terms, prec, args.seed)
    meta = _metadata(args, precision=prec, index=list(n), terms=terms,
                     order_of_contact=res.order_of_contact,
                     branch_coefficient=number_to_json(res.branch_coefficient, 64),
                     residual_max={c.label: mpmath.nstr(c.residual_max, 6) for c in res.clouds})
    if args.plot:
        from .plotting import plot_zero_clouds
        plot_zero_clouds(res.clouds, args.plot, title=f"n = {n}")
    _emit_clouds(args, res.clouds, meta)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="mop", description="Multiple orthogonal polynomials "
                                     "and Hermite-Padé approximation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, measures=True, index=True, default_domain="exact"):
        p = sub.add_parser(name, help=help_text)
        if measures:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--measures", metavar="FILE", help="measure-spec JSON file")
            g.add_argument("--preset", help="lebesgue, apery-pair, apery-triple or "
                                            "hermite-ext:a1,a2,...:s")
        if index:
            p.add_argument("--index", type=_index, help="multi-index i,j,...")
        p.add_argument("--domain", type=_domain, default=ScalarDomain.parse(default_domain),
                       help="exact, real:BITS or complex:BITS")
        p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv", "svg", "text"))
        p.set_defaults(func=fn)
        return p

    add("type1", cmd_type1, "type I multiple orthogonal polynomials")
    add("type2", cmd_type2, "type II multiple orthogonal polynomial")
    add("mixed", cmd_mixed, "mixed-type system from a spec file", index=False).add_argument(
        "--spec", metavar="FILE", help="mixed-system JSON file")
    add("normal", cmd_normal, "test normality of a multi-index")
    add("perfect", cmd_perfect, "scan for non-normal indices", index=False).add_argument(
        "--max", type=int, default=4, help="largest |n| scanned")
    for name, fn, text in (("hp-type1", cmd_hp_type1, "type I Hermite-Padé polynomials"),
                           ("hp-type2", cmd_hp_type2, "type II Hermite-Padé approximants"),
                           ("pade", cmd_pade, "Padé approximant at infinity")):
        p = add(name, fn, text)
        p.add_argument("--series", metavar="FILE", help="series JSON (object or list)")
        p.add_argument("--terms", type=int, help="tail terms when series come from measures")
    p = add("series-alg", cmd_series_alg, "Laurent expansion of an algebraic function",
            measures=False, index=False, default_domain="complex:512")
    p.add_argument("--curve", metavar="FILE", help="curve JSON (default: the fig1 cubic)")
    p.add_argument("--seed", type=_complex, help="branch seed re,im")
    p.add_argument("--terms", type=int)
    p = add("apery", cmd_apery, "rational approximants to zeta(3)", measures=False, index=False)
    p.add_argument("--n", type=int, default=10, help="largest step")
    p.add_argument("--digits", type=int, default=60, help="decimal digits for errors")
    p.add_argument("--plot", metavar="PNG", help="also plot the error decay")
    p = add("kernel-check", cmd_kernel_check, "path independence of the path-sum kernel")
    p.add_argument("--points", nargs="*", default=[], metavar="X,Y",
                   help="sample points (rationals) for the numeric comparison")
    add("nnrec", cmd_nnrec, "nearest-neighbor recurrence coefficients")
    p = add("zeros", cmd_zeros, "zeros of a polynomial file", measures=False, index=False)
    p.add_argument("--poly", metavar="FILE", help="polynomial JSON file")
    p.add_argument("--label", default="P", choices=("A1", "A2", "B", "P"))
    p.add_argument("--plot", metavar="PNG")
    p = add("fig1", cmd_fig1, "zeros of type I approximants to the fig1 cubic",
            measures=False, default_domain="complex:512")
    p.add_argument("--terms", type=int)
    p.add_argument("--seed", type=_complex, help="branch seed re,im")
    p.add_argument("--plot", metavar="PNG")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        args.func(args)
    except UsageError as exc:
        print(f"mop {args.command}: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"mop {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"mop {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (MOPError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"mop {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
