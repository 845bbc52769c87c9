"""Acceptance criteria, one test (or group of tests) per criterion.

Every check is recorded through the ``record`` fixture and a PASS/FAIL line
per criterion is printed in the terminal summary.  Two sub-checks are known
not to hold for mathematically correct output; they are marked ``xfail``
with ``strict=True`` so they still run and are reported as FAIL.
"""

import random
import time
import xml.etree.ElementTree as ET
from fractions import Fraction

import mpmath
import pytest

from mopkit.apery import apery_sequence, apery_step
from mopkit.hermitepade import hp_type_i, hp_type_ii
from mopkit.kernel import path_independence_check
from mopkit.measures import LEBESGUE, cauchy_series, moment_table, preset
from mopkit.mopcore import (MultiIndex, assemble_systems, multi_indices, nn_recurrence,
                            perfectness_scan, type_i, type_ii)
from mopkit.zeros import emit, fig1_pipeline, read_csv, zero_cloud

F = Fraction
PRESETS = ["lebesgue", "apery-pair", "apery-triple", "hermite-ext:1,-1:1"]


def gram_schmidt_monic(k):
    # int_0^1 x^m dx = 1/(m+1); independent of the package's moment code
    def inner(p, q):
        return sum(a * b * F(1, i + j + 1) for i, a in enumerate(p) for j, b in enumerate(q))

    basis = []
    for d in range(k + 1):
        v = [F(0)] * d + [F(1)]
        for b in basis:
            c = inner(v, b) / inner(b, b)
            v = [vi - c * (b[i] if i < len(b) else 0) for i, vi in enumerate(v)]
        basis.append(v)
    return basis[k]


def test_c1_exactness(record):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for name in PRESETS:
        measures = preset(name)
        for n in multi_indices(len(measures), 6, 1):
            ii = type_ii(measures, n)
            i = type_i(measures, n)
            count += 1
            if any(r != 0 for r in ii.residuals) or any(r != 0 for r in i.residuals) \
                    or i.normalization_value != 1:
                bad.append((name, n))
    elapsed = time.perf_counter() - t0
    record(1, "residuals", not bad, f"{count} indices, failures {bad}")
    record(1, "runtime < 60 s", elapsed < 60, f"{elapsed:.2f} s")
    assert not bad and elapsed < 60


def test_c2_transpose(record):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    done = 0
    while done < 50:
        r = rng.randint(1, 3)
        measures = tuple(
            moment_table([sum(F(rng.randint(1, 5)) * F(rng.randint(1, 9), 10) ** k
                              for _ in range(4)) for k in range(14)])
            for _ in range(r))
        n = MultiIndex(tuple(rng.randint(0, 3) for _ in range(r)))
        if n.size == 0:
            continue
        M_I, M_II, _ = assemble_systems(measures, n)
        if M_I.to_rows() != M_II.transpose().to_rows():
            record(2, f"instance {done}", False, str(n))
            break
        done += 1
    elapsed = time.perf_counter() - t0
    record(2, "runtime < 5 s", elapsed < 5, f"{done} instances in {elapsed:.2f} s")
    assert done == 50 and elapsed < 5


def test_c3_classical_reduction(record):
    for k in range(9):
        P = type_ii((LEBESGUE,), (k,)).poly
        assert record(3, f"k={k} coefficients", list(P.coeffs) == gram_schmidt_monic(k))
        if k == 0:
            continue
        cloud = zero_cloud(P, "P", 256)
        xs = sorted(z.real for z in cloud.points)
        real = all(abs(z.imag) < mpmath.ldexp(1, -200) for z in cloud.points)
        inside = all(0 < x < 1 for x in xs)
        simple = len(xs) == k and all(b - a > 1e-3 for a, b in zip(xs, xs[1:]))
        small = cloud.residual_max < 1e-30
        record(3, f"k={k} zeros", real and inside and simple and small,
               f"residual {mpmath.nstr(cloud.residual_max, 3)}" if k == 8 else "")
        assert real and inside and simple and small


def test_c4_duality(record):
    bad = []
    for name in PRESETS:
        measures = preset(name)
        for n in multi_indices(len(measures), 6, 1):
            series = [cauchy_series(mu, 2 * n.size + 8) for mu in measures]
            if hp_type_ii(series, n).P != type_ii(measures, n).poly \
                    or hp_type_i(series, n).A != type_i(measures, n).polys:
                bad.append((name, n))
    record(4, "series side equals moment side", not bad, f"failures {bad}")
    assert not bad


# -- criterion 5 ---------------------------------------------------------------

@pytest.fixture(scope="module")
def apery_run():
    t0 = time.perf_counter()
    seq = apery_sequence(10, 220)          # 60 digits plus guard bits
    return seq, time.perf_counter() - t0


def test_c5_apery(record, apery_run):
    seq, elapsed = apery_run
    first = apery_step(1, 220)
    with mpmath.workdps(60):
        err1 = abs(first.abs_error - mpmath.mpf("2.06e-3"))
    ok1 = first.approximant == F(6, 5) and err1 < 1e-5
    record(5, "n=1 gives 6/5", ok1, f"error {mpmath.nstr(first.abs_error, 6)}")
    errs = [s.abs_error for s in seq]
    dec = all(b < a for a, b in zip(errs, errs[1:]))
    record(5, "errors decreasing", dec)
    last = errs[-1] < 1e-12
    record(5, "abs_error(10) < 1e-12", last, f"abs_error(10) = {mpmath.nstr(errs[-1], 4)}")
    exact = all(s.A(1) == 0 and s.orders[0] >= s.n + 1 and s.orders[1] >= s.n + 1 for s in seq)
    record(5, "A(1) = 0 and order conditions", exact)
    record(5, "runtime < 120 s", elapsed < 120, f"{elapsed:.2f} s")
    assert ok1 and dec and last and exact and elapsed < 120


@pytest.mark.xfail(strict=True, reason="the true error ratio is (sqrt(2)-1)^8 ~ 8.7e-4, "
                                       "outside the requested band [0.025, 0.035]")
def test_c5_ratio_band(record, apery_run):
    seq, _ = apery_run
    ratios = seq.ratios[4:]                 # abs_error(n) / abs_error(n-1) for n = 6..10
    ok = all(0.025 <= r <= 0.035 for r in ratios)
    record(5, "ratios in [0.025, 0.035] for n in [6,10]", ok,
           "ratios " + ", ".join(mpmath.nstr(r, 4) for r in ratios))
    assert ok


# -- criteria 6, 7, 9 ---------------------------------------------------------------

def test_c6_kernel_paths(record):
    t0 = time.perf_counter()
    bad = []
    for name in ["apery-pair", "hermite-ext:1,-1:1"]:
        measures = preset(name)
        for n in multi_indices(len(measures), 5, 1):
            if not path_independence_check(measures, n).exact:
                bad.append((name, n))
    elapsed = time.perf_counter() - t0
    record(6, "structural equality", not bad, f"failures {bad}")
    record(6, "runtime < 60 s", elapsed < 60, f"{elapsed:.2f} s")
    assert not bad and elapsed < 60


def test_c7_recurrences(record):
    rec = nn_recurrence((LEBESGUE,), (1,))
    ok = rec.exact and rec.b == (F(1, 2),) and rec.a == ((F(1, 12),),)
    record(7, "lebesgue n=1", ok)
    pair = preset("apery-pair")
    bad = [n for n in multi_indices(2, 6, 1) if not nn_recurrence(pair, n).exact]
    record(7, "apery-pair |n| <= 6", not bad, f"failures {bad}")
    assert ok and not bad


def test_c9_perfectness(record):
    results = {
        "lebesgue": perfectness_scan(preset("lebesgue"), 6),
        "apery-pair": perfectness_scan(preset("apery-pair"), 5),
        "apery-triple": perfectness_scan(preset("apery-triple"), 5),
    }
    ok = all(v == [] for v in results.values())
    record(9, "presets perfect", ok, f"{results}")
    flagged = MultiIndex((1, 1)) in perfectness_scan((LEBESGUE, LEBESGUE), 2)
    record(9, "duplicate pair flags (1,1)", flagged)
    assert ok and flagged


# -- criterion 8 -------------------------------------------------------------------

@pytest.fixture(scope="module")
def fig1_run():
    t0 = time.perf_counter()
    res = fig1_pipeline((40, 40), 176, 512)
    return res, time.perf_counter() - t0


@pytest.mark.slow
def test_c8_fig1(record, fig1_run, tmp_path):
    res, elapsed = fig1_run
    record(8, "runtime < 10 min", elapsed < 600, f"{elapsed:.0f} s")
    record(8, "order_of_contact >= 80", res.order_of_contact >= 80,
           f"order {res.order_of_contact}")
    csv_path = emit(res.clouds, "csv", tmp_path / "fig1.csv")
    rows = read_csv(csv_path, 512)
    expected = [(c.label, z) for c in res.clouds for z in c.points]
    round_trip = len(rows) == len(expected) and all(
        a == b and la == lb for (la, a), (lb, b) in zip(rows, expected))
    svg_path = emit(res.clouds, "svg", tmp_path / "fig1.svg")
    root = ET.parse(svg_path).getroot()
    circles = root.findall("{http://www.w3.org/2000/svg}circle")
    svg_ok = len(circles) == len(expected) + len(res.clouds)
    record(8, "CSV/SVG round trip", round_trip and svg_ok, f"{len(rows)} zeros")
    assert elapsed < 600 and res.order_of_contact >= 80 and round_trip and svg_ok


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="A2 and B carry a few genuine zeros near |z| ~ 2.7e3 "
                                       "for this branch; see the decisions ledger")
def test_c8_zero_bound(record, fig1_run):
    res, _ = fig1_run
    radii = {c.label: max(abs(z) for z in c.points) for c in res.clouds}
    ok = all(r <= 10 for r in radii.values())
    record(8, "all zeros |z| <= 10", ok,
           "max |z| " + ", ".join(f"{k} {mpmath.nstr(v, 5)}" for k, v in radii.items()))
    assert ok
