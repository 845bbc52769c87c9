from fractions import Fraction

import mpmath
import pytest

from mopkit.errors import UnsupportedForTable
from mopkit.kernel import (LatticePath, cd_kernel_coefficients, cd_kernel_r1, kernel_coefficients,
                           mop_kernel, orthonormalize, path_independence_check)
from mopkit.measures import APERY_PAIR, LEBESGUE, LOG1, moment, moment_table, preset
from mopkit.mopcore import integrate, lattice_paths, multi_indices
from mopkit.numerics import Polynomial
from mopkit.numerics.domain import to_mpf

F = Fraction


def test_orthonormalize_lebesgue():
    (P0, h0), (P1, h1), (P2, h2) = orthonormalize(LEBESGUE, 2)
    assert P0 == Polynomial([1]) and h0 == 1
    assert P1 == Polynomial([F(-1, 2), 1]) and h1 == F(1, 12)
    # int p_2^2 = int P_2^2 / h_2 = 1
    assert integrate(P2 * P2, LEBESGUE) / h2 == 1


def test_cd_kernel_examples():
    x, y = F(1, 3), F(3, 4)
    assert cd_kernel_r1(LEBESGUE, 1, x, y) == 1
    assert cd_kernel_r1(LEBESGUE, 2, x, y) == 1 + 12 * (x - F(1, 2)) * (y - F(1, 2))


@pytest.mark.parametrize("mu", [LEBESGUE, LOG1])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_cd_kernel_reproduces_polynomials(mu, n):
    K = cd_kernel_coefficients(mu, n)
    # int K(x, y) y^j dmu(y) = x^j for j < n, coefficient-wise in x
    for j in range(n):
        image = [sum(K[i][k] * moment(mu, k + j) for k in range(n)) for i in range(n)]
        assert image == [F(int(i == j)) for i in range(n)]


def test_lattice_path_validation():
    p = LatticePath.default((2, 1))
    assert [tuple(s) for s in p] == [(0, 0), (1, 0), (2, 0), (2, 1)]
    assert len(p) == 4 and p.target.size == 3
    with pytest.raises(ValueError):
        LatticePath(((0, 0), (1, 1)))
    with pytest.raises(ValueError):
        LatticePath(((1, 0), (2, 0)))


def test_trivial_kernel_is_one():
    assert mop_kernel((LEBESGUE,), LatticePath.default((1,)), F(1, 3), F(1, 2)).value == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_r1_mop_kernel_is_cd_kernel_times_weight(n):
    # A_{k+1} = P_k / h_k for r = 1, so the path sum is sum P_k(x) P_k(y) / h_k * w(y)
    C = kernel_coefficients((LOG1,), LatticePath.default((n,)))
    assert C[0] == cd_kernel_coefficients(LOG1, n)
    x, y = F(1, 5), F(2, 3)
    val = mop_kernel((LOG1,), LatticePath.default((n,)), x, y, 128).value
    with mpmath.workprec(128):
        expected = to_mpf(cd_kernel_r1(LOG1, n, x, y)) * -mpmath.log(mpmath.mpf(2) / 3)
        assert abs(val - expected) < 1e-30


def test_apery_pair_paths_agree():
    chk = path_independence_check(APERY_PAIR, (1, 1), [(F(1, 3), F(1, 2))], 128)
    assert chk.paths == 2
    assert chk.structural_deviation == 0
    assert chk.max_deviation < mpmath.ldexp(1, -120)


def test_hermite_paths_agree():
    chk = path_independence_check(preset("hermite-ext:1,-1:1"), (2, 1), [(F(1, 3), F(1, 2))], 128)
    assert chk.paths == 3 and chk.exact
    assert chk.max_deviation < mpmath.ldexp(1, -110)


@pytest.mark.parametrize("name", ["apery-pair", "apery-triple", "hermite-ext:1,-1:1"])
def test_structural_path_independence(name):
    measures = preset(name)
    top = 4 if len(measures) == 3 else 5
    for n in multi_indices(len(measures), top, 1):
        assert path_independence_check(measures, n).exact


def test_kernel_needs_weights():
    table = moment_table([F(1, k + 1) for k in range(10)])
    with pytest.raises(UnsupportedForTable):
        mop_kernel((table,), LatticePath.default((1,)), F(1, 2), F(1, 2))


def test_path_count():
    assert len(lattice_paths((2, 2))) == 6
