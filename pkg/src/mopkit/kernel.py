"""Christoffel-Darboux kernels and the path-sum kernel of multiple OPs.

For a monotone lattice path ``0 = n_0, n_1, ..., n_N = n`` the kernel

    K_n(x, y) = sum_k P_{n_k}(x) Q_{n_{k+1}}(y),   Q_m(y) = sum_j A_{m,j}(y) w_j(y)

does not depend on the path.  :func:`path_independence_check` verifies this
exactly by comparing coefficient arrays in the basis
``x^i y^k w_j(y)``.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import NonNormalIndex
from .measures import moment, weight_value
from .mopcore import MultiIndex, integrate, lattice_paths, type_i, type_ii
from .numerics.domain import to_mpf
from .numerics.poly import Polynomial

__all__ = [
    "LatticePath", "KernelValue", "orthonormalize", "cd_kernel_r1", "cd_kernel_coefficients",
    "mop_kernel", "kernel_coefficients", "path_independence_check", "PathCheck",
]


@dataclass(frozen=True)
class LatticePath:
    """Monotone path of multi-indices from the zero index to ``target``."""

    steps: tuple

    def __post_init__(self):
        steps = tuple(MultiIndex.of(s) for s in self.steps)
        if not steps or steps[0].size != 0:
            raise ValueError("a path starts at the zero index")
        for a, b in zip(steps, steps[1:]):
            diff = [y - x for x, y in zip(a, b)]
            if len(a) != len(b) or sorted(diff) != [0] * (len(diff) - 1) + [1]:
                raise ValueError(f"step {a} -> {b} does not raise one component by 1")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def default(cls, n):
        """Fill component 1 first, then component 2, and so on."""
        n = MultiIndex.of(n)
        cur = [0] * n.r
        steps = [MultiIndex(tuple(cur))]
        for j in range(n.r):
            for _ in range(n[j]):
                cur[j] += 1
                steps.append(MultiIndex(tuple(cur)))
        return cls(tuple(steps))

    @property
    def target(self):
        return self.steps[-1]

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __str__(self):
        return " -> ".join(str(s) for s in self.steps)


@dataclass(frozen=True)
class KernelValue:
    value: object
    x: object
    y: object
    path: LatticePath
    precision: int = 0


# ---------------------------------------------------------------------------
# r = 1
# ---------------------------------------------------------------------------

def orthonormalize(measure, degree):
    """Monic orthogonal ``P_k`` with exact squared norms ``h_k``, ``k <= degree``.

    The orthonormal polynomial is ``P_k / sqrt(h_k)``; keeping the pair
    avoids the square root.
    """
    out = []
    for k in range(degree + 1):
        P = type_ii((measure,), (k,)).poly
        h = integrate(P * P, measure)
        if h == 0:
            raise NonNormalIndex(f"squared norm of P_{k} vanishes")
        out.append((P, h))
    return out


def cd_kernel_coefficients(measure, n):
    """Matrix ``K[i][k]`` with ``K_n(x, y) = sum K[i][k] x^i y^k``."""
    K = [[Fraction(0)] * n for _ in range(n)]
    for P, h in orthonormalize(measure, n - 1):
        for i, a in enumerate(P.coeffs):
            for k, b in enumerate(P.coeffs):
                K[i][k] += a * b / h
    return K


def cd_kernel_r1(measure, n, x, y):
    """``sum_{k<n} p_k(x) p_k(y)`` for the orthonormal ``p_k``; exact for rational input."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = 0
    for P, h in orthonormalize(measure, n - 1):
        total += P(x) * P(y) / h
    return total


# ---------------------------------------------------------------------------
# path-sum kernel
# ---------------------------------------------------------------------------

def kernel_coefficients(measures, path):
    """Exact arrays ``C[j][i][k]``: the kernel is ``sum C[j][i][k] x^i y^k w_j(y)``."""
    measures = tuple(measures)
    path = path if isinstance(path, LatticePath) else LatticePath(tuple(path))
    n = path.target
    if n.r != len(measures):
        raise ValueError("path dimension differs from the number of measures")
    N = n.size
    C = [[[Fraction(0)] * max(n[j], 1) for _ in range(max(N, 1))] for j in range(n.r)]
    for lo, hi in zip(path.steps, path.steps[1:]):
        P = type_ii(measures, lo).poly
        A = type_i(measures, hi).polys
        for j, Aj in enumerate(A):
            for i, p in enumerate(P.coeffs):
                for k, a in enumerate(Aj.coeffs):
                    C[j][i][k] += p * a
    return C


def mop_kernel(measures, path, x, y, precision=128):
    """Evaluate the path-sum kernel at ``(x, y)``.

    Weights are evaluated at twice ``precision``; hermite weights are divided
    by their total mass to match the normalized moments used by ``type_i``.
    """
    measures = tuple(measures)
    path = path if isinstance(path, LatticePath) else LatticePath(tuple(path))
    C = kernel_coefficients(measures, path)
    with mpmath.workprec(2 * precision):
        xv, yv = to_mpf(x), to_mpf(y)
        total = mpmath.mpf(0)
        for j, mu in enumerate(measures):
            if not any(v for row in C[j] for v in row):
                continue
            w = weight_value(mu, y, 2 * precision, normalized=True)
            poly_x = [sum(to_mpf(c) * yv ** k for k, c in enumerate(row)) for row in C[j]]
            total += w * sum(c * xv ** i for i, c in enumerate(poly_x))
    with mpmath.workprec(precision):
        return KernelValue(+total, x, y, path, precision)


@dataclass(frozen=True)
class PathCheck:
    """Outcome of comparing the kernel across every monotone path."""

    max_deviation: object
    structural_deviation: Fraction
    paths: int

    @property
    def exact(self):
        return self.structural_deviation == 0


def path_independence_check(measures, n, sample_points=(), precision=128):
    """Compare all monotone paths to ``n``.

    ``structural_deviation`` is the largest absolute difference between
    exact coefficient arrays; ``max_deviation`` is the largest difference of
    kernel values over ``sample_points`` (pairs ``(x, y)``).
    """
    measures = tuple(measures)
    n = MultiIndex.of(n)
    paths = [LatticePath(tuple(p)) for p in lattice_paths(n)]
    ref = kernel_coefficients(measures, paths[0])
    structural = Fraction(0)
    for path in paths[1:]:
        C = kernel_coefficients(measures, path)
        for A, B in zip(ref, C):
            for ra, rb in zip(A, B):
                for a, b in zip(ra, rb):
                    structural = max(structural, abs(a - b))
    worst = mpmath.mpf(0)
    for x, y in sample_points:
        vals = [mop_kernel(measures, p, x, y, precision).value for p in paths]
        with mpmath.workprec(precision):
            worst = max([worst] + [abs(v - vals[0]) for v in vals[1:]])
    return PathCheck(worst, structural, len(paths))
