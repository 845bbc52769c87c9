"""Simultaneous polynomial root finding (Aberth-Ehrlich) in mpmath."""

from dataclasses import dataclass, field

import mpmath

from ..errors import DomainError, NonConvergence
from .domain import to_mpc as _mpc
from .poly import Polynomial

__all__ = ["RootSet", "poly_roots", "horner_with_bound"]


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial with per-root residuals ``|p(root)|``.

    ``clusters`` groups indices of roots closer than ``2**(-prec/4)`` to each
    other; a cluster of size ``m`` stands for a root of multiplicity ``m``.
    """

    points: tuple
    residuals: tuple
    prec: int
    clusters: tuple = field(default=())

    def __len__(self):
        return len(self.points)

    def multiplicities(self):
        return [(self.points[c[0]], len(c)) for c in self.clusters]


def horner_with_bound(coeffs, z):
    """Return ``(p(z), p'(z), sum |a_k| |z|^k)`` for coefficients low-to-high."""
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    bound = mpmath.mpf(0)
    az = abs(z)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
        bound = bound * az + abs(c)
    return p, dp, bound


def poly_roots(p, precision, maxiter=None, tol_bits=None):
    """All complex roots of ``p`` at ``precision`` bits.

    Aberth iteration on the monic normalization, started on a circle of
    radius ``1 + max|a_k|``, followed by a Newton polish of every root that
    is not part of a cluster.  A root is accepted once its backward error
    ``|p(z)| / sum|a_k||z|^k`` drops below ``2**(-precision + tol_bits)``.
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    d = p.degree
    if d < 1:
        raise DomainError("poly_roots needs degree >= 1")
    if tol_bits is None:
        tol_bits = max(8, d.bit_length() + 4)
    if maxiter is None:
        maxiter = 200 + 20 * d
    work = precision + 16
    with mpmath.workprec(work):
        coeffs = [_mpc(c) for c in p.coeffs]
        lead = coeffs[-1]
        mon = [c / lead for c in coeffs]
        if d == 1:
            zs = [-mon[0]]
        else:
            zs = _aberth(mon, d, maxiter, precision, tol_bits)
        clusters = _clusters(zs, precision)
        clustered = {i for c in clusters if len(c) > 1 for i in c}
        for i, z in enumerate(zs):
            if i not in clustered:
                zs[i] = _polish(mon, z)
    with mpmath.workprec(2 * precision):
        exact_coeffs = [_mpc(c) for c in p.coeffs]
        residuals = tuple(abs(horner_with_bound(exact_coeffs, z)[0]) for z in zs)
    with mpmath.workprec(precision):
        points = tuple(+z for z in zs)
    return RootSet(points=points, residuals=residuals, prec=precision,
                   clusters=tuple(tuple(c) for c in clusters))


def _backward_ok(mon, z, eps):
    val, _, bound = horner_with_bound(mon, z)
    return abs(val) <= eps * bound


def _aberth(mon, d, maxiter, precision, tol_bits):
    radius = 1 + max(abs(c) for c in mon[:-1])
    # offset angle keeps the start off any symmetry axis of real polynomials
    zs = [radius * mpmath.expj(2 * mpmath.pi * k / d + mpmath.mpf("0.7"))
          for k in range(d)]
    eps = mpmath.ldexp(1, -precision + tol_bits)
    done = [False] * d
    for _ in range(maxiter):
        moved = False
        for k in range(d):
            if done[k]:
                continue
            zk = zs[k]
            val, dval, bound = horner_with_bound(mon, zk)
            if abs(val) <= eps * bound:
                done[k] = True
                continue
            s = mpmath.mpc(0)
            for j in range(d):
                if j != k:
                    diff = zk - zs[j]
                    if diff != 0:
                        s += 1 / diff
            if dval == 0:
                ratio = mpmath.mpc(eps, eps)
            else:
                ratio = val / dval
            denom = 1 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            zs[k] = zk - step
            moved = True
            # roots at or very near 0 never pass the relative test; accept a
            # negligible absolute step instead (the Newton polish follows)
            if abs(step) <= eps * max(1, abs(zk)):
                done[k] = True
        if all(done):
            return zs
        if not moved:
            break
    if all(done[k] or _backward_ok(mon, z, eps) for k, z in enumerate(zs)):
        return zs
    raise NonConvergence(
        f"Aberth iteration did not converge in {maxiter} sweeps at {precision} bits")


def _polish(mon, z, steps=3):
    val, dval, _ = horner_with_bound(mon, z)
    for _ in range(steps):
        if dval == 0 or val == 0:
            break
        znew = z - val / dval
        nval, ndval, _ = horner_with_bound(mon, znew)
        if abs(nval) >= abs(val):
            break
        z, val, dval = znew, nval, ndval
    return z


def _clusters(zs, precision):
    """Group roots whose pairwise distance is below ``2**(-precision/4)``."""
    tol = mpmath.ldexp(1, -precision // 4)
    parent = list(range(len(zs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(zs[i] - zs[j]) < tol * max(1, abs(zs[i])):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(len(zs)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())
