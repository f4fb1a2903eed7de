"""Limit functional, log-potential, saddle equation, and the steepest-descent
value for the almost-staircase ratio."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .weights import Profile, WeightSpectrum

SOLVER_REL_TOL = 1e-13
SOLVER_MAX_ITER = 200


def Q_eval(spectrum: WeightSpectrum, m: int, u) -> complex:
    """Per-atom limit functional sum_j gamma_j log[(u^m - x_j^m)/(u - x_j)].

    Each factor is evaluated in polynomial form sum_r u^r x_j^(m-1-r), which
    removes the spurious singularity at u = x_j; principal branch per term.
    """
    total = 0j
    for x, g in zip(spectrum.values, spectrum.densities):
        xf = float(x)
        poly = 0j
        for r in range(m):
            poly += complex(u) ** r * xf ** (m - 1 - r)
        if poly == 0:
            raise ZeroDivisionError(f"u={u} is a genuine singularity for atom x={xf}")
        total += float(g) * cmath.log(poly)
    return total


def Q_prime(spectrum: WeightSpectrum, m: int, u) -> complex:
    """Analytic derivative of Q_eval in u, via the log-derivative of each
    polynomial factor (regular at u = x_j)."""
    total = 0j
    for x, g in zip(spectrum.values, spectrum.densities):
        xf = float(x)
        poly = 0j
        dpoly = 0j
        for r in range(m):
            poly += complex(u) ** r * xf ** (m - 1 - r)
            if r >= 1:
                dpoly += r * complex(u) ** (r - 1) * xf ** (m - 1 - r)
        total += float(g) * dpoly / poly
    return total


def theorem_limit(spectrum: WeightSpectrum, m: int, x_head, U) -> complex:
    """sum over i of Q(u_i) - Q(x_i) for the k perturbed leading entries."""
    x_head = tuple(x_head)
    U = tuple(U)
    if len(x_head) != len(U):
        raise ValueError("x_head and U must have equal length")
    total = 0j
    for x, u in zip(x_head, U):
        total += Q_eval(spectrum, m, u) - Q_eval(spectrum, m, x)
    return total


def F_eval(prof: Profile, xi) -> complex:
    """Log-potential sum_j gamma_j log(xi - a_j), the closed form of the
    defining integral for a piecewise-constant profile."""
    total = 0j
    for a, w in zip(prof.atoms, prof.weights):
        z = complex(xi) - float(a)
        if z == 0:
            raise ZeroDivisionError(f"xi={xi} coincides with profile atom {float(a)}")
        total += float(w) * cmath.log(z)
    return total


def g_eval(prof: Profile, y: float, xi: float) -> float:
    """Saddle equation left side y - sum_j gamma_j xi/(xi - a_j)."""
    total = y
    for a, w in zip(prof.atoms, prof.weights):
        af = float(a)
        if xi == af:
            raise ZeroDivisionError(f"xi={xi} coincides with profile atom {af}")
        total -= float(w) * xi / (xi - af)
    return total


def g_prime(prof: Profile, xi: float) -> float:
    """Derivative of the saddle equation, sum_j gamma_j a_j/(xi - a_j)^2 > 0."""
    return sum(float(w) * float(a) / (xi - float(a)) ** 2 for a, w in zip(prof.atoms, prof.weights))


@dataclass(frozen=True)
class SaddleResult:
    """Critical point of y*log(xi) - F(xi) on the branch right of all atoms."""

    xi0: float
    eta0: float
    value: float
    second_deriv: float
    residual: float


def critical_point(prof: Profile, y: float) -> SaddleResult:
    """Unique root of the saddle equation on (a_1, infinity) for y > 1.

    Brackets the root geometrically, bisects to 1e-13 relative width, then
    polishes with one Newton step. The branch left of the atoms (y < 1) is
    not implemented.
    """
    if y <= 1:
        raise ValueError(f"y={y} outside the supported regime y > 1")
    a1 = float(prof.atoms[0])
    lo = a1 * (1 + 2.0**-20)
    hi = a1 * y / (y - 1) * 2
    while g_eval(prof, y, lo) > 0:
        lo = a1 + (lo - a1) / 2
        if lo <= a1:
            raise RuntimeError("failed to bracket the critical point from below")
    iters = 0
    while g_eval(prof, y, hi) < 0:
        hi *= 2
        iters += 1
        if iters > 100:
            raise RuntimeError("failed to bracket the critical point from above")

    for _ in range(SOLVER_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= SOLVER_REL_TOL * mid:
            break
        if g_eval(prof, y, mid) < 0:
            lo = mid
        else:
            hi = mid
    xi0 = 0.5 * (lo + hi)
    step = g_eval(prof, y, xi0) / g_prime(prof, xi0)
    polished = xi0 - step
    if polished > a1:
        xi0 = polished

    residual = abs(g_eval(prof, y, xi0))
    if residual > 1e-12 * y:
        raise RuntimeError(f"solver residual {residual} exceeds tolerance {1e-12 * y}")
    eta0 = math.log(xi0)
    value = y * eta0 - F_eval(prof, xi0).real
    second = -g_prime(prof, xi0) * xi0
    return SaddleResult(xi0=xi0, eta0=eta0, value=value, second_deriv=second, residual=residual)


def steepest_value(prof: Profile, lam1: int, N: int, m: int) -> float:
    """Leading steepest-descent term y*eta1 - F(e^eta1) at y = (lam1+N-1)/(mN)."""
    y = (lam1 + N - 1) / (m * N)
    return critical_point(prof, y).value


def delta_eps(xi0: float, f1: float, eps: float) -> float:
    """Lower bound on the real-part drop of the log-potential away from the
    saddle on the circle through xi0: (1/2) log(1 + 2 f1 xi0 (1-cos eps)/(xi0-f1)^2)."""
    if not xi0 > f1 > 0:
        raise ValueError(f"requires xi0 > f1 > 0, got xi0={xi0}, f1={f1}")
    return 0.5 * math.log(1 + 2 * f1 * xi0 * (1 - math.cos(eps)) / (xi0 - f1) ** 2)
