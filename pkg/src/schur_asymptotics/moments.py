"""Moments of the limiting counting measure by contour quadrature.

The p-th moment is a closed contour integral of a rational function whose
only admissible enclosed singularities are the real atoms x_1..x_n. Two
independent numerical routes are provided: spectrally accurate trapezoidal
quadrature on one validated circle, and a sum of small-circle residue
integrals around each atom.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

CONTOUR_MARGIN = 1e-6
QUAD_START_NODES = 256
QUAD_MAX_NODES = 2**14
QUAD_TOL = 1e-10
IMAG_TOL = 1e-8


@dataclass(frozen=True)
class MomentProblem:
    """Parameters of the limiting-measure moment integral.

    values are the distinct positive atoms; y_weights maps 1-based atom
    indices (the given subset of rows carrying extra weights) to positive
    reals; kappa is the vertical position in (0,1).
    """

    values: tuple[float, ...]
    kappa: float
    m: int
    y_weights: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "y_weights", dict(self.y_weights))
        if not vals:
            raise ValueError("at least one atom required")
        if any(v <= 0 for v in vals):
            raise ValueError("atoms must be positive")
        if len(set(vals)) != len(vals):
            raise ValueError("atoms must be distinct")
        if not 0 < self.kappa < 1:
            raise ValueError(f"kappa={self.kappa} outside (0,1)")
        if self.m < 1:
            raise ValueError(f"m={self.m} must be >= 1")
        for i, y in self.y_weights.items():
            if not 1 <= i <= len(vals):
                raise ValueError(f"y-weight index {i} outside 1..{len(vals)}")
            if y <= 0:
                raise ValueError(f"y-weight at index {i} not positive: {y}")

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Contour:
    """Circle |z - center| = radius with an initial quadrature node count."""

    center: complex
    radius: float
    points: int = QUAD_START_NODES

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")


def excluded_singularities(problem: MomentProblem) -> list[complex]:
    """Singularities a valid contour must leave outside: the rotated m-th
    root copies of each atom and the poles -1/y_i of the weight terms."""
    out: list[complex] = []
    for x in problem.values:
        for k in range(1, problem.m):
            out.append(x * cmath.exp(2j * math.pi * k / problem.m))
    for y in problem.y_weights.values():
        out.append(complex(-1.0 / y))
    return out


def Qprime_kappa(problem: MomentProblem, z):
    """The rational weight-derivative function of the moment integrand.

    Each atom contributes the log-derivative P'(z)/P(z) of the polynomial
    P(z) = sum_r z^r x^(m-1-r), algebraically equal to
    m z^(m-1)/(z^m - x^m) - 1/(z - x) but regular at z = x. Accepts complex
    scalars or numpy arrays.
    """
    n = problem.n
    m = problem.m
    zc = z + 0j
    total = zc * 0
    for x in problem.values:
        poly = zc * 0
        dpoly = zc * 0
        for r in range(m):
            poly = poly + zc**r * x ** (m - 1 - r)
            if r >= 1:
                dpoly = dpoly + r * zc ** (r - 1) * x ** (m - 1 - r)
        total = total + dpoly / poly
    total = total / (n * (1 - problem.kappa))
    if problem.y_weights:
        ysum = zc * 0
        for y in problem.y_weights.values():
            ysum = ysum + y / (1 + y * zc)
        total = total + problem.kappa / (n * (1 - problem.kappa)) * ysum
    return total


def integrand(problem: MomentProblem, p: int, z):
    """(1/z) (z Q'_kappa(z) + sum_j z/(n(z - x_j)))^(p+1); regular at z = 0."""
    if p < 0:
        raise ValueError(f"p must be non-negative, got {p}")
    zc = z + 0j
    bracket = zc * Qprime_kappa(problem, zc)
    for x in problem.values:
        bracket = bracket + zc / (problem.n * (zc - x))
    return bracket ** (p + 1) / zc


def validate_contour(problem: MomentProblem, contour: Contour) -> None:
    """Check that the circle encloses every atom and no other singularity,
    with a relative safety margin on both sides."""
    r_in = contour.radius * (1 - CONTOUR_MARGIN)
    r_out = contour.radius * (1 + CONTOUR_MARGIN)
    for j, x in enumerate(problem.values, start=1):
        d = abs(x - contour.center)
        if d >= r_in:
            raise ValueError(
                f"atom x_{j}={x} at distance {d:.6g} from the center is not "
                f"strictly inside radius {contour.radius:.6g}"
            )
    for s in excluded_singularities(problem):
        d = abs(s - contour.center)
        if d <= r_out:
            raise ValueError(
                f"excluded singularity {s:.6g} at distance {d:.6g} from the "
                f"center is not strictly outside radius {contour.radius:.6g}"
            )


def _segment_distance(s: complex, lo: float, hi: float) -> float:
    clamped = min(max(s.real, lo), hi)
    return math.hypot(s.real - clamped, s.imag)


def default_contour(problem: MomentProblem, points: int = QUAD_START_NODES) -> Contour:
    """Circle hugging the real atom segment, pushed halfway toward the
    nearest excluded singularity; always validated before use."""
    x_hi = max(problem.values)
    x_lo = min(problem.values)
    excluded = excluded_singularities(problem)
    if excluded:
        gap = min(_segment_distance(s, x_lo, x_hi) for s in excluded)
    else:
        gap = x_lo
    contour = Contour(
        center=complex((x_hi + x_lo) / 2), radius=(x_hi - x_lo) / 2 + gap / 2, points=points
    )
    validate_contour(problem, contour)
    return contour


def alternate_contour(problem: MomentProblem, contour: Contour) -> Contour:
    """A second valid circle around the same center, for invariance checks."""
    excluded = excluded_singularities(problem)
    if excluded:
        reach = min(abs(s - contour.center) for s in excluded)
        radius = contour.radius + 0.45 * (reach - contour.radius)
    else:
        radius = contour.radius * 1.25
    alt = Contour(center=contour.center, radius=radius, points=contour.points)
    validate_contour(problem, alt)
    return alt


def _circle_quadrature(fn, center: complex, radius: float, p: int, points: int) -> complex:
    """(1/(2(p+1) pi i)) times the contour integral of fn over the circle,
    by node-doubling trapezoidal sums on the periodic parameterization."""
    M = max(points, QUAD_START_NODES)
    prev = None
    while M <= QUAD_MAX_NODES:
        theta = 2 * np.pi * np.arange(M) / M
        e = np.exp(1j * theta)
        vals = fn(center + radius * e)
        est = complex(radius * np.sum(vals * e) / (M * (p + 1)))
        if prev is not None and abs(est - prev) <= QUAD_TOL:
            return est
        prev = est
        M *= 2
    raise RuntimeError(
        f"quadrature did not converge to {QUAD_TOL} within {QUAD_MAX_NODES} nodes"
    )


def moment_quadrature(problem: MomentProblem, p: int, contour: Contour) -> float:
    """p-th moment of the limiting measure over one validated contour."""
    validate_contour(problem, contour)
    est = _circle_quadrature(
        lambda z: integrand(problem, p, z), contour.center, contour.radius, p, contour.points
    )
    if abs(est.imag) > IMAG_TOL:
        raise RuntimeError(
            f"imaginary residue {est.imag:.3g} exceeds {IMAG_TOL}; contour is suspect"
        )
    return est.real


def moment_residues(problem: MomentProblem, p: int) -> float:
    """Independent route: sum of small-circle integrals around each atom."""
    total = 0j
    excluded = excluded_singularities(problem)
    for j, x in enumerate(problem.values):
        dists = [abs(x - other) for i, other in enumerate(problem.values) if i != j]
        dists += [abs(x - s) for s in excluded]
        radius = (min(dists) if dists else abs(x)) / 4
        total += _circle_quadrature(
            lambda z: integrand(problem, p, z), complex(x), radius, p, QUAD_START_NODES
        )
    if abs(total.imag) > IMAG_TOL:
        raise RuntimeError(
            f"imaginary residue {total.imag:.3g} exceeds {IMAG_TOL}; pole circles are suspect"
        )
    return total.real
