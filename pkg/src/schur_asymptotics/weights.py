"""Finite weight spectra, their realizations as variable tuples, and the
limiting step profile with its discrepancy diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class WeightSpectrum:
    """Distinct variable values x_1 > ... > x_n > 0 with densities summing to 1."""

    values: tuple[Fraction, ...]
    densities: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(_as_fraction(v) for v in self.values)
        dens = tuple(_as_fraction(d) for d in self.densities)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "densities", dens)
        if len(vals) == 0 or len(vals) != len(dens):
            raise ValueError("values and densities must be non-empty and equal-length")
        for j, v in enumerate(vals):
            if v <= 0:
                raise ValueError(f"spectrum value at index {j} not positive: {v}")
            if j + 1 < len(vals) and vals[j + 1] >= v:
                raise ValueError(
                    f"spectrum values must be strictly decreasing at index {j}"
                )
        for j, d in enumerate(dens):
            if d < 0 or d > 1:
                raise ValueError(f"density at index {j} outside [0,1]: {d}")
        if sum(dens) != 1:
            raise ValueError(f"densities must sum to 1, got {sum(dens)}")

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class VariableSet:
    """A concrete length-N tuple of spectrum values with their multiplicities."""

    spectrum: WeightSpectrum
    entries: tuple[Fraction, ...]
    multiplicities: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class PerturbedSet:
    """A variable set whose first k entries are replaced by arbitrary values.

    Replacement values may be exact rationals or complex numbers; entries
    beyond index k are shared with the source set.
    """

    entries: tuple
    k: int
    source: VariableSet

    @property
    def N(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Profile:
    """The decreasing step function t -> x_j^m on the density intervals.

    Atoms are the m-th powers of the spectrum values; weights are the
    densities. The step function itself is evaluated by f_profile.
    """

    atoms: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if any(a <= 0 for a in self.atoms):
            raise ValueError("profile atoms must be positive")
        if any(self.atoms[i] <= self.atoms[i + 1] for i in range(len(self.atoms) - 1)):
            raise ValueError("profile atoms must be strictly decreasing")
        if sum(self.weights) != 1:
            raise ValueError("profile weights must sum to 1")

    @property
    def n(self) -> int:
        return len(self.atoms)


def profile(spectrum: WeightSpectrum, m: int) -> Profile:
    """Profile with atoms x_j^m and the spectrum's densities."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return Profile(
        atoms=tuple(v**m for v in spectrum.values),
        weights=spectrum.densities,
        order=m,
    )


def multiplicities(spectrum: WeightSpectrum, N: int) -> tuple[int, ...]:
    """Cumulative half-up rounding of the densities to integer counts.

    K_j = round(N * sum(densities[:j+1])) - round(N * sum(densities[:j])),
    which guarantees sum(K) == N and |K_j - N*gamma_j| <= 1.
    """

    def half_up(q: Fraction) -> int:
        return math.floor(q + Fraction(1, 2))

    counts = []
    cum = Fraction(0)
    prev = 0
    for d in spectrum.densities:
        cum += N * d
        r = half_up(cum)
        counts.append(r - prev)
        prev = r
    return tuple(counts)


def realize(spectrum: WeightSpectrum, N: int) -> VariableSet:
    """Concrete length-N tuple: all copies of x_1 first, then x_2, and so on."""
    if N < spectrum.n:
        raise ValueError(f"N={N} smaller than the number of spectrum values {spectrum.n}")
    counts = multiplicities(spectrum, N)
    for j, (count, dens) in enumerate(zip(counts, spectrum.densities)):
        if count == 0 and dens > 0:
            raise ValueError(
                f"spectrum value x_{j + 1} has positive density {dens} but "
                f"multiplicity 0 at N={N}"
            )
    entries = []
    for v, count in zip(spectrum.values, counts):
        entries.extend([v] * count)
    return VariableSet(spectrum=spectrum, entries=tuple(entries), multiplicities=counts)


def perturb(X: VariableSet, U) -> PerturbedSet:
    """Replace the first len(U) entries of X by the values in U."""
    U = tuple(U)
    k = len(U)
    if k > X.N:
        raise ValueError(f"k={k} exceeds N={X.N}")
    entries = U + X.entries[k:]
    return PerturbedSet(entries=entries, k=k, source=X)


def f_profile(prof: Profile, t) -> Fraction:
    """Value of the step profile at t in [0,1]; t=1 takes the last atom."""
    t = _as_fraction(t)
    if t < 0 or t > 1:
        raise ValueError(f"t={float(t)} outside [0,1]")
    cum = Fraction(0)
    for a, w in zip(prof.atoms, prof.weights):
        cum += w
        if t < cum:
            return a
    return prof.atoms[-1]


def sorted_powers(W: PerturbedSet, m: int) -> tuple[Fraction, ...]:
    """m-th powers of the entries sorted so the base values are non-increasing."""
    for i, e in enumerate(W.entries):
        if isinstance(e, complex):
            raise TypeError(
                f"entry at index {i} is complex; the ordering diagnostic is "
                f"defined for real tuples only"
            )
        if e <= 0:
            raise ValueError(f"entry at index {i} not positive: {e}")
    ordered = sorted((_as_fraction(e) for e in W.entries), reverse=True)
    return tuple(e**m for e in ordered)


def discrepancy(W: PerturbedSet, m: int, prof: Profile) -> tuple[Fraction, Fraction]:
    """(R1, R_inf) distances between the sorted powers and the profile samples.

    R1 sums |w_hat_i - f(i/N)| over i = 1..N; R_inf is the max term. Exact.
    """
    powers = sorted_powers(W, m)
    N = len(powers)
    diffs = [abs(p - f_profile(prof, Fraction(i, N))) for i, p in enumerate(powers, start=1)]
    return sum(diffs, Fraction(0)), max(diffs)
