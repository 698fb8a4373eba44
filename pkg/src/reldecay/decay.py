"""Decay thresholds: exponents, subgroup half-densities, Hoelder combination.

All thresholds are exact rationals; ``+inf`` is represented by
``DecayThreshold(None)`` and means "some finite bound exists, value unknown"
or "no finite bound", depending on ``reason``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .parabolic import conjugate_subsystem, subsystem_delta
from .rootcore import RootSystem, Subsystem, WeylElement, Weight, as_weight


class DecayError(ValueError):
    pass


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class DecayThreshold:
    """A representation is strongly L^(value + eps); ``value=None`` is +inf."""

    value: Fraction | None
    sharp: bool = False
    reason: str = field(default="", compare=False)

    @classmethod
    def infinite(cls, reason: str = "") -> DecayThreshold:
        return cls(None, False, reason)

    @classmethod
    def of(cls, x, sharp: bool = False, reason: str = "") -> DecayThreshold:
        return cls(None if x is None else Fraction(x), sharp, reason)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def _key(self):
        return (1, 0) if self.value is None else (0, self.value)

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DecayThreshold.of(other)
        if not isinstance(other, DecayThreshold):
            return NotImplemented
        return self._key() < other._key()

    def __eq__(self, other):
        if isinstance(other, DecayThreshold):
            return self.value == other.value
        if self.value is None:
            return False
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


@dataclass(frozen=True)
class Exponent:
    weight: Weight
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weight", as_weight(self.weight))


@dataclass(frozen=True)
class SubgroupBound:
    """A subsystem on which the restriction is strongly L^(threshold + eps)."""

    subsystem: Subsystem
    threshold: DecayThreshold
    k: int

    @classmethod
    def from_threshold(cls, subsystem: Subsystem, threshold) -> SubgroupBound:
        if not isinstance(threshold, DecayThreshold):
            threshold = DecayThreshold.of(threshold)
        if not threshold.is_finite:
            raise DecayError(f"subsystem {subsystem.label} has no finite decay bound")
        return cls(subsystem, threshold, max(1, math.ceil(threshold.value / 2)))

    def __post_init__(self):
        if self.k < 1:
            raise DecayError("k must be a positive integer")
        if self.threshold.is_finite and 2 * self.k < self.threshold.value:
            raise DecayError(f"2k = {2 * self.k} is below the threshold {self.threshold}")


@dataclass(frozen=True)
class OscillatorBound:
    """Upper bound on oscillator matrix coefficients over (y_2, y_3, y_4).

    ``phi_exponents`` are the exponents of y_2, y_3, y_4 in the bound; they
    depend only on the short root multiplicity ``r``.
    """

    short_mult: int

    @property
    def phi_exponents(self) -> Weight:
        r = self.short_mult
        return (Fraction(-(3 * r + 5), 4), Fraction(-(r + 2)), Fraction(-(r + 3), 2))


def sharp_p_from_exponents(delta_g: Sequence, exponents: Iterable) -> DecayThreshold:
    """Least p with every exponent plus (1/2 - 1/p) log delta_G coefficientwise >= 0.

    Coordinate j forces p >= 2 d_j / (d_j + 2 c_j).
    """
    d = as_weight(delta_g)
    if any(x <= 0 for x in d):
        raise DecayError("delta_G must have strictly positive coefficients")
    best = None
    for n, chi in enumerate(exponents):
        c = chi.weight if isinstance(chi, Exponent) else as_weight(chi)
        if len(c) != len(d):
            raise DecayError("exponent and delta_G have different lengths")
        for j, (cj, dj) in enumerate(zip(c, d)):
            denom = dj + 2 * cj
            if denom <= 0:
                return DecayThreshold.infinite(
                    f"exponent {n} coordinate {j + 1}: d + 2c = {denom} <= 0"
                )
            bound = 2 * dj / denom
            if best is None or bound > best:
                best = bound
    if best is None:
        raise DecayError("no exponents given")
    return DecayThreshold(best, sharp=True)


def half_density(spec: RootSystem, bounds: Sequence[SubgroupBound]) -> Weight:
    """Sum of delta_{H_i} / (2 k_i)."""
    h = [Fraction(0)] * spec.rank
    for b in bounds:
        dh = subsystem_delta(spec, b.subsystem)
        for j in range(spec.rank):
            h[j] += dh[j] / (2 * b.k)
    return tuple(h)


def threshold_from_half_density(delta_g: Sequence, h: Sequence) -> DecayThreshold:
    """Least p with h_j >= d_j / p at every coordinate."""
    best = Fraction(0)
    for j, (dj, hj) in enumerate(zip(as_weight(delta_g), h)):
        if dj == 0:
            continue
        if hj <= 0:
            return DecayThreshold.infinite(f"coordinate {j + 1} has zero half-density")
        best = max(best, dj / hj)
    return DecayThreshold(best)


def combine_subgroup_decay(
    spec: RootSystem, delta_g: Sequence, bounds: Sequence[SubgroupBound]
) -> DecayThreshold:
    if not bounds:
        raise DecayError("at least one subgroup bound is required")
    return threshold_from_half_density(delta_g, half_density(spec, bounds))


def holder_combine(p: DecayThreshold, q: DecayThreshold) -> DecayThreshold:
    """1/r = 1/p + 1/q, an infinite side contributing 0."""
    p, q = (x if isinstance(x, DecayThreshold) else DecayThreshold.of(x) for x in (p, q))
    if not p.is_finite and not q.is_finite:
        raise DecayError("at least one Hoelder exponent must be finite")
    inv = sum((1 / x.value for x in (p, q) if x.is_finite), Fraction(0))
    return DecayThreshold(1 / inv)


def restrict_weight(weight: Sequence, constraint: Sequence, eliminate_index: int) -> Weight:
    """Eliminate y_j using the relation prod y_i^(b_i) = 1.

    ``eliminate_index`` is the 1-based label of the eliminated coordinate.
    """
    c = as_weight(weight)
    b = as_weight(constraint)
    j = eliminate_index - 1
    if not 0 <= j < len(b):
        raise DecayError(f"eliminate_index {eliminate_index} out of range")
    if b[j] == 0:
        raise DecayError(f"constraint has zero coefficient at coordinate {eliminate_index}")
    return tuple(c[i] - c[j] * b[i] / b[j] for i in range(len(c)) if i != j)


def oscillator_sharp_q(phi: OscillatorBound | Sequence, delta_h2_restricted: Sequence) -> DecayThreshold:
    """Least q making every exponent of Phi^q delta_H2 nonpositive."""
    e = [-x for x in (phi.phi_exponents if isinstance(phi, OscillatorBound) else as_weight(phi))]
    f = as_weight(delta_h2_restricted)
    if len(e) != len(f):
        raise DecayError("Phi exponents and delta_H2 have different lengths")
    if any(x <= 0 for x in e):
        raise DecayError("Phi exponents must be strictly negative")
    if any(x < 0 for x in f):
        raise DecayError("delta_H2 exponents must be nonnegative")
    return DecayThreshold(max(fj / ej for fj, ej in zip(f, e)), sharp=True)


def weyl_search(
    spec: RootSystem,
    delta_g: Sequence,
    bounds: Sequence[SubgroupBound],
    weyl_set: Iterable[WeylElement],
) -> tuple[DecayThreshold, WeylElement]:
    """Conjugate all bounds by the same w and keep the smallest threshold.

    Ties go to the shorter, then lexicographically smaller, word.
    """
    best: tuple | None = None
    for w in weyl_set:
        conj = [
            SubgroupBound(conjugate_subsystem(spec, b.subsystem, w), b.threshold, b.k)
            for b in bounds
        ]
        t = combine_subgroup_decay(spec, delta_g, conj)
        key = (t._key(), len(w.word), w.word)
        if best is None or key < best[0]:
            best = (key, t, w)
    if best is None:
        raise DecayError("empty Weyl candidate set")
    if not best[1].is_finite:
        raise DecayError("every candidate gives an infinite threshold")
    return best[1], best[2]


def isolation_check(p_nonminimal: DecayThreshold, p_min_sharp: DecayThreshold) -> int | None:
    """Least k with p_nonminimal <= 2k < p_min_sharp, or None."""
    p, m = (x if isinstance(x, DecayThreshold) else DecayThreshold.of(x) for x in (p_nonminimal, p_min_sharp))
    if not p.is_finite:
        return None
    k = max(1, math.ceil(p.value / 2))
    if not m.is_finite or 2 * k < m.value:
        return k
    return None

