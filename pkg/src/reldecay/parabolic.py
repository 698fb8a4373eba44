"""Heisenberg radicals, the iterated Heisenberg tower, and modular characters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rootcore import (
    Root,
    RootSystem,
    RootSystemError,
    Subsystem,
    WeylElement,
    Weight,
    apply_weyl,
    classify,
    full_subsystem,
    is_positive,
    make_subsystem,
    orthogonal_subsystem,
    pairing,
    subsystem_highest_root,
)


class TowerShapeError(RootSystemError):
    """The orthogonal subsystem of a tower level has no well-defined next factor."""


@dataclass(frozen=True)
class TowerLevel:
    level_index: int
    center_root: Root
    radical_roots: tuple[Root, ...]
    ambient: Subsystem

    @property
    def is_abelian(self) -> bool:
        return self.radical_roots == (self.center_root,)

    def __len__(self) -> int:
        return len(self.radical_roots)


@dataclass(frozen=True)
class ParabolicShape:
    levi_simple_indices: frozenset[int]
    radical_roots: tuple[Root, ...]


def _level(spec: RootSystem, ambient: Subsystem, index: int) -> TowerLevel:
    beta = subsystem_highest_root(spec, ambient)
    radical = tuple(g for g in ambient.positive_part if pairing(spec, g, beta) > 0)
    return TowerLevel(index, beta, radical, ambient)


def heisenberg_radical(spec: RootSystem, within: Subsystem | None = None) -> TowerLevel:
    """Roots pairing strictly positively with the highest root."""
    ambient = full_subsystem(spec) if within is None else within
    return _level(spec, ambient, 1)


def _next_factor(spec: RootSystem, perp: Subsystem) -> Subsystem | None:
    comps = classify(spec, perp)
    if not comps:
        return None
    if len(comps) == 1:
        return comps[0].subsystem
    big = [c for c in comps if str(c.dynkin) != "A1"]
    if len(comps) > 3 or len(big) > 1:
        shape = " x ".join(str(c.dynkin) for c in comps)
        raise TowerShapeError(f"orthogonal subsystem {shape} is not simple, A1 x R or A1 x A1 x R")
    if not big:
        shape = " x ".join(str(c.dynkin) for c in comps)
        raise TowerShapeError(f"orthogonal subsystem {shape} has no distinguished factor")
    return big[0].subsystem


def heisenberg_tower(spec: RootSystem) -> list[TowerLevel]:
    """Iterate Heisenberg radicals down the chain of Levi factors.

    Every level is expressed in the coordinates of ``spec``; ``level.ambient``
    records the simple factor the level was computed in.
    """
    levels = []
    ambient: Subsystem | None = full_subsystem(spec)
    while ambient is not None:
        level = _level(spec, ambient, len(levels) + 1)
        levels.append(level)
        perp = orthogonal_subsystem(spec, level.center_root, within=ambient)
        ambient = _next_factor(spec, perp)
    return levels


def radical_to_parabolic(spec: RootSystem, roots: Iterable[Sequence[int]]) -> ParabolicShape:
    roots = {tuple(r) for r in roots}
    for r in roots:
        if r not in spec.positive_roots:
            raise RootSystemError(f"{r} is not a positive root")
    # the radical contains a simple root iff that root is outside the Levi
    levi = frozenset(i for i in range(1, spec.rank + 1) if spec.simple_root(i) not in roots)
    expected = tuple(
        g for g in spec.positive_roots if any(c and (i + 1) not in levi for i, c in enumerate(g))
    )
    if set(expected) != roots:
        raise RootSystemError("root set is not the unipotent radical of a standard parabolic")
    return ParabolicShape(levi, expected)


def modular_weight(spec: RootSystem, roots: Iterable[Sequence[int]]) -> Weight:
    """Multiplicity-weighted sum of the given positive roots."""
    total = [Fraction(0)] * spec.rank
    for g in roots:
        if not is_positive(g) or not spec.is_root(g):
            raise RootSystemError(f"{tuple(g)} is not a positive root")
        m = spec.multiplicity(g)
        for i, c in enumerate(g):
            total[i] += m * c
    return tuple(total)


def subsystem_delta(spec: RootSystem, s: Subsystem) -> Weight:
    return modular_weight(spec, s.positive_part)


def conjugate_subsystem(spec: RootSystem, s: Subsystem, w: WeylElement) -> Subsystem:
    """Image of ``s`` under ``w``, with positive part taken inside the ambient positive roots."""
    label = s.label if not w.word else f"{s.label or 'H'}^{w.word_string()}"
    return make_subsystem(spec, (apply_weyl(spec, w, g) for g in s.roots), label)
