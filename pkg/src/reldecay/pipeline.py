"""End-to-end decay computation for a catalog entry, and its report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .catalog import GroupCatalogEntry, format_rational, parse_rational
from .decay import (
    DecayError,
    DecayThreshold,
    Exponent,
    OscillatorBound,
    SubgroupBound,
    half_density,
    holder_combine,
    isolation_check,
    oscillator_sharp_q,
    restrict_weight,
    sharp_p_from_exponents,
    weyl_search,
)
from .parabolic import conjugate_subsystem, modular_weight, subsystem_delta
from .rootcore import (
    RootSystem,
    Subsystem,
    WeylElement,
    classify,
    enumerate_weyl,
    full_subsystem,
    highest_root,
    make_subsystem,
    orthogonal_subsystem,
    span_subsystem,
    weyl_element,
)


class IncompleteEntryError(DecayError):
    pass


@dataclass(frozen=True)
class GroupSetup:
    """Root-system data shared by the pipeline and the CLI."""

    entry: GroupCatalogEntry
    spec: RootSystem
    beta: tuple[int, ...]
    h1: Subsystem
    h2: Subsystem
    delta_g: tuple[Fraction, ...]

    def bounds(self, threshold_h2: DecayThreshold) -> list[SubgroupBound]:
        return [
            SubgroupBound.from_threshold(self.h1, DecayThreshold.of(self.entry.h1_threshold)),
            SubgroupBound.from_threshold(self.h2, threshold_h2),
        ]

    def candidates(self, full: bool = False) -> list[WeylElement]:
        if full or not self.entry.candidate_words:
            return enumerate_weyl(self.spec)
        return [weyl_element(self.spec, w) for w in self.entry.candidate_words]


def setup(entry: GroupCatalogEntry) -> GroupSetup:
    spec = entry.root_system()
    beta = highest_root(spec)
    h1 = make_subsystem(spec, [beta], "H1")
    if entry.h2_generators:
        h2 = span_subsystem(spec, entry.h2_generators, "H2")
    else:
        h2 = orthogonal_subsystem(spec, beta, label="H2")
    return GroupSetup(entry, spec, beta, h1, h2, modular_weight(spec, spec.positive_roots))


def _require(entry: GroupCatalogEntry) -> None:
    missing = entry.missing_fields()
    if missing:
        raise IncompleteEntryError(f"entry {entry.name!r} is incomplete: missing {', '.join(missing)}")


def h2_threshold(g: GroupSetup) -> tuple[DecayThreshold, DecayThreshold, tuple[Fraction, ...]]:
    """Oscillator q and the Hoelder-combined H2 threshold."""
    types = [str(c.dynkin) for c in classify(g.spec, full_subsystem(g.spec))]
    if types != ["F4"]:
        raise IncompleteEntryError(
            f"entry {g.entry.name!r}: the oscillator bound is only available for relative type F4"
        )
    restricted = restrict_weight(subsystem_delta(g.spec, g.h2), g.beta, 1)
    q = oscillator_sharp_q(OscillatorBound(g.entry.short_multiplicity), restricted)
    levi = DecayThreshold.of(g.entry.levi_factor_bound)
    return q, holder_combine(levi, q), restricted


def _w(x: Sequence) -> list[str]:
    return [format_rational(Fraction(c)) for c in x]


def _t(t: DecayThreshold) -> str:
    return format_rational(t.value)


@dataclass
class DecayReport:
    group: str
    delta_G: list[str]
    delta_H1: list[str]
    delta_H2: list[str]
    delta_H2_restricted: list[str]
    phi_exponents: list[str]
    q_H2: str
    levi_factor_bound: str
    threshold_H2: str
    k_H1: int
    k_H2: int
    witness_word: list[int]
    half_density: list[str]
    p_nonminimal: str
    p_min_sharp: str
    p_of_G: str
    p_of_G_sharp: bool
    isolation: int | None
    provenance: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> DecayReport:
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> DecayReport:
        return cls.from_dict(json.loads(text))

    def value(self, name: str) -> Fraction | None:
        """A rational-valued field parsed back to a ``Fraction`` (None for inf)."""
        return parse_rational(getattr(self, name), allow_inf=True)


def pipeline(entry: GroupCatalogEntry, full_search: bool = False) -> DecayReport:
    _require(entry)
    g = setup(entry)
    q, thr_h2, restricted = h2_threshold(g)
    bounds = g.bounds(thr_h2)
    p_nonmin, witness = weyl_search(g.spec, g.delta_g, bounds, g.candidates(full_search))
    conj = [SubgroupBound(conjugate_subsystem(g.spec, b.subsystem, witness), b.threshold, b.k) for b in bounds]
    h = half_density(g.spec, conj)
    p_min = sharp_p_from_exponents(g.delta_g, [Exponent(v) for v in entry.min_rep_exponents])
    p_of_g = max(p_min, p_nonmin)
    searched = "full Weyl group" if full_search or not entry.candidate_words else "catalog candidate_words"
    return DecayReport(
        group=entry.name,
        delta_G=_w(g.delta_g),
        delta_H1=_w(subsystem_delta(g.spec, g.h1)),
        delta_H2=_w(subsystem_delta(g.spec, g.h2)),
        delta_H2_restricted=_w(restricted),
        phi_exponents=_w(OscillatorBound(entry.short_multiplicity).phi_exponents),
        q_H2=_t(q),
        levi_factor_bound=format_rational(entry.levi_factor_bound),
        threshold_H2=_t(thr_h2),
        k_H1=bounds[0].k,
        k_H2=bounds[1].k,
        witness_word=list(witness.word),
        half_density=_w(h),
        p_nonminimal=_t(p_nonmin),
        p_min_sharp=_t(p_min),
        p_of_G=_t(p_of_g),
        p_of_G_sharp=p_min >= p_nonmin,
        isolation=isolation_check(p_nonmin, p_min),
        provenance={
            "delta_G": "cartan, short_multiplicity",
            "delta_H2": "h2_generators, short_multiplicity",
            "q_H2": "phi_formula_params, delta_H2 restricted by |e^beta| = 1",
            "threshold_H2": "levi_factor_bound (+) q_H2",
            "p_nonminimal": f"h1_threshold, threshold_H2, {searched}, witness {witness.word_string()}",
            "p_min_sharp": "min_rep_exponents, delta_G",
            "p_of_G": "max(p_min_sharp, p_nonminimal)",
            "isolation": "p_nonminimal <= 2k < p_min_sharp",
        },
    )
