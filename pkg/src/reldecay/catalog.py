"""Group catalog: JSON loading and validation.

Rationals are written as ``"num/den"`` (or integer) strings, ``"inf"`` for
the unbounded sentinel.  Simple roots and reflections are labelled from 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .rootcore import (
    RootSystem,
    RootSystemError,
    build_root_system,
    classify,
    full_subsystem,
    highest_root,
    orthogonal_subsystem,
    span_subsystem,
)

CATALOG_VERSION = 1
F4_HIGHEST_ROOT = (2, 3, 4, 2)

REQUIRED = ("name", "cartan", "short_multiplicity")
OPTIONAL = (
    "label",
    "min_rep_exponents",
    "h1_generators",
    "h2_generators",
    "h1_threshold",
    "levi_factor_bound",
    "phi_formula_params",
    "candidate_words",
)


class CatalogError(ValueError):
    pass


def parse_rational(text: Any, allow_inf: bool = False) -> Fraction | None:
    """Parse ``"num/den"``, an integer string or an int; floats are rejected."""
    if isinstance(text, bool):
        raise CatalogError(f"expected a rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise CatalogError(f"expected a rational string, got {text!r}")
    s = text.strip()
    if s in ("inf", "+inf"):
        if allow_inf:
            return None
        raise CatalogError("infinity is not allowed here")
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise CatalogError(f"malformed rational {text!r}") from None


def format_rational(x: Fraction | None) -> str:
    return "inf" if x is None else str(x)


@dataclass(frozen=True)
class GroupCatalogEntry:
    name: str
    cartan: tuple[tuple[int, ...], ...]
    short_multiplicity: int
    label: str = ""
    min_rep_exponents: tuple[tuple[Fraction, ...], ...] = ()
    h1_generators: tuple[tuple[int, ...], ...] = ()
    h2_generators: tuple[int, ...] = ()
    h1_threshold: Fraction | None = None
    # None means the property-T "finite but unspecified" sentinel
    levi_factor_bound: Fraction | None = None
    has_levi_factor_bound: bool = False
    phi_formula_params: tuple[tuple[str, int], ...] = ()
    candidate_words: tuple[tuple[int, ...], ...] = ()

    def root_system(self) -> RootSystem:
        return root_system_for(self.cartan, self.short_multiplicity)

    def missing_fields(self) -> list[str]:
        missing = []
        if not self.min_rep_exponents:
            missing.append("min_rep_exponents")
        if not self.h1_generators:
            missing.append("h1_generators")
        if not self.h2_generators:
            missing.append("h2_generators")
        if self.h1_threshold is None:
            missing.append("h1_threshold")
        if not self.has_levi_factor_bound:
            missing.append("levi_factor_bound")
        return missing

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "name": self.name,
            "cartan": [list(r) for r in self.cartan],
            "short_multiplicity": self.short_multiplicity,
        }
        if self.label:
            d["label"] = self.label
        if self.min_rep_exponents:
            d["min_rep_exponents"] = [[format_rational(x) for x in v] for v in self.min_rep_exponents]
        if self.h1_generators:
            d["h1_generators"] = [list(r) for r in self.h1_generators]
        if self.h2_generators:
            d["h2_generators"] = list(self.h2_generators)
        if self.h1_threshold is not None:
            d["h1_threshold"] = format_rational(self.h1_threshold)
        if self.has_levi_factor_bound:
            d["levi_factor_bound"] = format_rational(self.levi_factor_bound)
        if self.phi_formula_params:
            d["phi_formula_params"] = dict(self.phi_formula_params)
        if self.candidate_words:
            d["candidate_words"] = [list(w) for w in self.candidate_words]
        return d


def root_system_for(cartan, short_multiplicity: int) -> RootSystem:
    """Long roots get multiplicity 1, every shorter length gets ``short_multiplicity``."""
    base = build_root_system(cartan)
    lengths = sorted(set(base.multiplicity_by_length))
    mult = {length: (1 if length == lengths[-1] else short_multiplicity) for length in lengths}
    return build_root_system(cartan, mult)


def _int_list(value, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise CatalogError(f"{where}: expected a list of integers")
    return tuple(value)


def _entry_from_dict(raw: Any, index: int) -> GroupCatalogEntry:
    if not isinstance(raw, dict):
        raise CatalogError(f"groups[{index}]: expected an object")
    name = raw.get("name", f"groups[{index}]")
    where = f"entry {name!r}"
    for key in REQUIRED:
        if key not in raw:
            raise CatalogError(f"{where}: missing required field {key!r}")
    unknown = set(raw) - set(REQUIRED) - set(OPTIONAL)
    if unknown:
        raise CatalogError(f"{where}: unknown fields {sorted(unknown)}")
    if not isinstance(name, str) or not name:
        raise CatalogError(f"groups[{index}] field 'name': expected a nonempty string")

    if not isinstance(raw["cartan"], list):
        raise CatalogError(f"{where} field 'cartan': expected a matrix")
    cartan = tuple(_int_list(row, f"{where} field 'cartan'") for row in raw["cartan"])
    r = raw["short_multiplicity"]
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise CatalogError(f"{where} field 'short_multiplicity': expected a positive integer")

    kwargs: dict[str, Any] = {}
    if "label" in raw:
        kwargs["label"] = str(raw["label"])
    try:
        if "min_rep_exponents" in raw:
            kwargs["min_rep_exponents"] = tuple(
                tuple(parse_rational(x) for x in v) for v in raw["min_rep_exponents"]
            )
        if "h1_threshold" in raw:
            kwargs["h1_threshold"] = parse_rational(raw["h1_threshold"])
        if "levi_factor_bound" in raw:
            kwargs["levi_factor_bound"] = parse_rational(raw["levi_factor_bound"], allow_inf=True)
            kwargs["has_levi_factor_bound"] = True
    except CatalogError as exc:
        raise CatalogError(f"{where}: {exc}") from None
    if "h1_generators" in raw:
        kwargs["h1_generators"] = tuple(
            _int_list(g, f"{where} field 'h1_generators'") for g in raw["h1_generators"]
        )
    if "h2_generators" in raw:
        kwargs["h2_generators"] = _int_list(raw["h2_generators"], f"{where} field 'h2_generators'")
    if "phi_formula_params" in raw:
        params = raw["phi_formula_params"]
        if not isinstance(params, dict):
            raise CatalogError(f"{where} field 'phi_formula_params': expected an object")
        kwargs["phi_formula_params"] = tuple(sorted(params.items()))
    if "candidate_words" in raw:
        kwargs["candidate_words"] = tuple(
            _int_list(w, f"{where} field 'candidate_words'") for w in raw["candidate_words"]
        )
    entry = GroupCatalogEntry(name, cartan, r, **kwargs)
    validate_entry(entry)
    return entry


def validate_entry(entry: GroupCatalogEntry) -> None:
    where = f"entry {entry.name!r}"
    try:
        spec = entry.root_system()
    except RootSystemError as exc:
        raise CatalogError(f"{where} field 'cartan': {exc}") from None
    n = spec.rank
    types = [str(c.dynkin) for c in classify(spec, full_subsystem(spec))]
    if len(types) != 1:
        raise CatalogError(f"{where}: root system {types} is not irreducible")
    beta = highest_root(spec)
    if types[0] == "F4" and beta != F4_HIGHEST_ROOT:
        raise CatalogError(
            f"{where}: F4 labelling must have highest root {F4_HIGHEST_ROOT}, got {beta}"
        )
    if len(set(spec.multiplicity_by_length)) == 1 and entry.short_multiplicity != 1:
        raise CatalogError(f"{where}: simply-laced system cannot carry a short multiplicity")
    for v in entry.min_rep_exponents:
        if len(v) != n:
            raise CatalogError(f"{where} field 'min_rep_exponents': vector of length {len(v)}, rank is {n}")
    if entry.h1_generators and list(entry.h1_generators) != [beta]:
        raise CatalogError(f"{where} field 'h1_generators': must be the highest root {beta}")
    if entry.h2_generators:
        if any(not 1 <= i <= n for i in entry.h2_generators):
            raise CatalogError(f"{where} field 'h2_generators': index out of range 1..{n}")
        h2 = span_subsystem(spec, entry.h2_generators)
        if h2.roots != orthogonal_subsystem(spec, beta).roots:
            raise CatalogError(
                f"{where} field 'h2_generators': span is not the subsystem orthogonal to the highest root"
            )
    if entry.h1_threshold is not None and entry.h1_threshold < 2:
        raise CatalogError(f"{where} field 'h1_threshold': must be at least 2")
    if entry.has_levi_factor_bound and entry.levi_factor_bound is not None and entry.levi_factor_bound <= 0:
        raise CatalogError(f"{where} field 'levi_factor_bound': must be positive")
    params = dict(entry.phi_formula_params)
    if params and params.get("r") != entry.short_multiplicity:
        raise CatalogError(f"{where} field 'phi_formula_params': r must equal short_multiplicity")
    for w in entry.candidate_words:
        if any(not 1 <= i <= n for i in w):
            raise CatalogError(f"{where} field 'candidate_words': reflection index out of range 1..{n}")


def parse_catalog(text: str, source: str = "<catalog>") -> list[GroupCatalogEntry]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise CatalogError(f"{source}: top level must be an object")
    if doc.get("version") != CATALOG_VERSION:
        raise CatalogError(f"{source}: unsupported catalog version {doc.get('version')!r}")
    groups = doc.get("groups")
    if not isinstance(groups, list):
        raise CatalogError(f"{source}: field 'groups' must be a list")
    entries = [_entry_from_dict(raw, i) for i, raw in enumerate(groups)]
    names = [e.name for e in entries]
    dupes = sorted({x for x in names if names.count(x) > 1})
    if dupes:
        raise CatalogError(f"{source}: duplicate group names {dupes}")
    return entries


def load_catalog(path: str | Path | None = None) -> list[GroupCatalogEntry]:
    """Load a catalog file, or the bundled catalog when ``path`` is None."""
    if path is None:
        text = resources.files("reldecay").joinpath("data/catalog.json").read_text(encoding="utf-8")
        return parse_catalog(text, "bundled catalog")
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogError(f"{path}: {exc.strerror}") from None
    return parse_catalog(text, str(path))


def dump_catalog(entries) -> str:
    doc = {"version": CATALOG_VERSION, "groups": [e.to_dict() for e in entries]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def find_entry(entries, name: str) -> GroupCatalogEntry:
    for e in entries:
        if e.name == name:
            return e
    known = ", ".join(e.name for e in entries)
    raise CatalogError(f"unknown group {name!r} (known: {known})")
