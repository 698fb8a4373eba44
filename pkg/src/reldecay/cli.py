"""Command-line driver.

Exit codes: 0 success, 1 domain error (unknown group, invalid catalog,
incomplete entry), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .catalog import CatalogError, find_entry, format_rational, load_catalog
from .decay import DecayError, Exponent, SubgroupBound, half_density, sharp_p_from_exponents, weyl_search
from .parabolic import conjugate_subsystem, heisenberg_tower, radical_to_parabolic, subsystem_delta
from .pipeline import h2_threshold, pipeline, setup
from .rootcore import RootSystemError, classify, highest_root, weyl_element


class UsageError(Exception):
    pass


def parse_word(text: str) -> tuple[int, ...]:
    """``"4,2,3,2,1"``, ``"4 2 3 2 1"`` or ``"s4s2s3s2s1"``; an empty string is the identity."""
    cleaned = text.replace("s", " ").replace(",", " ").split()
    try:
        word = tuple(int(tok) for tok in cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed word {text!r}") from None
    if any(i < 1 for i in word):
        raise argparse.ArgumentTypeError(f"reflection indices start at 1: {text!r}")
    return word


def _vec(x: Sequence) -> list[str]:
    return [format_rational(Fraction(c)) for c in x]


def _checked_word(spec, word):
    if any(i > spec.rank for i in word):
        raise UsageError(f"reflection index out of range 1..{spec.rank} in word {list(word)}")
    return weyl_element(spec, word)


def cmd_roots(entry, args) -> dict:
    spec = entry.root_system()
    rows = [
        {
            "root": list(r),
            "squared_length": format_rational(spec.squared_length(r)),
            "multiplicity": spec.multiplicity(r),
        }
        for r in spec.positive_roots
    ]
    return {
        "group": entry.name,
        "rank": spec.rank,
        "highest_root": list(highest_root(spec)),
        "count": len(rows),
        "positive_roots": rows,
    }


def cmd_tower(entry, args) -> dict:
    spec = entry.root_system()
    levels = heisenberg_tower(spec)
    union = [g for lv in levels for g in lv.radical_roots]
    shape = radical_to_parabolic(spec, union)
    return {
        "group": entry.name,
        "sizes": [len(lv) for lv in levels],
        "levels": [
            {
                "level": lv.level_index,
                "factor": " x ".join(str(c.dynkin) for c in classify(spec, lv.ambient)),
                "center": list(lv.center_root),
                "size": len(lv),
                "abelian": lv.is_abelian,
            }
            for lv in levels
        ],
        "parabolic_levi_simple_indices": sorted(shape.levi_simple_indices),
        "parabolic_radical_size": len(shape.radical_roots),
    }


def cmd_delta(entry, args) -> dict:
    g = setup(entry)
    w = _checked_word(g.spec, args.word or ())
    h1 = conjugate_subsystem(g.spec, g.h1, w)
    h2 = conjugate_subsystem(g.spec, g.h2, w)
    out: dict[str, Any] = {"group": entry.name, "word": list(w.word)}
    if args.subsystem in ("h1", "all"):
        out["delta_H1"] = _vec(subsystem_delta(g.spec, h1))
    if args.subsystem in ("h2", "all"):
        out["delta_H2"] = _vec(subsystem_delta(g.spec, h2))
    if args.subsystem == "all":
        out["delta_G"] = _vec(g.delta_g)
        d1, d2 = subsystem_delta(g.spec, h1), subsystem_delta(g.spec, h2)
        out["half_density"] = _vec(a / 2 + b / 4 for a, b in zip(d1, d2))
    return out


def cmd_sharp_p(entry, args) -> dict:
    if not entry.min_rep_exponents:
        raise DecayError(f"entry {entry.name!r} is incomplete: missing min_rep_exponents")
    g = setup(entry)
    exps = [Exponent(v) for v in entry.min_rep_exponents]
    p = sharp_p_from_exponents(g.delta_g, exps)
    return {
        "group": entry.name,
        "delta_G": _vec(g.delta_g),
        "exponents": [_vec(e.weight) for e in exps],
        "p_min_sharp": str(p),
    }


def _nonminimal(entry, word=None, full=False) -> dict:
    missing = [f for f in entry.missing_fields() if f != "min_rep_exponents"]
    if missing:
        raise DecayError(f"entry {entry.name!r} is incomplete: missing {', '.join(missing)}")
    g = setup(entry)
    q, thr, _ = h2_threshold(g)
    bounds = g.bounds(thr)
    candidates = [_checked_word(g.spec, word)] if word is not None else g.candidates(full)
    best, witness = weyl_search(g.spec, g.delta_g, bounds, candidates)
    conj = [SubgroupBound(conjugate_subsystem(g.spec, b.subsystem, witness), b.threshold, b.k) for b in bounds]
    return {
        "group": entry.name,
        "q_H2": str(q),
        "threshold_H2": str(thr),
        "k_H1": bounds[0].k,
        "k_H2": bounds[1].k,
        "candidates": len(candidates),
        "witness_word": list(witness.word),
        "half_density": _vec(half_density(g.spec, conj)),
        "p_nonminimal": str(best),
    }


def cmd_nonminimal(entry, args) -> dict:
    return _nonminimal(entry, word=args.word, full=args.search)


def cmd_search(entry, args) -> dict:
    return _nonminimal(entry, full=True)


def cmd_pipeline(entry, args) -> dict:
    return pipeline(entry).to_dict()


COMMANDS = {
    "roots": cmd_roots,
    "tower": cmd_tower,
    "delta": cmd_delta,
    "sharp-p": cmd_sharp_p,
    "nonminimal": cmd_nonminimal,
    "pipeline": cmd_pipeline,
    "search": cmd_search,
}


def _cell(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_cell(x) for x in v) + ")"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _is_rows(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(x, dict) for x in v)


def render_table(data: dict) -> str:
    lines = []
    scalars = {k: v for k, v in data.items() if not isinstance(v, dict) and not _is_rows(v)}
    width = max((len(k) for k in scalars), default=0)
    for k, v in scalars.items():
        lines.append(f"{k.ljust(width)}  {_cell(v)}")
    for k, v in data.items():
        if isinstance(v, dict):
            lines.append("")
            lines.append(f"{k}:")
            w = max(len(x) for x in v)
            for kk, vv in sorted(v.items()):
                lines.append(f"  {kk.ljust(w)}  {_cell(vv)}")
        elif _is_rows(v):
            cols = list(v[0])
            cells = [[_cell(row[c]) for c in cols] for row in v]
            widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
            lines.append("")
            lines.append(f"{k}:")
            lines.append("  " + "  ".join(c.ljust(wd) for c, wd in zip(cols, widths)).rstrip())
            for r in cells:
                lines.append("  " + "  ".join(x.ljust(wd) for x, wd in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    return render_table(data)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    common.add_argument("--catalog", metavar="PATH", default=argparse.SUPPRESS,
                        help="catalog JSON file (default: bundled catalog)")

    parser = argparse.ArgumentParser(prog="reldecay", parents=[common],
                                     description="Exact L^p decay computations on relative root systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("group")
        return p

    add("roots", "positive roots with multiplicities")
    add("tower", "iterated Heisenberg tower and its parabolic")
    p = add("delta", "modular characters of G, H1, H2 (optionally conjugated)")
    p.add_argument("--subsystem", choices=["h1", "h2", "all"], default="all")
    p.add_argument("--word", type=parse_word, default=None, help="Weyl word, e.g. 4,2,3,2,1")
    add("sharp-p", "sharp decay of the minimal representation from its exponents")
    p = add("nonminimal", "decay bound for non-minimal representations")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--search", action="store_true", help="scan the full Weyl group")
    g.add_argument("--word", type=parse_word, default=None, help="use this Weyl word only")
    add("pipeline", "full decay report")
    add("search", "full Weyl group scan with witness word")
    return parser


def run_command(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "table")
    try:
        entries = load_catalog(getattr(args, "catalog", None))
        entry = find_entry(entries, args.group)
        data = COMMANDS[args.command](entry, args)
    except UsageError as exc:
        print(f"reldecay: usage error: {exc}", file=stderr)
        return 2
    except (CatalogError, DecayError, RootSystemError) as exc:
        print(f"reldecay: error: {exc}", file=stderr)
        return 1
    stdout.write(render(data, fmt))
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
