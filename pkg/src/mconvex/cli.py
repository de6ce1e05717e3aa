"""
Command-line interface.

    mconvex check    (--input FILE | --gen SPEC)
    mconvex hull     (--input FILE | --gen SPEC) --flag-c IDS --flag-d IDS
    mconvex distance (--input FILE | --gen SPEC) --flag-c IDS --flag-d IDS [--witness]
    mconvex render   (--input FILE | --gen SPEC) --what lattice|hull|family|kstar
    mconvex verify   [--gen SPEC ...] [--input FILE ...] [--suite NAME ...]
    mconvex export   --gen SPEC --out FILE

Exit status: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import LatticeError
from .flags import (
    as_flag,
    count_flags,
    flags_adjacent,
    jordan_holder,
    shortest_gallery,
)
from .generators import GeneratorSpec, write_fixtures
from .hull import (
    extract_antimatroid,
    format_subset,
    hull_as_preantimatroid,
    mconv_recursive,
    require_semimodular,
)
from .io import dumps_lattice, load_lattice
from .lattice import Lattice, is_modular_lattice, is_semimodular
from .render import render_family, render_lattice, render_subposet
from .verify import (
    DEFAULT_CORPUS,
    DEFAULT_FLAG_BUDGET,
    DEFAULT_PAIR_BUDGET,
    SUITES,
    report_document,
    summary_table,
    verify_lattice,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _flag_ids(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ids, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mconvex", description="Modular convex hulls of flags in semimodular lattices."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--budget-flags", type=_positive, default=DEFAULT_FLAG_BUDGET)
        p.add_argument("--budget-pairs", type=_positive, default=DEFAULT_PAIR_BUDGET)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-v", "--verbose", action="store_true")

    def single_input(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", help="lattice interchange file (JSON)")
        src.add_argument("--gen", help="generator spec family:param[:seed]")

    def flag_pair(p):
        p.add_argument("--flag-c", type=_flag_ids, required=True, help="ids bottom to top")
        p.add_argument("--flag-d", type=_flag_ids, required=True, help="ids bottom to top")

    p = sub.add_parser("check", help="lattice statistics")
    single_input(p)
    common(p)

    p = sub.add_parser("hull", help="modular convex hull of two flags")
    single_input(p)
    flag_pair(p)
    common(p, ("text", "json", "dot"))

    p = sub.add_parser("distance", help="gallery distance of two flags")
    single_input(p)
    flag_pair(p)
    p.add_argument("--witness", action="store_true", help="also print a shortest gallery")
    common(p)

    p = sub.add_parser("render", help="DOT Hasse diagram")
    single_input(p)
    p.add_argument("--what", choices=("lattice", "hull", "family", "kstar"), default="lattice")
    p.add_argument("--flag-c", type=_flag_ids)
    p.add_argument("--flag-d", type=_flag_ids)
    common(p, ("dot",))

    p = sub.add_parser("verify", help="run the verification harness")
    p.add_argument("--gen", action="append", default=[], help="generator spec (repeatable)")
    p.add_argument("--input", action="append", default=[], help="lattice file (repeatable)")
    p.add_argument("--suite", action="append", choices=SUITES, help="restrict suites (repeatable)")
    p.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identity)")
    common(p)

    p = sub.add_parser("export", help="write generated lattices as interchange files")
    p.add_argument("--gen", action="append", default=[], help="generator spec (repeatable)")
    p.add_argument("--dir", help="write one file per spec under DIR/<family>/ (default corpus if no --gen)")
    common(p)
    return parser


def _load(args) -> tuple[Lattice, str]:
    if args.input:
        return load_lattice(args.input), args.input
    try:
        spec = GeneratorSpec.parse(args.gen)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return spec.build(), str(spec)


def _flags(L: Lattice, args):
    if args.flag_c is None or args.flag_d is None:
        raise InputError("--flag-c and --flag-d are required here")
    return as_flag(L, args.flag_c), as_flag(L, args.flag_d)


def _json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_check(args) -> tuple[str, int]:
    L, name = _load(args)
    nflags = count_flags(L)
    semi = is_semimodular(L)
    stats = {
        "lattice": name,
        "elements": L.element_count,
        "rank": L.n,
        "flags": nflags if nflags <= args.budget_flags else f">{args.budget_flags}",
        "semimodular": semi,
        "modular": is_modular_lattice(L),
    }
    if args.format == "json":
        return _json(stats), EXIT_OK
    lines = [f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in stats.items()]
    return "\n".join(lines) + "\n", EXIT_OK


def hull_document(L: Lattice, C, D) -> dict:
    hull = mconv_recursive(L, C, D)
    K = hull_as_preantimatroid(L, hull)
    star = extract_antimatroid(K)
    doc = {
        "C": list(C),
        "D": list(D),
        "sigma": list(hull.sigma.sigma),
        "inversions": hull.sigma.inversions,
        "z": list(hull.z),
        "z_prime": list(hull.z_prime),
        "hull": hull.elements(),
        "preantimatroid": K.as_lists(),
        "antimatroid": star.as_lists(),
    }
    if L.labels is not None:
        doc["hull_labels"] = [L.labels[u] for u in hull.elements()]
    return doc


def cmd_hull(args) -> tuple[str, int]:
    L, _ = _load(args)
    C, D = _flags(L, args)
    if args.format == "dot":
        return render_subposet(L, mconv_recursive(L, C, D).members), EXIT_OK
    doc = hull_document(L, C, D)
    if args.format == "json":
        return _json(doc), EXIT_OK

    def fam(sets):
        return " ".join(format_subset(sum(1 << (i - 1) for i in s)) for s in sets)

    lines = [
        f"sigma: {' '.join(map(str, doc['sigma']))}",
        f"inversions: {doc['inversions']}",
        f"z: {' '.join(map(str, doc['z']))}",
        f"z_prime: {' '.join(map(str, doc['z_prime']))}",
        f"hull ({len(doc['hull'])}): {' '.join(map(str, doc['hull']))}",
        f"preantimatroid ({len(doc['preantimatroid'])}): {fam(doc['preantimatroid'])}",
        f"antimatroid ({len(doc['antimatroid'])}): {fam(doc['antimatroid'])}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_distance(args) -> tuple[str, int]:
    L, _ = _load(args)
    C, D = _flags(L, args)
    require_semimodular(L)
    sigma = jordan_holder(L, C, D)
    doc: dict = {"distance": sigma.inversions, "sigma": list(sigma.sigma)}
    if args.witness:
        gallery = shortest_gallery(L, C, D, budget=args.budget_flags)
        assert len(gallery) - 1 == sigma.inversions, "BFS gallery length differs from inversions"
        assert all(flags_adjacent(F, G) for F, G in zip(gallery, gallery[1:]))
        doc["gallery"] = [list(F) for F in gallery]
    if args.format == "json":
        return _json(doc), EXIT_OK
    lines = [f"distance: {doc['distance']}"]
    for F in doc.get("gallery", []):
        lines.append("  " + ",".join(map(str, F)))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_render(args) -> tuple[str, int]:
    L, _ = _load(args)
    if args.what == "lattice":
        return render_lattice(L), EXIT_OK
    C, D = _flags(L, args)
    hull = mconv_recursive(L, C, D)
    if args.what == "hull":
        return render_subposet(L, hull.members), EXIT_OK
    K = hull_as_preantimatroid(L, hull)
    return render_family(K if args.what == "family" else extract_antimatroid(K)), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    entries: list[tuple[str, Lattice]] = []
    try:
        specs = [GeneratorSpec.parse(g) for g in args.gen]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not specs and not args.input:
        specs = [GeneratorSpec.parse(g) for g in DEFAULT_CORPUS]
    for spec in specs:
        entries.append((str(spec), spec.build()))
    for path in args.input:
        entries.append((path, load_lattice(path)))

    suites = tuple(args.suite) if args.suite else SUITES
    reports = []
    for name, L in entries:
        reports += verify_lattice(
            L, name, suites, args.budget_pairs, args.seed, args.budget_flags
        )
        if args.verbose:
            print(f"verified {name}", file=sys.stderr)
    doc = report_document(reports, args.seed, args.budget_pairs, args.budget_flags, args.timing)
    code = EXIT_OK if doc["total_failures"] == 0 else EXIT_FAIL
    if args.out:
        # machine-readable report to the file, summary to stdout
        with open(args.out, "w") as fh:
            fh.write(_json(doc))
        args.out = None
        return summary_table(reports, args.timing), code
    if args.format == "json":
        return _json(doc), code
    return summary_table(reports, args.timing), code


def cmd_export(args) -> tuple[str, int]:
    try:
        specs = [GeneratorSpec.parse(g) for g in args.gen]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.dir:
        paths = write_fixtures(args.dir, specs or DEFAULT_CORPUS)
        return "".join(f"{p}\n" for p in paths), EXIT_OK
    if len(specs) != 1:
        raise InputError("export without --dir takes exactly one --gen")
    return dumps_lattice(specs[0].build()), EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "hull": cmd_hull,
    "distance": cmd_distance,
    "render": cmd_render,
    "verify": cmd_verify,
    "export": cmd_export,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "input"):
        args.input = None
    try:
        text, code = COMMANDS[args.command](args)
    except (LatticeError, InputError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
