"""Command-line front end.

Exit codes: 0 success, 1 invalid CERS input, 2 unreadable or unparsable
input, 3 internal consistency failure (the two resonance constructions
disagree).
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import export
from .coding import algorithm1_codes, code_map
from .equivalence import (
    SearchBudgetExceeded,
    canonical_form,
    find_code_collision_counterexample,
    resonantly_equivalent,
)
from .generate import enumerate_cers, enumerate_isomorphism_classes
from .matchings import enumerate_perfect_matchings
from .model import (
    CersError,
    CersSpec,
    InvalidSpecError,
    SpecFormatError,
    build_plane_graph,
    validate_spec,
    well_order,
)
from .resonance import (
    graphs_isomorphic,
    is_daisy_cube,
    is_median_graph,
    is_partial_cube_with_n_classes,
    maximal_codes,
    p4_daisy_property_holds,
    relabel,
    resonance_from_codes,
    resonance_from_matchings,
)

log = logging.getLogger("cers")

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_ORACLE = 0, 1, 2, 3


class OracleMismatch(CersError):
    pass


def _load(path) -> CersSpec:
    try:
        spec = CersSpec.load(path)
    except OSError as exc:
        raise SpecFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    report = validate_spec(spec)
    if not report.ok:
        raise InvalidSpecError(report.violations)
    return spec


def _sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def cmd_validate(args) -> int:
    try:
        spec = CersSpec.load(args.spec)
    except OSError as exc:
        raise SpecFormatError(f"cannot read {args.spec}: {exc.strerror or exc}") from exc
    report = validate_spec(spec)
    print(report)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_codes(args) -> int:
    spec = _load(args.spec)
    ordering = well_order(spec, args.root)
    codes = algorithm1_codes(spec, ordering)
    if args.format == "json":
        print(codes.to_json())
    else:
        print("# ordering: " + " ".join(ordering.order))
        sys.stdout.write(codes.to_text())
    return EXIT_OK


def cmd_resonance(args) -> int:
    spec = _load(args.spec)
    ordering = well_order(spec, args.root)
    codes = algorithm1_codes(spec, ordering)
    graph = resonance_from_codes(codes.codes)
    report = []
    if args.oracle:
        plane = build_plane_graph(spec)
        matchings = enumerate_perfect_matchings(plane)
        by_matching = resonance_from_matchings(plane, matchings)
        cmap = code_map(spec, ordering, matchings)
        agree = (
            len(set(cmap.values())) == len(matchings)
            and set(cmap.values()) == set(codes.codes)
            and relabel(by_matching, cmap) == graph.label_edges()
        )
        if not agree:
            raise OracleMismatch("resonance graph from matchings disagrees with the codes")
        report.append(("oracle_agreement", True, None))
    if args.check_median:
        report.append(("median", is_median_graph(graph), None))
        report.append(
            ("partial_cube", is_partial_cube_with_n_classes(graph, spec.n), None)
        )
    if args.check_daisy:
        daisy = is_daisy_cube(codes.codes)
        report.append(("daisy", daisy, list(maximal_codes(codes.codes).maximal)))
        ok, path = p4_daisy_property_holds(graph)
        report.append(("p4_property", ok, list(path) if path else None))
    text = export.FORMATS[args.format](graph)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report:
        sys.stdout.write(export.property_report(report))
    return EXIT_OK


def cmd_equiv(args) -> int:
    a, b = _load(args.spec_a), _load(args.spec_b)
    eq = resonantly_equivalent(a, b)
    ga = resonance_from_codes(algorithm1_codes(a, well_order(a)).codes)
    gb = resonance_from_codes(algorithm1_codes(b, well_order(b)).codes)
    iso, _ = graphs_isomorphic(ga, gb)
    print("equivalent" if eq else "not-equivalent")
    print(f"canonical A: {canonical_form(a)}")
    print(f"canonical B: {canonical_form(b)}")
    print(f"resonance graphs: {'isomorphic' if iso else 'non-isomorphic'}")
    return EXIT_OK


def cmd_search(args) -> int:
    log.info("searching up to %d faces, sizes %s", args.max_faces, args.sizes)
    try:
        hit = find_code_collision_counterexample(
            args.max_faces,
            args.sizes,
            chains_only=args.chains_only,
            max_seconds=args.max_seconds,
            jobs=args.jobs,
        )
    except SearchBudgetExceeded as exc:
        print(f"budget exhausted: {exc}")
        return EXIT_OK
    if hit is None:
        print("none within bounds")
    else:
        print(hit.to_json())
    return EXIT_OK


def cmd_enumerate(args) -> int:
    gen = enumerate_isomorphism_classes if args.distinct == "isomorphism" else enumerate_cers
    for spec in gen(args.max_faces, args.sizes, chains_only=args.chains_only):
        print(spec.to_json(indent=None))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cers",
        description="Perfect matchings, binary codes and resonance graphs of "
        "catacondensed even ring systems.",
    )
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a cers-spec-v1 document")
    s.add_argument("spec")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("codes", help="binary codes of all perfect matchings")
    s.add_argument("spec")
    s.add_argument("--root", help="terminal face to start the ordering from")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_codes)

    s = sub.add_parser("resonance", help="emit the resonance graph")
    s.add_argument("spec")
    s.add_argument("--root")
    s.add_argument("--format", choices=sorted(export.FORMATS), default="dot")
    s.add_argument("-o", "--output", help="write the graph here instead of stdout")
    s.add_argument("--check-median", action="store_true")
    s.add_argument("--check-daisy", action="store_true")
    s.add_argument(
        "--oracle",
        action="store_true",
        help="also build the graph from enumerated matchings and compare",
    )
    s.set_defaults(func=cmd_resonance)

    s = sub.add_parser("equiv", help="decide resonant equivalence of two specs")
    s.add_argument("spec_a")
    s.add_argument("spec_b")
    s.set_defaults(func=cmd_equiv)

    for name, func in (("search-counterexample", cmd_search), ("enumerate", cmd_enumerate)):
        s = sub.add_parser(name)
        s.add_argument("--max-faces", type=int, required=True)
        s.add_argument("--sizes", type=_sizes, default=(6,), help="e.g. 4,6,8")
        s.add_argument("--chains-only", action="store_true")
        s.set_defaults(func=func)
        if name == "enumerate":
            s.add_argument(
                "--distinct", choices=("spec", "isomorphism"), default="isomorphism"
            )
        else:
            s.add_argument("--max-seconds", type=float, default=None)
            s.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except SpecFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvalidSpecError as exc:
        for v in exc.violations:
            print(f"invalid: {v}", file=sys.stderr)
        return EXIT_INVALID
    except OracleMismatch as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (KeyError, ValueError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
