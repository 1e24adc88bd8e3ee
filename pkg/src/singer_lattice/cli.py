"""Command-line entry point: ``singer-lattice <area> <verb> ...``.

Exit status is 0 on success, 1 when the input is rejected (invalid set,
failed check, unreadable file), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import abelianization, coset_enumerate
from .difference_sets import (
    DifferenceSet,
    delta_of,
    enumerate_difference_sets,
    singer_difference_set,
    verify_difference_set,
)
from .polygons import (
    build_digon,
    build_triangle,
    quotient_digon,
    quotient_triangle,
    standard_action,
    verify_covering,
    verify_generalized_polygon,
)
from .presentation import GroupPresentation, lattice_presentation, universal_presentation_weyl
from .weyl import build_weyl_graph, extract_gluing_matrix, parse_gluing, parse_weyl, validate_gluing


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _triangle_set(values: list[int]) -> DifferenceSet:
    # q+1 elements live mod q^2+q+1
    return DifferenceSet.of(values, delta_of(len(values) - 1))


def _read(path: str) -> str:
    return Path(path).read_text()


# -- handlers ----------------------------------------------------------------

def cmd_diffset_gen(args, out) -> int:
    print(singer_difference_set(args.q).serialize(), file=out)
    return 0


def cmd_diffset_verify(args, out) -> int:
    report = verify_difference_set(args.set, args.delta)
    print(report, file=out)
    return 0 if report.valid else 1


def cmd_diffset_classes(args, out) -> int:
    for d in enumerate_difference_sets(args.q):
        print(d.serialize(), file=out)
    return 0


def _polygon_system(args):
    if args.digon is not None:
        if len(args.digon) == 1:
            args.digon = args.digon * 2
        if len(args.digon) != 2:
            raise ValueError("--digon takes q or q1,q2")
        return build_digon(*args.digon)
    return build_triangle(_triangle_set(args.triangle))


def cmd_polygon_build(args, out) -> int:
    c = _polygon_system(args)
    k1, k2 = c.moduli
    print(f"{c.kind} chambers={len(c)} moduli={k1},{k2}", file=out)
    for lab in c.labels:
        print(f"{lab}-panels={len(c.panels[lab])}", file=out)
    if args.check is None:
        return 0
    report = verify_generalized_polygon(c, args.check)
    print(report, file=out)
    return 0 if report.passed else 1


def _quotient(args):
    if args.digon is not None:
        if len(args.digon) != 1:
            raise ValueError("--digon takes a single order q here")
        return quotient_digon(args.digon[0])
    return quotient_triangle(_triangle_set(args.triangle))


def cmd_polygon_suites(args, out) -> int:
    out.write(_quotient(args).serialize())
    return 0


def cmd_polygon_cover(args, out) -> int:
    quotient = _quotient(args)
    if args.digon is not None:
        total = build_digon(args.digon[0], args.digon[0])
    else:
        total = build_triangle(quotient.difference_set)
    ok = verify_covering(total, standard_action(total), quotient)
    print("covering ok" if ok else "covering fails", file=out)
    return 0 if ok else 1


def cmd_gluing_validate(args, out) -> int:
    report = validate_gluing(parse_gluing(_read(args.file)))
    print(report, file=out)
    return 0 if report.valid else 1


def cmd_gluing_present(args, out) -> int:
    g = parse_gluing(_read(args.file))
    if args.universal:
        pres = universal_presentation_weyl(build_weyl_graph(g))
    else:
        pres = lattice_presentation(g)
    out.write(pres.serialize())
    return 0


def cmd_gluing_weyl(args, out) -> int:
    out.write(build_weyl_graph(parse_gluing(_read(args.file))).serialize())
    return 0


def cmd_gluing_extract(args, out) -> int:
    out.write(extract_gluing_matrix(parse_weyl(_read(args.file))).serialize())
    return 0


def cmd_group_abelianize(args, out) -> int:
    inv = abelianization(GroupPresentation.parse(_read(args.file)))
    print(f"torsion {' '.join(map(str, inv.torsion)) or '-'}", file=out)
    print(f"rank {inv.free_rank}", file=out)
    return 0


def cmd_group_enumerate(args, out) -> int:
    table = coset_enumerate(GroupPresentation.parse(_read(args.file)), [], args.limit)
    print(table, file=out)
    return 0 if table.complete else 1


# -- parser ------------------------------------------------------------------

def _shape_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--digon", type=int_list, metavar="Q[,Q2]")
    g.add_argument("--triangle", type=int_list, metavar="D0,D1,...")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="singer-lattice",
                                 description="Singer cyclic polygons and lattices.")
    areas = ap.add_subparsers(dest="area", required=True)

    ds = areas.add_parser("diffset").add_subparsers(dest="verb", required=True)
    p = ds.add_parser("gen", help="Singer difference set of order q")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_diffset_gen)
    p = ds.add_parser("verify", help="check the difference property")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--set", type=int_list, required=True)
    p.set_defaults(func=cmd_diffset_verify)
    p = ds.add_parser("classes", help="equivalence classes by exhaustion")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_diffset_classes)

    pg = areas.add_parser("polygon").add_subparsers(dest="verb", required=True)
    p = pg.add_parser("build", help="build D(q1,q2) or T(D)")
    _shape_flags(p)
    p.add_argument("--check", type=int, metavar="M")
    p.set_defaults(func=cmd_polygon_build)
    p = pg.add_parser("suites", help="defining suites of the quotient")
    _shape_flags(p)
    p.set_defaults(func=cmd_polygon_suites)
    p = pg.add_parser("cover-check", help="verify the standard covering")
    _shape_flags(p)
    p.set_defaults(func=cmd_polygon_cover)

    gl = areas.add_parser("gluing").add_subparsers(dest="verb", required=True)
    for verb, func, helptext in [
        ("validate", cmd_gluing_validate, "check a gluing-matrix file"),
        ("present", cmd_gluing_present, "lattice presentation"),
        ("weyl", cmd_gluing_weyl, "serialize the Weyl graph"),
        ("extract", cmd_gluing_extract, "gluing matrix from a Weyl file"),
    ]:
        p = gl.add_parser(verb, help=helptext)
        p.add_argument("file")
        if verb == "present":
            p.add_argument("--universal", action="store_true",
                           help="universal group of the Weyl graph instead")
        p.set_defaults(func=func)

    gr = areas.add_parser("group").add_subparsers(dest="verb", required=True)
    p = gr.add_parser("abelianize", help="abelian invariants")
    p.add_argument("file")
    p.set_defaults(func=cmd_group_abelianize)
    p = gr.add_parser("enumerate", help="coset enumeration over the trivial subgroup")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=100_000)
    p.set_defaults(func=cmd_group_enumerate)
    return ap


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
