"""Command-line front end.

Every subcommand reads the text formats of :mod:`finiso.formats` and
writes line-oriented text starting with the schema header, so outputs
can be diffed exactly and piped back in.  Exit codes: 0 for computed
results (including negative verdicts), 1 for domain errors and
reduction counterexamples, 2 for malformed files or bad flags.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import formats
from .actions import adjust_group_metric, orbit_encode
from .codes import render_code
from .errors import FinisoError, ParseError, UsageError
from .metric import MetricSpace, diameter, distance_spectrum, find_isometry
from .rationals import format_rational, parse_rational
from .reductions import (
    RadiusSequence,
    default_thresholds,
    discrete_to_structure,
    graph_to_space,
    repair_isometry_to_tree_iso,
    node_label,
    sum_space,
    tree_to_space,
    gromov_full,
    gromov_invariant,
)
from .structures import structure_isomorphic
from .trees import tree_canonical, tree_rank
from .ultrametric import ball_structure, canonical_code, sphere_decompose, transfer
from .verify import named_corpus, named_map, named_oracle, verify_reduction

HEADER = formats.SCHEMA_HEADER


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _emit(text: str) -> None:
    # Emitted file formats already carry the schema header.
    sys.stdout.write(text)


def _say(*lines: str) -> None:
    for line in lines:
        sys.stdout.write(line + "\n")


def _parse_rational_list(text: str):
    return [parse_rational(part) for part in text.split(",") if part.strip()]


def _parse_map_flag(text: str) -> dict[Fraction, Fraction]:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise UsageError(f"map entries are 'from:to', got {part!r}")
        a, b = part.split(":", 1)
        out[parse_rational(a)] = parse_rational(b)
    return out


def _radii_for(args, tree) -> RadiusSequence:
    if args.radii:
        return RadiusSequence.of(_parse_rational_list(args.radii))
    return RadiusSequence.harmonic(tree.depth + 1)


def _print_bijection(X: MetricSpace, Y: MetricSpace, bij) -> None:
    for i, j in enumerate(bij.forward):
        _say(f"map {i} {j}")


# --- handlers ---------------------------------------------------------------

def cmd_check_metric(args) -> int:
    X = formats.parse_space(_read(args.file))
    _say(HEADER, "valid true", f"points {X.size}",
         f"ultrametric {'true' if X.is_ultrametric else 'false'}")
    spectrum = " ".join(format_rational(v) for v in sorted(distance_spectrum(X)))
    _say(f"spectrum {spectrum}")
    return 0


def cmd_isometry(args) -> int:
    X = formats.parse_space(_read(args.file_x))
    Y = formats.parse_space(_read(args.file_y))
    _say(HEADER)
    if X.size != Y.size:
        _say("verdict none", "reason SizeMismatch")
        return 0
    mode = "exhaustive" if args.exhaustive else "pruned"
    bij = find_isometry(X, Y, mode=mode)
    if bij is None:
        _say("verdict none")
    else:
        _say("verdict isometric")
        _print_bijection(X, Y, bij)
    return 0


def cmd_canon_ultra(args) -> int:
    X = formats.parse_space(_read(args.file))
    _say(HEADER, f"code {render_code(canonical_code(X))}")
    return 0


def cmd_ball_structure(args) -> int:
    X = formats.parse_space(_read(args.file))
    _emit(formats.emit_structure(ball_structure(X).as_structure()))
    return 0


def cmd_sphere(args) -> int:
    X = formats.parse_space(_read(args.file))
    center = args.center
    if center in X.labels:
        idx = X.labels.index(center)
    else:
        try:
            idx = int(center)
        except ValueError:
            raise UsageError(f"unknown center {center!r}") from None
        if not 0 <= idx < X.size:
            raise UsageError(f"center index {idx} out of range")
    _say(HEADER)
    for r, pts in sphere_decompose(X, idx):
        members = " ".join(X.labels[p] for p in pts)
        _say(f"sphere {format_rational(r)} {members}")
    return 0


def cmd_transfer(args) -> int:
    X = formats.parse_space(_read(args.file))
    _emit(formats.emit_space(transfer(X, _parse_map_flag(args.map))))
    return 0


def cmd_universal(args) -> int:
    from .ultrametric import universal_discrete

    distances = _parse_rational_list(args.distances)
    _emit(formats.emit_space(universal_discrete(distances, args.copies)))
    return 0


def cmd_tree_canon(args) -> int:
    T = formats.parse_tree(_read(args.file))
    _say(HEADER, f"code {render_code(tree_canonical(T))}")
    return 0


def cmd_tree_rank(args) -> int:
    T = formats.parse_tree(_read(args.file))
    _say(HEADER, f"rank {tree_rank(T)}")
    return 0


def cmd_tree2space(args) -> int:
    T = formats.parse_tree(_read(args.file))
    _emit(formats.emit_space(tree_to_space(T, _radii_for(args, T))))
    return 0


def cmd_repair_iso(args) -> int:
    T = formats.parse_tree(_read(args.file_t))
    S = formats.parse_tree(_read(args.file_s))
    depth = max(T.depth, S.depth)
    if args.radii:
        radii = RadiusSequence.of(_parse_rational_list(args.radii))
    else:
        radii = RadiusSequence.harmonic(depth + 1)
    _say(HEADER)
    if T.size != S.size:
        _say("verdict none", "reason SizeMismatch")
        return 0
    phi = find_isometry(tree_to_space(T, radii), tree_to_space(S, radii))
    if phi is None:
        _say("verdict none")
        return 0
    mapping = repair_isometry_to_tree_iso(T, S, radii, phi)
    _say("verdict isomorphism")
    for u in T.nodes:
        _say(f"map {node_label(u)} {node_label(mapping[u])}")
    return 0


def cmd_graph2space(args) -> int:
    G = formats.parse_graph(_read(args.file))
    _emit(formats.emit_space(graph_to_space(G)))
    return 0


def cmd_disc2struct(args) -> int:
    X = formats.parse_space(_read(args.file))
    if args.thresholds:
        qs = _parse_rational_list(args.thresholds)
    else:
        qs = default_thresholds(X)
    _emit(formats.emit_structure(discrete_to_structure(X, qs)))
    return 0


def cmd_struct_iso(args) -> int:
    A = formats.parse_structure(_read(args.file_a))
    B = formats.parse_structure(_read(args.file_b))
    mode = "exhaustive" if args.exhaustive else "pruned"
    bij = structure_isomorphic(A, B, mode=mode)
    _say(HEADER)
    if bij is None:
        _say("verdict none")
    else:
        _say("verdict isomorphic")
        for i, j in enumerate(bij.forward):
            _say(f"map {i} {j}")
    return 0


def cmd_sum(args) -> int:
    parts = [formats.parse_space(_read(path)) for path in args.files]
    _emit(formats.emit_space(sum_space(parts, parse_rational(args.r))))
    return 0


def cmd_gromov(args) -> int:
    X = formats.parse_space(_read(args.file))
    _say(HEADER)
    if args.n is not None:
        levels = [(args.n, gromov_invariant(X, args.n))]
    else:
        levels = list(enumerate(gromov_full(X)))
    for n, matrices in levels:
        _say(f"level {n} size {len(matrices)}")
        rendered = sorted(
            " ".join(format_rational(v) for row in m for v in row) for m in matrices
        )
        for line in rendered:
            _say(f"matrix {line}")
    return 0


def cmd_adjust_action(args) -> int:
    ga = formats.parse_action(_read(args.file))
    _emit(formats.emit_action(adjust_group_metric(ga)))
    return 0


def cmd_orbit_encode(args) -> int:
    ga = formats.parse_action(_read(args.file))
    _emit(formats.emit_space(orbit_encode(ga, args.z)))
    return 0


def cmd_verify_reduction(args) -> int:
    corpus = named_corpus(args.corpus, seed=args.seed)
    f = named_map(args.map)
    E = named_oracle(args.E)
    F = named_oracle(args.F)
    workers = int(os.environ.get("FINISO_WORKERS", "1"))
    if workers < 1:
        raise UsageError("FINISO_WORKERS must be a positive integer")
    report = verify_reduction(corpus, f, E, F, workers=workers)
    _say(HEADER, f"corpus {args.corpus} objects {len(corpus)}",
         f"pairs {report.pairs_checked}")
    if report.passed:
        _say("verdict pass")
        return 0
    ce = report.counterexample
    _say(
        "verdict counterexample",
        f"indices {ce.index_left} {ce.index_right}",
        f"source-equivalent {'true' if ce.source_equivalent else 'false'}",
        f"image-equivalent {'true' if ce.image_equivalent else 'false'}",
    )
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="finiso",
        description="finite metric spaces, trees, reductions, and oracle checks",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, handler, configure):
        sp = sub.add_parser(name)
        configure(sp)
        sp.set_defaults(func=handler)

    add("check-metric", cmd_check_metric, lambda sp: sp.add_argument("file"))
    add("isometry", cmd_isometry, lambda sp: (
        sp.add_argument("file_x"), sp.add_argument("file_y"),
        sp.add_argument("--exhaustive", action="store_true")))
    add("canon-ultra", cmd_canon_ultra, lambda sp: sp.add_argument("file"))
    add("ball-structure", cmd_ball_structure, lambda sp: sp.add_argument("file"))
    add("sphere", cmd_sphere, lambda sp: (
        sp.add_argument("file"), sp.add_argument("--center", required=True)))
    add("transfer", cmd_transfer, lambda sp: (
        sp.add_argument("file"), sp.add_argument("--map", required=True)))
    add("universal", cmd_universal, lambda sp: (
        sp.add_argument("--distances", required=True),
        sp.add_argument("--copies", type=int, default=2)))
    add("tree-canon", cmd_tree_canon, lambda sp: sp.add_argument("file"))
    add("tree-rank", cmd_tree_rank, lambda sp: sp.add_argument("file"))
    add("tree2space", cmd_tree2space, lambda sp: (
        sp.add_argument("file"), sp.add_argument("--radii")))
    add("repair-iso", cmd_repair_iso, lambda sp: (
        sp.add_argument("file_t"), sp.add_argument("file_s"),
        sp.add_argument("--radii")))
    add("graph2space", cmd_graph2space, lambda sp: sp.add_argument("file"))
    add("disc2struct", cmd_disc2struct, lambda sp: (
        sp.add_argument("file"), sp.add_argument("--thresholds")))
    add("struct-iso", cmd_struct_iso, lambda sp: (
        sp.add_argument("file_a"), sp.add_argument("file_b"),
        sp.add_argument("--exhaustive", action="store_true")))
    add("sum", cmd_sum, lambda sp: (
        sp.add_argument("files", nargs="+"),
        sp.add_argument("--r", required=True)))
    add("gromov", cmd_gromov, lambda sp: (
        sp.add_argument("file"), sp.add_argument("--n", type=int)))
    add("adjust-action", cmd_adjust_action, lambda sp: sp.add_argument("file"))
    add("orbit-encode", cmd_orbit_encode, lambda sp: (
        sp.add_argument("file"), sp.add_argument("--z", type=int, required=True)))
    add("verify-reduction", cmd_verify_reduction, lambda sp: (
        sp.add_argument("--corpus", required=True),
        sp.add_argument("--map", required=True),
        sp.add_argument("--E", required=True),
        sp.add_argument("--F", required=True),
        sp.add_argument("--seed", type=int, default=0)))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        sys.stderr.write(f"error {type(exc).__name__}: {exc}\n")
        return 2
    except FinisoError as exc:
        sys.stderr.write(f"error {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
