"""Text file formats for spaces, trees, structures, graphs, and actions.

Every file starts with the schema line "finiso 1".  Every emitter is
deterministic and every emitted file re-parses to an equal value.
Parse errors carry 1-based line numbers.

space:      point count, one label per line, then the distance matrix
            with entries "p/q" separated by spaces.
tree:       one node per line as comma-separated integers; an empty
            line is the root (the empty sequence).
structure:  universe size; then per relation a header "name arity
            count" followed by count tuple lines.
graph:      vertex count, then edge lines "i j".
action:     group size, group metric rows, point count, point metric
            rows, action table rows (one per group element), and the
            group multiplication table rows.
"""

from __future__ import annotations

from fractions import Fraction

from .actions import GroupAction, validate_group_action
from .errors import ParseError
from .graphs import Graph
from .metric import MetricSpace, validate_metric
from .rationals import format_rational, parse_rational
from .structures import RelationalStructure
from .trees import Tree, validate_tree

SCHEMA_HEADER = "finiso 1"


class _Reader:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        # A trailing newline produces one empty final chunk; drop it so
        # files may or may not end with a newline.  Interior empty lines
        # are preserved (the tree format needs them).
        if self.lines and self.lines[-1] == "":
            self.lines.pop()
        self.pos = 0
        header = self.next_line("schema header")
        if header.strip() != SCHEMA_HEADER:
            raise ParseError(
                f"expected schema header {SCHEMA_HEADER!r}, got {header!r}", line=1
            )

    @property
    def line_no(self) -> int:
        return self.pos + 1

    def done(self) -> bool:
        return self.pos >= len(self.lines)

    def next_line(self, what: str) -> str:
        if self.done():
            raise ParseError(f"unexpected end of file, expected {what}",
                             line=self.line_no)
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def next_int(self, what: str) -> int:
        line = self.next_line(what).strip()
        try:
            return int(line)
        except ValueError:
            raise ParseError(f"expected {what}, got {line!r}",
                             line=self.pos) from None

    def next_rationals(self, count: int, what: str) -> list[Fraction]:
        line_no = self.line_no
        parts = self.next_line(what).split()
        if len(parts) != count:
            raise ParseError(f"expected {count} rationals for {what}, got {len(parts)}",
                             line=line_no)
        return [parse_rational(p, line=line_no) for p in parts]

    def expect_end(self) -> None:
        while not self.done():
            if self.lines[self.pos].strip():
                raise ParseError("trailing content", line=self.line_no)
            self.pos += 1


# --- metric spaces --------------------------------------------------------

def parse_space(text: str) -> MetricSpace:
    r = _Reader(text)
    n = r.next_int("point count")
    if n < 1:
        raise ParseError("point count must be positive", line=2)
    labels = [r.next_line(f"label {i}").strip() for i in range(n)]
    rows = [r.next_rationals(n, f"matrix row {i}") for i in range(n)]
    r.expect_end()
    return validate_metric(labels, rows)


def emit_space(X: MetricSpace) -> str:
    lines = [SCHEMA_HEADER, str(X.size)]
    lines.extend(X.labels)
    for row in X.dist:
        lines.append(" ".join(format_rational(v) for v in row))
    return "\n".join(lines) + "\n"


# --- trees ----------------------------------------------------------------

def parse_tree(text: str) -> Tree:
    r = _Reader(text)
    nodes = []
    while not r.done():
        line_no = r.line_no
        raw = r.next_line("tree node").strip()
        if raw == "":
            nodes.append(())
            continue
        try:
            nodes.append(tuple(int(p) for p in raw.split(",")))
        except ValueError:
            raise ParseError(f"bad node line {raw!r}", line=line_no) from None
    if not nodes:
        raise ParseError("empty tree file", line=2)
    return validate_tree(nodes)


def emit_tree(T: Tree) -> str:
    lines = [SCHEMA_HEADER] + [",".join(str(a) for a in u) for u in T.nodes]
    return "\n".join(lines) + "\n"


# --- relational structures -------------------------------------------------

def parse_structure(text: str) -> RelationalStructure:
    r = _Reader(text)
    size = r.next_int("universe size")
    relations = []
    while not r.done():
        header_no = r.line_no
        header = r.next_line("relation header").split()
        if len(header) != 3:
            raise ParseError("relation header must be 'name arity count'",
                             line=header_no)
        name = header[0]
        try:
            arity, count = int(header[1]), int(header[2])
        except ValueError:
            raise ParseError("bad arity or count", line=header_no) from None
        tuples = []
        for _ in range(count):
            row_no = r.line_no
            parts = r.next_line("relation tuple").split()
            if len(parts) != arity:
                raise ParseError(f"tuple has {len(parts)} entries, arity is {arity}",
                                 line=row_no)
            try:
                tuples.append(tuple(int(p) for p in parts))
            except ValueError:
                raise ParseError("bad tuple entry", line=row_no) from None
        relations.append((name, arity, tuples))
    try:
        return RelationalStructure.build(size, relations)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def emit_structure(A: RelationalStructure) -> str:
    lines = [SCHEMA_HEADER, str(A.size)]
    for name, arity, tuples in A.relations:
        lines.append(f"{name} {arity} {len(tuples)}")
        for t in sorted(tuples):
            lines.append(" ".join(str(v) for v in t))
    return "\n".join(lines) + "\n"


# --- graphs -----------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    r = _Reader(text)
    n = r.next_int("vertex count")
    edges = []
    while not r.done():
        line_no = r.line_no
        raw = r.next_line("edge").split()
        if not raw:
            continue
        if len(raw) != 2:
            raise ParseError("edge line must be 'i j'", line=line_no)
        try:
            edges.append((int(raw[0]), int(raw[1])))
        except ValueError:
            raise ParseError("bad edge entry", line=line_no) from None
    try:
        return Graph.build(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def emit_graph(G: Graph) -> str:
    lines = [SCHEMA_HEADER, str(G.n)]
    lines.extend(f"{a} {b}" for a, b in sorted(G.edges))
    return "\n".join(lines) + "\n"


# --- group actions -----------------------------------------------------------

def parse_action(text: str) -> GroupAction:
    r = _Reader(text)
    n = r.next_int("group size")
    if n < 1:
        raise ParseError("group size must be positive", line=2)
    d_group = [r.next_rationals(n, f"group metric row {g}") for g in range(n)]
    m = r.next_int("point count")
    if m < 1:
        raise ParseError("point count must be positive")
    d_points = [r.next_rationals(m, f"point metric row {y}") for y in range(m)]

    def int_row(count, what):
        line_no = r.line_no
        parts = r.next_line(what).split()
        if len(parts) != count:
            raise ParseError(f"expected {count} entries for {what}", line=line_no)
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"bad integer in {what}", line=line_no) from None

    action = [int_row(m, f"action row {g}") for g in range(n)]
    mult = [int_row(n, f"multiplication row {g}") for g in range(n)]
    r.expect_end()
    return validate_group_action(mult, d_group, d_points, action)


def emit_action(ga: GroupAction) -> str:
    lines = [SCHEMA_HEADER, str(ga.order)]
    for row in ga.d_group:
        lines.append(" ".join(format_rational(v) for v in row))
    lines.append(str(ga.points))
    for row in ga.d_points:
        lines.append(" ".join(format_rational(v) for v in row))
    for row in ga.action:
        lines.append(" ".join(str(v) for v in row))
    for row in ga.mult:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
