"""Order-independent fingerprints for dendrograms and rooted trees.

A code is either a leaf or a node carrying an optional rational radius
and a sorted tuple of child codes.  Dendrogram codes of ultrametric
spaces carry the ball radius at every internal node; tree codes carry no
radius.  Children are kept sorted under a fixed total order (radius
descending, then the recursive order on the sorted children, then child
count), so equal codes mean equal fingerprints regardless of input
labelling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rationals import format_rational


@dataclass(frozen=True)
class CanonicalCode:
    radius: Fraction | None
    children: tuple["CanonicalCode", ...] = field(default=())

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def __repr__(self):
        return f"CanonicalCode({render_code(self)})"


LEAF = CanonicalCode(None, ())


def node(radius: Fraction | None, children) -> CanonicalCode:
    kids = tuple(sorted(children, key=sort_key))
    return CanonicalCode(radius, kids)


def sort_key(code: CanonicalCode):
    # Radius descending; leaves and radius-free nodes rank after radiused
    # ones of the same shape.  Any fixed total order would do.
    if code.radius is None:
        head = (1, Fraction(0))
    else:
        head = (0, -code.radius)
    return (head, tuple(sort_key(c) for c in code.children), len(code.children))


def render_code(code: CanonicalCode) -> str:
    """S-expression-like single-line text form."""
    if code.is_leaf and code.radius is None:
        return "leaf"
    parts = []
    if code.radius is not None:
        parts.append(format_rational(code.radius))
    parts.extend(render_code(c) for c in code.children)
    return "(" + " ".join(parts) + ")"
