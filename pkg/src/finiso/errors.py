"""Error types raised across the library.

Every domain error names the witnessing indices or values, so a failed
check can be reproduced by hand from the message alone.
"""

from __future__ import annotations


class FinisoError(Exception):
    """Base class for all domain errors."""


# --- metric validation -------------------------------------------------

class NonzeroDiagonal(FinisoError):
    def __init__(self, i, value):
        self.i, self.value = i, value
        super().__init__(f"d({i},{i}) = {value} != 0")


class SymmetryViolation(FinisoError):
    def __init__(self, i, j, dij, dji):
        self.i, self.j = i, j
        super().__init__(f"d({i},{j}) = {dij} but d({j},{i}) = {dji}")


class ZeroOffDiagonal(FinisoError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"d({i},{j}) = 0 for distinct points")


class TriangleViolation(FinisoError):
    def __init__(self, i, j, k, dik, dij, djk):
        self.i, self.j, self.k = i, j, k
        super().__init__(
            f"d({i},{k}) = {dik} > {dij} + {djk} = d({i},{j}) + d({j},{k})"
        )


class NotUltrametric(FinisoError):
    def __init__(self, msg="operation requires an ultrametric space"):
        super().__init__(msg)


# --- trees --------------------------------------------------------------

class EmptyInput(FinisoError):
    pass


class MissingPrefix(FinisoError):
    def __init__(self, node, prefix):
        self.node, self.prefix = node, prefix
        super().__init__(f"node {node} present but prefix {prefix} missing")


# --- transfer maps ------------------------------------------------------

class NotMonotone(FinisoError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"map not strictly increasing on {a} < {b}")


class DomainGap(FinisoError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"realized distance {value} outside the map's domain")


# --- structures ---------------------------------------------------------

class SignatureMismatch(FinisoError):
    pass


class InsufficientThresholds(FinisoError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"no threshold separates realized distances {a} and {b}")


# --- reductions ---------------------------------------------------------

class SequenceTooShort(FinisoError):
    def __init__(self, length, needed):
        self.length, self.needed = length, needed
        super().__init__(f"radius sequence has length {length}, need >= {needed}")


class RadiusTooSmall(FinisoError):
    def __init__(self, part_index, radius, diameter):
        self.part_index = part_index
        super().__init__(
            f"joining radius {radius} not greater than diameter {diameter} of part {part_index}"
        )


class NotAnIsometry(FinisoError):
    pass


class RepairFailed(FinisoError):
    """Post-repair map failed the tree-isomorphism certificate; signals a bug."""


# --- group actions ------------------------------------------------------

class NotLeftInvariant(FinisoError):
    def __init__(self, h, g, gp):
        self.h, self.g, self.gp = h, g, gp
        super().__init__(f"d({h}*{g},{h}*{gp}) != d({g},{gp})")


class NotAnAction(FinisoError):
    def __init__(self, msg):
        super().__init__(msg)


class PreconditionViolated(FinisoError):
    pass


# --- verification harness ----------------------------------------------

class OracleFailure(FinisoError):
    def __init__(self, oracle_name, cause):
        self.oracle_name, self.cause = oracle_name, cause
        super().__init__(f"oracle {oracle_name!r} raised: {cause!r}")


# --- input parsing ------------------------------------------------------

class ParseError(FinisoError):
    def __init__(self, msg, line=None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{msg}{where}")


class UsageError(FinisoError):
    pass
