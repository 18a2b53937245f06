"""Exception hierarchy.

``exit_code`` is what the command line front end returns for each class:
1 for bad input, 2 when an internal search bound is hit, 3 for bugs.
"""

from __future__ import annotations

from dataclasses import dataclass


class KGraphError(Exception):
    exit_code = 1


class InvalidInput(KGraphError):
    exit_code = 1


class BoundExceeded(KGraphError):
    exit_code = 2


class InternalError(KGraphError):
    exit_code = 3


# -- validation ------------------------------------------------------------

@dataclass(frozen=True)
class ShapeMismatch:
    detail: str

    def describe(self) -> str:
        return f"ShapeMismatch: {self.detail}"


@dataclass(frozen=True)
class NegativeEntry:
    color: int
    row: int
    col: int
    value: int

    def describe(self) -> str:
        return (f"NegativeEntry: matrix {self.color} has {self.value} "
                f"at ({self.row},{self.col})")


@dataclass(frozen=True)
class NonCommuting:
    i: int
    j: int
    position: tuple[int, int]

    def describe(self) -> str:
        return (f"NonCommuting: A{self.i} A{self.j} != A{self.j} A{self.i} "
                f"at {self.position}")


@dataclass(frozen=True)
class ZeroRow:
    color: int
    vertex: str

    def describe(self) -> str:
        return f"ZeroRow: vertex {self.vertex!r} receives no color-{self.color} edge"


Violation = ShapeMismatch | NegativeEntry | NonCommuting | ZeroRow


class ValidationError(InvalidInput):
    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(v.describe() for v in self.violations))


class ParseError(InvalidInput):
    pass


class UnknownVertex(InvalidInput):
    pass


class LengthMismatch(InvalidInput):
    pass


class GeneratorMismatch(InvalidInput):
    pass


class EmptyDimension(InvalidInput):
    pass


class NoEntrance(InvalidInput):
    pass


class NotAWitness(InvalidInput):
    pass


class NotCofinal(InvalidInput):
    pass


class NotATraceOnH(InvalidInput):
    pass


# -- bounds ----------------------------------------------------------------

class IterationBoundExceeded(BoundExceeded):
    pass


class BoxTooLarge(BoundExceeded):
    pass


class GenerationFailed(BoundExceeded):
    pass


# -- should be unreachable -------------------------------------------------

class StructureContradiction(InternalError):
    pass


class WellDefinednessFailure(InternalError):
    pass
