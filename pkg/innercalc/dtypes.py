# -*- coding: utf-8 -*-
"""Miscellaneous innercalc types not otherwise accessible"""

# Standard Imports
from dataclasses import dataclass

# Local Imports
from ._geometry import (
    BoundaryStratum,
    NotInBall,
    NotInterior,
    NotOnBoundary,
    NotUnitary,
    SingularPivot,
)
from ._colligations import (
    CompositionSingular,
    DimensionMismatch,
    ImageNotInComponent,
    InnerCertificate,
    NotBlockDiagonal,
    SingularOnComponent,
    SingularSystem,
    SplitSingular,
)
from ._io import InvariantViolation, ParseError
from ._verify import Suite, UnknownTheorem
from .utils import ComplexMatrix, InnerCalcError, MatrixLike, SeedLike


@dataclass
class errors:
    InnerCalcError = InnerCalcError
    NotUnitary = NotUnitary
    SingularPivot = SingularPivot
    NotInBall = NotInBall
    NotInterior = NotInterior
    NotOnBoundary = NotOnBoundary
    SingularSystem = SingularSystem
    CompositionSingular = CompositionSingular
    NotBlockDiagonal = NotBlockDiagonal
    SplitSingular = SplitSingular
    SingularOnComponent = SingularOnComponent
    ImageNotInComponent = ImageNotInComponent
    DimensionMismatch = DimensionMismatch
    ParseError = ParseError
    InvariantViolation = InvariantViolation
    UnknownTheorem = UnknownTheorem


_alltypes: list[type] = [
    BoundaryStratum,
    InnerCertificate,
    Suite,
]

_alltypes_organized: dict[str, list] = {
    "geometry": [BoundaryStratum],
    "colligations": [InnerCertificate],
    "verify": [Suite],
    "typing": [ComplexMatrix, MatrixLike, SeedLike],
}

# Organization of objects in All determines order in the documentation.
# Please make sure they are ordered correctly when adding new items
__all__ = [
    # Errors and Exceptions
    "InnerCalcError",
    "NotUnitary",
    "SingularPivot",
    "NotInBall",
    "NotInterior",
    "NotOnBoundary",
    "SingularSystem",
    "CompositionSingular",
    "NotBlockDiagonal",
    "SplitSingular",
    "SingularOnComponent",
    "ImageNotInComponent",
    "DimensionMismatch",
    "ParseError",
    "InvariantViolation",
    "UnknownTheorem",
    # Typing Types, Type Aliases
    "ComplexMatrix",
    "MatrixLike",
    "SeedLike",
    # Actual Types
    "BoundaryStratum",
    "InnerCertificate",
    "Suite",
]
