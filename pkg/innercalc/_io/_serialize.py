# -*- coding: utf-8 -*-
"""
JSON documents for matrices, colligations, Krein-Shmul'yan morphisms and
signatures

Every document carries a "type" tag. Complex numbers are written as
``[re, im]`` and matrices as ``{"rows": r, "cols": c, "data": [...]}`` with
the entries in row-major order. Floats are written with their shortest
round-trip representation, so serializing a deserialized document
reproduces its text.
"""

# Standard imports
from __future__ import annotations

import json
import re
from pathlib import Path

# Third party imports
import numpy as np

# Local imports
from .._colligations import Colligation, Signature
from .._geometry import KSMorphism, unitarity_defect
from .. import utils
from ..utils import ComplexMatrix, InnerCalcError

# Typing
from typing import (
    Any,
    Optional,
    Union,
)

Serializable = Union[Colligation, KSMorphism, Signature, np.ndarray]
"""Values with a JSON document form"""


class ParseError(InnerCalcError):
    """
    A document is not well formed

    Attributes:
        message: The error without its location
        line: 1-based line of the offending text, None when unknown
        column: 1-based column of the offending text, None when unknown
        field: Name of the offending field, if the error concerns one
    """

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        field: Optional[str] = None,
    ) -> None:
        self.message = message
        self.line = line
        self.column = column
        self.field = field
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)

    def located(self, text: str) -> ParseError:
        """
        A copy of this error positioned at the first occurrence of its field
        as a key in 'text'; the error itself when it cannot be placed
        """
        if self.line is not None or self.field is None:
            return self
        found = re.search(rf'"{re.escape(self.field)}"\s*:', text)
        if found is None:
            return self
        line = text.count("\n", 0, found.start()) + 1
        column = found.start() - (text.rfind("\n", 0, found.start()) + 1) + 1
        return ParseError(self.message, line, column, self.field)


class InvariantViolation(InnerCalcError):
    """A well formed document describes a value that breaks an invariant"""


def _matrix_doc(M: ComplexMatrix) -> dict[str, Any]:
    rows, cols = M.shape
    return {
        "rows": rows,
        "cols": cols,
        "data": [[float(z.real), float(z.imag)] for z in np.asarray(M).ravel()],
    }


def to_document(value: Serializable) -> dict[str, Any]:
    """The JSON compatible dictionary describing 'value'"""
    if isinstance(value, Colligation):
        return {
            "type": "colligation",
            "alpha": value.alpha,
            "m": value.m,
            "j": value.j,
            "matrix": _matrix_doc(value.U),
        }
    if isinstance(value, KSMorphism):
        return {"type": "ks_morphism", "n": value.n, "m": value.m, "matrix": _matrix_doc(value.zeta)}
    if isinstance(value, Signature):
        return {"type": "signature", "parts": list(value.parts)}
    if isinstance(value, np.ndarray) and value.ndim == 2:
        return {"type": "matrix", **_matrix_doc(value)}
    raise TypeError(f"Cannot serialize object of type {type(value).__name__}")


def serialize(value: Serializable) -> str:
    """The JSON text of 'value'"""
    return json.dumps(to_document(value), indent=2)


def _field(doc: dict, key: str, kind: type) -> Any:
    try:
        value = doc[key]
    except (KeyError, TypeError):
        raise ParseError(f"missing field '{key}'")
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError(f"field '{key}' must be an integer", field=key)
    if kind is not int and not isinstance(value, kind):
        raise ParseError(f"field '{key}' must be of type {kind.__name__}", field=key)
    return value


def _read_matrix(doc: dict) -> ComplexMatrix:
    rows = _field(doc, "rows", int)
    cols = _field(doc, "cols", int)
    for key, value in (("rows", rows), ("cols", cols)):
        if value < 0:
            raise ParseError(f"field '{key}' must be nonnegative, received {value}", field=key)
    data = _field(doc, "data", list)
    if len(data) != rows * cols:
        raise ParseError(f"matrix declares {rows}x{cols} entries but holds {len(data)}", field="data")
    entries = []
    for entry in data:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
        ):
            raise ParseError("complex entries must be [re, im] pairs of numbers", field="data")
        entries.append(complex(entry[0], entry[1]))
    M = np.array(entries, dtype=complex).reshape(rows, cols)
    if not np.all(np.isfinite(M)):
        raise InvariantViolation("matrix contains non-finite entries")
    return M


def from_document(doc: Any) -> Serializable:
    """
    Rebuilds a value from its document

    Raises:
        ParseError: unknown type tag or malformed fields
        InvariantViolation: a colligation or morphism matrix is not unitary
            within the load tolerance, or a signature is invalid
    """
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    kind = _field(doc, "type", str)
    load_atol = utils.settings["TOLERANCE"]["load_atol"]

    if kind == "matrix":
        return _read_matrix(doc)

    if kind == "signature":
        parts = _field(doc, "parts", list)
        try:
            return Signature(tuple(parts))
        except (TypeError, ValueError) as e:
            raise InvariantViolation(str(e)) from e

    if kind in ("colligation", "ks_morphism"):
        U = _read_matrix(_field(doc, "matrix", dict))
        defect = unitarity_defect(U) if U.shape[0] == U.shape[1] else np.inf
        if defect > load_atol * max(U.shape[0], 1):
            raise InvariantViolation(f"{kind} matrix is not unitary (defect {defect:.3e})")
        try:
            if kind == "colligation":
                shape = (_field(doc, "alpha", int), _field(doc, "m", int), _field(doc, "j", int))
                return Colligation(*shape, U, validate=False)
            return KSMorphism(_field(doc, "n", int), _field(doc, "m", int), U, validate=False)
        except ValueError as e:
            raise InvariantViolation(str(e)) from e

    raise ParseError(f"unknown document type '{kind}'", field="type")


def deserialize(text: str) -> Serializable:
    """
    Parses JSON text into a value

    Raises:
        ParseError: the text is not JSON, or a field is malformed. The error
            carries the line and column of the offending text when it can
            be placed; a missing field has no position.
        InvariantViolation: as from_document
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from e
    try:
        return from_document(doc)
    except ParseError as e:
        located = e.located(text)
        if located is e:
            raise
        raise located from e


def save(value: Serializable, path: Union[str, Path]) -> None:
    """Writes the document of 'value' to 'path'"""
    Path(path).write_text(serialize(value) + "\n")


def load(path: Union[str, Path]) -> Serializable:
    """Reads a value from a document file"""
    return deserialize(Path(path).read_text())
