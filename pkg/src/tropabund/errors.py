"""Exception hierarchy shared across the package."""

from __future__ import annotations


class TropabundError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(TropabundError):
    """Malformed input data: dangling references, shape mismatches."""


class PreconditionError(TropabundError):
    """An operation was called outside its stated domain."""


class ContractedEdgeError(PreconditionError):
    """A linear map sent an edge (or leg) direction to zero."""


class Genus2TypeError(PreconditionError):
    """The curve is not of the non-planar genus-2 normal-form type."""


class DegreeRangeError(PreconditionError):
    """The moduli dimension formula was requested outside d > 2g - 2."""


class UnknownTemplateError(TropabundError):
    """Requested a built-in curve or template that does not exist."""


class SearchCapExceeded(TropabundError):
    """An exhaustive search hit its configured cap before deciding."""


class DocumentError(TropabundError):
    """A curve document failed to parse; message carries a JSON path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
