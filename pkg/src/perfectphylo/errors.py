"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PhyloError(ValueError):
    """Base class for all errors raised by perfectphylo."""


class ParseError(PhyloError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateTaxon(ParseError):
    pass


class OverlappingCells(ParseError):
    pass


class DuplicateCharacter(ParseError):
    pass


class EmptyCharacter(ParseError):
    pass


class InvalidCharacterSet(PhyloError):
    """Raised when a CharacterSet is built directly from inconsistent data."""


class NotChordal(PhyloError):
    pass


class Disconnected(PhyloError):
    pass


class NotCliqueTree(PhyloError):
    pass


class TooLarge(PhyloError):
    """An exhaustive procedure was asked to run past its configured cap."""


class MissingLabels(PhyloError):
    pass


class InvalidXTree(PhyloError):
    def __init__(self, message: str, node: int | None = None) -> None:
        super().__init__(message)
        self.node = node


class EmptySet(PhyloError):
    pass


class UnknownTaxon(PhyloError):
    pass


class NotDisplayed(PhyloError):
    def __init__(self, character: str) -> None:
        super().__init__(f"character {character!r} is not displayed by the tree")
        self.character = character


class TaxonMismatch(PhyloError):
    pass


class NoCandidateNode(PhyloError):
    pass


class NotProper(PhyloError):
    pass


class UnknownCharacter(PhyloError):
    pass
