"""Taxa, partial characters, the character-file format and pig(C).

A partial character is a partition of some subset of the taxa into disjoint,
nonempty cells.  The partition intersection graph has one vertex per
(cell, character) pair and joins two vertices when their cells share a taxon.

Character file format::

    # comment
    taxa: a b c d e
    chi1: a b | c d
    chi2: a c | b d e

The ``taxa:`` line is optional and must precede every character line.  The
name ``taxa`` is therefore reserved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateCharacter,
    DuplicateTaxon,
    EmptyCharacter,
    InvalidCharacterSet,
    OverlappingCells,
    ParseError,
    UnknownCharacter,
)
from .graph import LabeledGraph

NAME_RE = re.compile(r"[\w.\-]+")
RESERVED = "taxa"


@dataclass(frozen=True)
class TaxonSet:
    taxa: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.taxa)) != len(self.taxa):
            raise InvalidCharacterSet("taxon names must be unique")
        for t in self.taxa:
            if not t or not NAME_RE.fullmatch(t):
                raise InvalidCharacterSet(f"invalid taxon name {t!r}")

    def __len__(self) -> int:
        return len(self.taxa)

    def __iter__(self) -> Iterator[str]:
        return iter(self.taxa)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    @cached_property
    def _index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.taxa)}

    def index(self, name: str) -> int:
        return self._index[name]

    def ordered(self, members: Iterable[str]) -> tuple[str, ...]:
        """Return ``members`` sorted into canonical taxon order."""
        return tuple(sorted(members, key=self._index.__getitem__))


@dataclass(frozen=True)
class PartialCharacter:
    name: str
    cells: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        if not self.cells:
            raise InvalidCharacterSet(f"character {self.name!r} has no cells")
        seen: set[str] = set()
        for cell in self.cells:
            if not cell:
                raise InvalidCharacterSet(f"character {self.name!r} has an empty cell")
            if seen & cell:
                raise InvalidCharacterSet(f"character {self.name!r} has overlapping cells")
            seen |= cell

    @property
    def support(self) -> frozenset[str]:
        return frozenset().union(*self.cells)


@dataclass(frozen=True, order=True)
class PigVertex:
    """A vertex (A, chi) of pig(C), ordered by (character_index, cell_index)."""

    character_index: int
    cell_index: int
    members: tuple[str, ...] = field(compare=False)
    character: str = field(compare=False)

    @property
    def cell(self) -> frozenset[str]:
        return frozenset(self.members)

    @property
    def label(self) -> str:
        return ",".join(self.members) + "/" + self.character


@dataclass(frozen=True)
class CharacterSet:
    taxa: TaxonSet
    characters: tuple[PartialCharacter, ...] = ()

    def __post_init__(self) -> None:
        names = [c.name for c in self.characters]
        if len(set(names)) != len(names):
            raise InvalidCharacterSet("character names must be unique")
        for c in self.characters:
            unknown = c.support - set(self.taxa.taxa)
            if unknown:
                raise InvalidCharacterSet(
                    f"character {c.name!r} uses unknown taxa {sorted(unknown)}"
                )

    def __len__(self) -> int:
        return len(self.characters)

    @cached_property
    def vertices(self) -> tuple[PigVertex, ...]:
        """Vertices of pig(C) in canonical order."""
        return tuple(
            PigVertex(i, j, self.taxa.ordered(cell), c.name)
            for i, c in enumerate(self.characters)
            for j, cell in enumerate(c.cells)
        )

    @cached_property
    def vertex_index(self) -> dict[tuple[int, int], int]:
        return {(v.character_index, v.cell_index): k for k, v in enumerate(self.vertices)}

    def index(self, name: str) -> int:
        for i, c in enumerate(self.characters):
            if c.name == name:
                return i
        raise UnknownCharacter(f"no character named {name!r}")

    def names(self, indices: Iterable[int]) -> list[str]:
        return [self.characters[i].name for i in sorted(indices)]

    def subset(self, indices: Iterable[int]) -> CharacterSet:
        """Characters at ``indices`` (kept in original order) over the same taxa."""
        keep = sorted(set(indices))
        for i in keep:
            if not 0 <= i < len(self.characters):
                raise UnknownCharacter(f"character index {i} out of range")
        return CharacterSet(self.taxa, tuple(self.characters[i] for i in keep))


def make_character_set(
    characters: Sequence[tuple[str, Sequence[Iterable[str]]]],
    taxa: Sequence[str] | None = None,
) -> CharacterSet:
    """Build a CharacterSet from ``(name, cells)`` pairs.

    Taxa not listed in ``taxa`` are appended in order of first appearance.
    """
    order = list(taxa or ())
    known = set(order)
    chars = []
    for name, cells in characters:
        frozen = tuple(frozenset(cell) for cell in cells)
        for cell in cells:
            members = cell if isinstance(cell, (list, tuple)) else sorted(cell)
            for t in members:
                if t not in known:
                    known.add(t)
                    order.append(t)
        chars.append(PartialCharacter(name, frozen))
    return CharacterSet(TaxonSet(tuple(order)), tuple(chars))


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _tokens(text: str, offset: int) -> Iterator[tuple[str, int]]:
    """Yield (token, 1-based column) for whitespace separated tokens."""
    for m in re.finditer(r"\S+", text):
        yield m.group(), offset + m.start() + 1


def _check_name(token: str, lineno: int, col: int, what: str) -> None:
    if not NAME_RE.fullmatch(token):
        raise ParseError(f"invalid {what} name {token!r}", lineno, col)


def parse_character_set(text: str) -> CharacterSet:
    """Parse the character-file format into a validated CharacterSet."""
    declared: list[str] = []
    seen_decl: set[str] = set()
    characters: list[tuple[str, list[list[str]]]] = []
    char_names: set[str] = set()
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        colon = line.find(":")
        if colon < 0:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'name: cells'", lineno, col)
        head = line[:colon]
        name = head.strip()
        name_col = len(head) - len(head.lstrip()) + 1
        if not name:
            raise ParseError("missing name before ':'", lineno, name_col)
        _check_name(name, lineno, name_col, "character")
        body = line[colon + 1 :]
        body_offset = colon + 1
        if name == RESERVED:
            if not first:
                raise ParseError("taxa declaration must come first", lineno, name_col)
            for tok, col in _tokens(body, body_offset):
                _check_name(tok, lineno, col, "taxon")
                if tok in seen_decl:
                    raise DuplicateTaxon(f"taxon {tok!r} declared twice", lineno, col)
                seen_decl.add(tok)
                declared.append(tok)
            first = False
            continue
        first = False
        if name in char_names:
            raise DuplicateCharacter(f"duplicate character {name!r}", lineno, name_col)
        char_names.add(name)
        if not body.strip():
            raise EmptyCharacter(f"character {name!r} has no members", lineno, name_col)
        cells: list[list[str]] = []
        in_char: set[str] = set()
        start = 0
        for piece in body.split("|"):
            members: list[str] = []
            in_cell: set[str] = set()
            for tok, col in _tokens(piece, body_offset + start):
                _check_name(tok, lineno, col, "taxon")
                if tok in in_cell:
                    raise DuplicateTaxon(f"taxon {tok!r} repeated in a cell", lineno, col)
                if tok in in_char:
                    raise OverlappingCells(
                        f"taxon {tok!r} appears in two cells of {name!r}", lineno, col
                    )
                in_cell.add(tok)
                members.append(tok)
            if not members:
                raise ParseError("empty cell", lineno, body_offset + start + 1)
            in_char |= in_cell
            cells.append(members)
            start += len(piece) + 1
        characters.append((name, cells))
    return make_character_set(characters, declared)


def format_character_set(cs: CharacterSet) -> str:
    """Serialize ``cs``; parsing the result gives back an equal CharacterSet."""
    lines = ["taxa: " + " ".join(cs.taxa.taxa)]
    for c in cs.characters:
        cells = (" ".join(cs.taxa.ordered(cell)) for cell in c.cells)
        lines.append(f"{c.name}: " + " | ".join(cells))
    return "\n".join(lines) + "\n"


def build_pig(cs: CharacterSet) -> LabeledGraph:
    """The partition intersection graph pig(C).

    Vertices follow ``cs.vertices``; two vertices are adjacent exactly when
    their cells intersect, so cells of one character are never adjacent.
    """
    verts = cs.vertices
    cells = [v.cell for v in verts]
    edges = [
        (i, j)
        for i, j in combinations(range(len(verts)), 2)
        if cells[i] & cells[j]
    ]
    return LabeledGraph.from_edges(len(verts), edges, labels=verts)
