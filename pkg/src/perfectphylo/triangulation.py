"""Triangulations of a graph: minimality, enumeration, properness, display.

Minimal triangulations are enumerated through the elimination game.  After a
set S of vertices has been eliminated (in any order), two remaining vertices
are adjacent iff G joins them directly or through a path inside S, so the
state of the game is S alone.  Every minimal triangulation is the result of
eliminating along one of its own perfect elimination orderings, so the
minimal elements of the reachable fill sets are exactly the minimal
triangulations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import MissingLabels, NotChordal, TooLarge
from .graph import Edge, LabeledGraph, graph_to_dot, is_chordal

DEFAULT_CAP = 20


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Triangulation:
    """``base`` plus the ``fill`` edges (pairs absent from base)."""

    base: LabeledGraph
    fill: frozenset[Edge]

    def __post_init__(self) -> None:
        fill = frozenset(_edge(u, v) for u, v in self.fill)
        object.__setattr__(self, "fill", fill)
        for u, v in fill:
            if u == v or not (0 <= u < self.base.n and 0 <= v < self.base.n):
                raise ValueError(f"bad fill edge {u}-{v}")
            if self.base.has_edge(u, v):
                raise ValueError(f"fill edge {u}-{v} is already an edge of the base")

    @cached_property
    def graph(self) -> LabeledGraph:
        return self.base.add_edges(self.fill)

    @property
    def sorted_fill(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.fill))


@dataclass(frozen=True)
class DisplayReport:
    broken: frozenset[int]
    displayed: frozenset[int]


def is_minimal_triangulation(t: Triangulation) -> bool:
    """No proper subset of the fill triangulates the base.

    Checked through single-edge removals: a triangulation is minimal iff
    deleting any one fill edge leaves a non-chordal graph.
    """
    if not is_chordal(t.graph):
        raise NotChordal("base plus fill is not chordal")
    for e in t.fill:
        if is_chordal(t.base.add_edges(t.fill - {e})):
            return False
    return True


def _elimination_neighbours(adj: list[int], n: int, eliminated: int) -> list[int]:
    """Bitmask neighbourhoods in the elimination graph after ``eliminated``."""
    out = [0] * n
    for v in range(n):
        if eliminated >> v & 1:
            continue
        nb = 0
        seen = 1 << v
        stack = [v]
        while stack:
            u = stack.pop()
            rest = adj[u] & ~seen
            seen |= rest
            inner = rest & eliminated
            nb |= rest & ~eliminated
            while inner:
                low = inner & -inner
                stack.append(low.bit_length() - 1)
                inner ^= low
        out[v] = nb
    return out


def _minimal_masks(masks: Iterable[int]) -> list[int]:
    ms = sorted(set(masks), key=lambda m: bin(m).count("1"))
    keep: list[int] = []
    for m in ms:
        if not any(k & m == k for k in keep):
            keep.append(m)
    return keep


def enumerate_minimal_triangulations(g: LabeledGraph, cap: int | None = DEFAULT_CAP) -> list[Triangulation]:
    """All minimal triangulations of ``g``, ordered by their sorted fill lists.

    Raises TooLarge when ``g`` has more than ``cap`` non-edges (``None``
    disables the cap).  Simplicial vertices of the current elimination graph
    are eliminated first without branching; they never receive fill in a
    minimal triangulation.
    """
    non_edges = g.non_edges()
    if cap is not None and len(non_edges) > cap:
        raise TooLarge(f"{len(non_edges)} non-edges exceeds cap {cap}")
    n = g.n
    adj = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = (1 << n) - 1
    memo: dict[int, list[int]] = {}

    def fill_bits(v: int, nb: int) -> int:
        # fill edges v-w encoded on a (v*n + w) grid of bits
        extra = nb & ~adj[v]
        bits = 0
        while extra:
            low = extra & -extra
            w = low.bit_length() - 1
            a, b = (v, w) if v < w else (w, v)
            bits |= 1 << (a * n + b)
            extra ^= low
        return bits

    def rec(elim: int) -> list[int]:
        if elim == full:
            return [0]
        hit = memo.get(elim)
        if hit is not None:
            return hit
        nbs = _elimination_neighbours(adj, n, elim)
        remaining = [v for v in range(n) if not elim >> v & 1]
        choices = remaining
        for v in remaining:
            nb = nbs[v]
            simplicial = True
            rest = nb
            while rest:
                low = rest & -rest
                w = low.bit_length() - 1
                if nb & ~low & ~nbs[w]:
                    simplicial = False
                    break
                rest ^= low
            if simplicial:
                choices = [v]
                break
        results = []
        for v in choices:
            f = fill_bits(v, nbs[v])
            results.extend(f | h for h in rec(elim | 1 << v))
        out = _minimal_masks(results)
        memo[elim] = out
        return out

    tris = []
    for mask in rec(0):
        fill = frozenset(divmod(i, n) for i in range(n * n) if mask >> i & 1)
        tris.append(Triangulation(g, fill))
    tris.sort(key=lambda t: t.sorted_fill)
    return tris


def _character_of(t: Triangulation, v: int) -> int:
    if t.base.labels is None:
        raise MissingLabels("base graph carries no (cell, character) labels")
    return t.base.labels[v].character_index


def is_proper(t: Triangulation) -> bool:
    """No fill edge joins two cells of the same character."""
    return not any(_character_of(t, u) == _character_of(t, v) for u, v in t.fill)


def display_report(t: Triangulation) -> DisplayReport:
    if t.base.labels is None:
        raise MissingLabels("base graph carries no (cell, character) labels")
    every = frozenset(lab.character_index for lab in t.base.labels)
    broken = frozenset(
        _character_of(t, u) for u, v in t.fill if _character_of(t, u) == _character_of(t, v)
    )
    return DisplayReport(broken, every - broken)


# -- text and DOT -------------------------------------------------------------


def format_triangulation(t: Triangulation) -> str:
    """Line-oriented text: vertices, base edges, then the sorted fill edges."""
    g = t.base
    lines = [f"vertices {g.n}"]
    lines += [f"vertex {v} {g.label(v)}" for v in range(g.n)]
    lines += [f"edge {u} {v}" for u, v in g.edges]
    lines += [f"fill {u} {v}" for u, v in t.sorted_fill]
    return "\n".join(lines) + "\n"


def parse_triangulation(text: str) -> tuple[Triangulation, list[str]]:
    """Inverse of :func:`format_triangulation`; vertex labels come back as strings."""
    n = 0
    names: dict[int, str] = {}
    edges: list[Edge] = []
    fill: list[Edge] = []
    for line in text.splitlines():
        parts = line.split(maxsplit=2)
        if not parts:
            continue
        kind = parts[0]
        if kind == "vertices":
            n = int(parts[1])
        elif kind == "vertex":
            names[int(parts[1])] = parts[2] if len(parts) > 2 else ""
        elif kind in ("edge", "fill"):
            u, v = int(parts[1]), int(parts[2])
            (edges if kind == "edge" else fill).append((u, v))
        else:
            raise ValueError(f"unknown record {kind!r}")
    base = LabeledGraph.from_edges(n, edges)
    return Triangulation(base, frozenset(fill)), [names.get(v, str(v)) for v in range(n)]


def triangulation_to_dot(t: Triangulation, name: str = "H") -> str:
    return graph_to_dot(t.base, t.fill, name)
