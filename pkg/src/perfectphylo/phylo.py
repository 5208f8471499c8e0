"""X-trees, display, and the two maps between X-trees and tree representations.

``derive`` turns an X-tree into pig(C, T) together with the tree
representation whose subtrees are the spans T(A).  ``induce_xtrees`` goes the
other way: each taxon is placed on a candidate node of a clique tree (a node
whose clique holds every vertex whose cell contains the taxon) and unlabeled
degree-two nodes are suppressed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from . import _trees
from .characters import CharacterSet, PartialCharacter
from .errors import (
    EmptySet,
    InvalidXTree,
    NoCandidateNode,
    NotDisplayed,
    NotProper,
    ParseError,
    TaxonMismatch,
    UnknownTaxon,
)
from .graph import CliqueTreeRep, Edge, LabeledGraph, is_clique_tree_of

SubtreeSpan = frozenset  # node set of a subtree of an underlying tree

NEWICK_JOIN = "+"


@dataclass(frozen=True)
class XTree:
    """A tree on ``nodes`` with a taxon -> node map ``phi``."""

    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]
    phi: Mapping[str, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(_trees.edge(u, v) for u, v in self.edges)))
        if not _trees.is_tree(self.nodes, self.edges):
            raise InvalidXTree("edges do not form a tree on the given nodes")
        nodes = set(self.nodes)
        for taxon, node in self.phi.items():
            if node not in nodes:
                raise InvalidXTree(f"taxon {taxon!r} maps to unknown node {node}")

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return _trees.adjacency(self.nodes, self.edges)

    @cached_property
    def labels(self) -> dict[int, tuple[str, ...]]:
        """Taxa carried by each node, sorted by name."""
        out: dict[int, list[str]] = {v: [] for v in self.nodes}
        for taxon, node in self.phi.items():
            out[node].append(taxon)
        return {v: tuple(sorted(ts)) for v, ts in out.items()}

    @property
    def taxa(self) -> frozenset[str]:
        return frozenset(self.phi)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def unlabeled_low_degree_nodes(xt: XTree) -> list[int]:
    """Nodes of degree at most two that no taxon maps to."""
    return [v for v in sorted(xt.nodes) if xt.degree(v) <= 2 and not xt.labels[v]]


def validate_xtree(xt: XTree) -> bool:
    return not unlabeled_low_degree_nodes(xt)


def require_valid(xt: XTree) -> None:
    bad = unlabeled_low_degree_nodes(xt)
    if bad:
        raise InvalidXTree(f"node {bad[0]} has degree {xt.degree(bad[0])} and no label", bad[0])


def span(xt: XTree, a: Iterable[str]) -> SubtreeSpan:
    """Nodes of the minimal subtree containing phi(a)."""
    a = list(a)
    if not a:
        raise EmptySet("span of an empty taxon set")
    missing = [t for t in a if t not in xt.phi]
    if missing:
        raise UnknownTaxon(f"unknown taxa {missing}")
    return _trees.steiner(xt.adjacency, (xt.phi[t] for t in a))


def _check_taxa(xt: XTree, chi: PartialCharacter) -> None:
    missing = sorted(chi.support - xt.taxa)
    if missing:
        raise UnknownTaxon(f"character {chi.name!r} uses taxa {missing} absent from the tree")


def displays(xt: XTree, chi: PartialCharacter) -> bool:
    _check_taxa(xt, chi)
    spans = [span(xt, cell) for cell in chi.cells]
    return all(not (s & t) for s, t in itertools.combinations(spans, 2))


def displayed_characters(xt: XTree, cs: CharacterSet) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(cs.characters) if displays(xt, c))


def is_perfect_phylogeny(xt: XTree, cs: CharacterSet) -> bool:
    return len(displayed_characters(xt, cs)) == len(cs.characters)


def is_free_ternary(xt: XTree) -> tuple[bool, bool]:
    """(free, ternary).  Nodes of degree at most one count as leaves."""
    leaves = {v for v in xt.nodes if xt.degree(v) <= 1}
    images = list(xt.phi.values())
    free = len(set(images)) == len(images) and set(images) == leaves
    ternary = all(xt.degree(v) == 3 for v in xt.nodes if xt.degree(v) >= 2)
    return free, ternary


def _selected(cs: CharacterSet, characters: Iterable[int] | None) -> list[int]:
    return list(range(len(cs.characters))) if characters is None else sorted(set(characters))


def distinguished_edges(
    xt: XTree, cs: CharacterSet, characters: Iterable[int] | None = None
) -> dict[Edge, frozenset[int]]:
    """For each tree edge, the characters (by index) distinguishing it.

    Only the characters in ``characters`` (default: all) are considered, and
    each of them must be displayed by ``xt``.
    """
    chosen = _selected(cs, characters)
    spans = {}
    for i in chosen:
        chi = cs.characters[i]
        if not displays(xt, chi):
            raise NotDisplayed(chi.name)
        spans[i] = [span(xt, cell) for cell in chi.cells]
    out = {}
    for u, v in xt.edges:
        out[(u, v)] = frozenset(i for i in chosen if _separates(spans[i], u, v))
    return out


def _separates(cell_spans: list[frozenset[int]], u: int, v: int) -> bool:
    """Some two distinct cells have u in the first and v in the second."""
    for j, s in enumerate(cell_spans):
        if u in s:
            if any(v in t for k, t in enumerate(cell_spans) if k != j):
                return True
    return False


def is_distinguished(xt: XTree, cs: CharacterSet, characters: Iterable[int] | None = None) -> bool:
    return all(distinguished_edges(xt, cs, characters).values())


# -- Newick, canonical form, isomorphism ---------------------------------------


def _node_label(xt: XTree, v: int) -> str:
    return NEWICK_JOIN.join(xt.labels[v])


def _render(xt: XTree, v: int, parent: int | None) -> tuple[str, str]:
    """(newick, smallest taxon in the subtree) for v hanging from parent."""
    parts = [_render(xt, w, v) for w in xt.adjacency[v] if w != parent]
    parts.sort(key=lambda p: p[1])
    smallest = min([p[1] for p in parts] + list(xt.labels[v]))
    label = _node_label(xt, v)
    if not parts:
        return label, smallest
    return "(" + ",".join(p[0] for p in parts) + ")" + label, smallest


def to_newick(xt: XTree) -> str:
    """Newick rooted at the tree's centre, children ordered by smallest taxon.

    A bicentral tree is rooted on its central edge, which shows up as an
    unlabeled root with two children.  Taxa sharing a node are joined with
    ``+``; taxa on internal nodes go in the label slot after ``)``.  Since
    both the centre and the child order are fixed by the labels, isomorphic
    X-trees give identical strings.
    """
    require_valid(xt)
    centres = _trees.center(xt.adjacency)
    if len(centres) == 1:
        text, _ = _render(xt, centres[0], None)
    else:
        a, b = centres
        parts = sorted([_render(xt, a, b), _render(xt, b, a)], key=lambda p: p[1])
        text = "(" + ",".join(p[0] for p in parts) + ")"
    return text + ";"


canonical_form = to_newick


def xtree_isomorphic(x1: XTree, x2: XTree) -> bool:
    if x1.taxa != x2.taxa:
        raise TaxonMismatch("X-trees are on different taxon sets")
    return to_newick(x1) == to_newick(x2)


class _NewickReader:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.edges: list[Edge] = []
        self.phi: dict[str, int] = {}
        self.count = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, 1, self.pos + 1)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def label(self, node: int) -> None:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in "(),;" and not self.text[self.pos].isspace():
            self.pos += 1
        token = self.text[start : self.pos]
        if not token:
            return
        for taxon in token.split(NEWICK_JOIN):
            if not taxon or taxon in self.phi:
                raise self.error(f"bad or repeated taxon in label {token!r}")
            self.phi[taxon] = node

    def subtree(self) -> int:
        node = self.count
        self.count += 1
        if self.peek() == "(":
            self.pos += 1
            while True:
                child = self.subtree()
                self.edges.append((node, child))
                ch = self.peek()
                self.pos += 1
                if ch == ")":
                    break
                if ch != ",":
                    raise self.error("expected ',' or ')'")
        self.label(node)
        return node


def parse_newick(text: str) -> XTree:
    """Read the Newick dialect written by :func:`to_newick`."""
    reader = _NewickReader(text.strip())
    root = reader.subtree()
    if reader.peek() != ";":
        raise reader.error("expected ';'")
    nodes = list(range(reader.count))
    edges = reader.edges
    kids = [c for p, c in edges if p == root]
    if len(kids) == 2 and root not in reader.phi.values():
        edges = [e for e in edges if root not in e] + [tuple(kids)]
        nodes.remove(root)
    return XTree(tuple(nodes), tuple(edges), reader.phi)


def xtree_to_dot(xt: XTree, name: str = "X") -> str:
    lines = [f"graph {name} {{"]
    for v in sorted(xt.nodes):
        label = _node_label(xt, v)
        if label:
            lines.append(f'  n{v} [label="{label}"];')
        else:
            lines.append(f"  n{v} [shape=point];")
    for u, v in xt.edges:
        lines.append(f"  n{u} -- n{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- derive and induce ---------------------------------------------------------


def derive(cs: CharacterSet, xt: XTree) -> tuple[LabeledGraph, CliqueTreeRep]:
    """pig(C, T) and the tree representation derived from ``xt``.

    The representation lives on xt's own tree and maps each node to the pig
    vertices whose cell spans it.  ``is_clique_tree`` is set only when the
    map happens to be a bijection onto the maximal cliques.
    """
    require_valid(xt)
    missing = sorted(set(cs.taxa.taxa) - xt.taxa)
    if missing:
        raise UnknownTaxon(f"taxa {missing} are not placed on the tree")
    verts = cs.vertices
    spans = [span(xt, v.members) for v in verts]
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(verts)), 2)
        if spans[i] & spans[j]
    ]
    graph = LabeledGraph.from_edges(len(verts), edges, verts)
    bags = {node: frozenset(k for k, s in enumerate(spans) if node in s) for node in xt.nodes}
    rep = CliqueTreeRep(bags, xt.edges, False)
    if is_clique_tree_of(graph, rep):
        rep = CliqueTreeRep(bags, xt.edges, True)
    return graph, rep


def _canonical_preorder(ct: CliqueTreeRep) -> list[int]:
    root = min(ct.nodes, key=lambda v: (tuple(sorted(ct.cliques[v])), v))
    return _trees.preorder(ct.adjacency, root)


def candidate_nodes(ct: CliqueTreeRep, cs: CharacterSet) -> dict[str, list[int]]:
    """Candidate nodes of every taxon, in canonical preorder."""
    order = _canonical_preorder(ct)
    holding: dict[str, set[int]] = {t: set() for t in cs.taxa}
    for k, v in enumerate(cs.vertices):
        for t in v.members:
            holding[t].add(k)
    out = {}
    for t in cs.taxa:
        need = holding[t]
        cands = [v for v in order if need <= ct.cliques[v]]
        if not cands:
            raise NoCandidateNode(f"no node of the tree holds every cell containing {t!r}")
        out[t] = cands
    return out


def _suppress(nodes: set[int], edges: set[Edge], labeled: set[int]) -> None:
    changed = True
    while changed:
        changed = False
        for v in sorted(nodes):
            if v in labeled:
                continue
            inc = [e for e in edges if v in e]
            if len(inc) == 2:
                (a,) = set(inc[0]) - {v}
                (b,) = set(inc[1]) - {v}
                edges.difference_update(inc)
                edges.add(_trees.edge(a, b))
                nodes.discard(v)
                changed = True


def _induced(ct: CliqueTreeRep, phi: dict[str, int]) -> XTree:
    nodes = set(ct.nodes)
    edges = {_trees.edge(u, v) for u, v in ct.edges}
    _suppress(nodes, edges, set(phi.values()))
    xt = XTree(tuple(sorted(nodes)), tuple(sorted(edges)), dict(phi))
    require_valid(xt)
    return xt


def iter_induced_xtrees(ct: CliqueTreeRep, cs: CharacterSet) -> Iterator[XTree]:
    """Every X-tree induced by ``ct``; the first uses the canonical choices."""
    cands = candidate_nodes(ct, cs)
    taxa = list(cs.taxa)
    for choice in itertools.product(*(cands[t] for t in taxa)):
        yield _induced(ct, dict(zip(taxa, choice)))


def induce_xtrees(ct: CliqueTreeRep, cs: CharacterSet, limit: int | None = None) -> list[XTree]:
    return list(itertools.islice(iter_induced_xtrees(ct, cs), limit))


def induce_xtree(ct: CliqueTreeRep, cs: CharacterSet) -> XTree:
    """The X-tree from the canonical candidate choice for every taxon."""
    return next(iter_induced_xtrees(ct, cs))


def incontractable_edges(
    ct: CliqueTreeRep, cs: CharacterSet, characters: Iterable[int] | None = None
) -> dict[Edge, frozenset[int]]:
    """For each tree edge, the characters (by index) it is incontractable for.

    ``ct`` must represent a triangulation that does not break any of the
    considered characters, i.e. no node holds two cells of one of them.
    """
    chosen = _selected(cs, characters)
    verts = cs.vertices
    for node in ct.nodes:
        seen: set[int] = set()
        for k in ct.cliques[node]:
            c = verts[k].character_index
            if c in chosen and c in seen:
                raise NotProper(f"node {node} holds two cells of {cs.characters[c].name!r}")
            seen.add(c)
    by_char: dict[int, list[frozenset[int]]] = {i: [] for i in chosen}
    for k, v in enumerate(verts):
        if v.character_index in by_char:
            by_char[v.character_index].append(ct.subtree(k))
    out = {}
    for u, v in sorted(ct.edge_set()):
        out[(u, v)] = frozenset(i for i in chosen if _separates(by_char[i], u, v))
    return out
