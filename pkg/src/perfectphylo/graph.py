"""Undirected graphs and the chordal-graph toolkit.

Vertices are the integers ``0..n-1``.  Everything here is exact and aimed at
small graphs: chordality by maximum cardinality search, maximal cliques from a
perfect elimination ordering, clique trees as maximum-weight spanning trees of
the clique intersection graph, and minimal separators both from clique trees
and by direct search.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping, Sequence

from . import _trees
from .errors import Disconnected, NotChordal, NotCliqueTree, TooLarge

Edge = tuple[int, int]


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    adj: tuple[frozenset[int], ...]
    labels: tuple[Any, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, ns in enumerate(self.adj):
            if v in ns:
                raise ValueError(f"self-loop at {v}")
            for w in ns:
                if not 0 <= w < self.n or v not in self.adj[w]:
                    raise ValueError(f"adjacency not symmetric at {v}-{w}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length must equal n")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Edge], labels: Sequence[Any] | None = None
    ) -> LabeledGraph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj), None if labels is None else tuple(labels))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def non_edges(self) -> list[Edge]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if v not in self.adj[u]]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def add_edges(self, edges: Iterable[Edge]) -> LabeledGraph:
        return LabeledGraph.from_edges(self.n, list(self.edges) + list(edges), self.labels)

    def label(self, v: int) -> str:
        if self.labels is None:
            return str(v)
        lab = self.labels[v]
        return getattr(lab, "label", str(lab))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def components(g: LabeledGraph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of ``g - removed``, ordered by smallest vertex."""
    removed = set(removed)
    seen = set(removed)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: LabeledGraph) -> bool:
    return len(components(g)) <= 1


# -- chordality ---------------------------------------------------------------


def mcs_order(g: LabeledGraph) -> list[int]:
    """Maximum cardinality search visit order, ties to the smallest vertex."""
    weight = [0] * g.n
    done = [False] * g.n
    order = []
    for _ in range(g.n):
        best = -1
        for u in range(g.n):
            if not done[u] and (best < 0 or weight[u] > weight[best]):
                best = u
        done[best] = True
        order.append(best)
        for w in g.adj[best]:
            if not done[w]:
                weight[w] += 1
    return order


def perfect_elimination_ordering(g: LabeledGraph) -> list[int] | None:
    """A perfect elimination ordering of ``g``, or None when g is not chordal."""
    peo = mcs_order(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        for u in later:
            if u != parent and u not in g.adj[parent]:
                return None
    return peo


def is_chordal(g: LabeledGraph) -> bool:
    return perfect_elimination_ordering(g) is not None


def _clique_key(c: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(c))


def maximal_cliques_chordal(g: LabeledGraph) -> list[frozenset[int]]:
    """All maximal cliques of a chordal graph in canonical (sorted tuple) order.

    The null graph has the single maximal clique ``frozenset()``.
    """
    peo = perfect_elimination_ordering(g)
    if peo is None:
        raise NotChordal("graph is not chordal")
    if g.n == 0:
        return [frozenset()]
    pos = {v: i for i, v in enumerate(peo)}
    candidates = {
        frozenset([v, *(u for u in g.adj[v] if pos[u] > pos[v])]) for v in peo
    }
    maximal = [c for c in candidates if not any(c < d for d in candidates)]
    return sorted(maximal, key=_clique_key)


# -- tree representations -----------------------------------------------------


@dataclass(frozen=True)
class CliqueTreeRep:
    """A tree together with a map from its nodes to vertex sets of a graph.

    ``is_clique_tree`` records that the map is a bijection onto the maximal
    cliques of the represented graph.
    """

    cliques: Mapping[int, frozenset[int]]
    edges: tuple[Edge, ...]
    is_clique_tree: bool = False

    def __post_init__(self) -> None:
        if not _trees.is_tree(self.cliques, self.edges):
            raise ValueError("edges do not form a tree on the given nodes")

    @property
    def nodes(self) -> list[int]:
        return sorted(self.cliques)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return _trees.adjacency(self.cliques, self.edges)

    def subtree(self, vertex: int) -> frozenset[int]:
        """Nodes whose clique contains ``vertex`` (tr(A, chi) for pig vertices)."""
        return frozenset(v for v, k in self.cliques.items() if vertex in k)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(_edge(u, v) for u, v in self.edges)


def represented_graph(rep: CliqueTreeRep, n: int, labels: Sequence[Any] | None = None) -> LabeledGraph:
    """The graph in which x ~ y iff some node's clique holds both."""
    edges = set()
    for k in rep.cliques.values():
        edges.update(_edge(u, v) for u, v in combinations(sorted(k), 2))
    return LabeledGraph.from_edges(n, sorted(edges), labels)


def representation_problems(g: LabeledGraph, rep: CliqueTreeRep) -> list[str]:
    """Violations of edge coverage and convexity; empty for a tree representation."""
    problems = []
    covered = set()
    for node, k in rep.cliques.items():
        if any(not 0 <= x < g.n for x in k):
            problems.append(f"node {node} holds a vertex outside the graph")
            continue
        covered.update(_edge(u, v) for u, v in combinations(sorted(k), 2))
    for u, v in sorted(covered - g.edge_set):
        problems.append(f"non-adjacent {u},{v} share a node")
    for u, v in sorted(g.edge_set - covered):
        problems.append(f"edge {u}-{v} not covered")
    for x in range(g.n):
        nodes = rep.subtree(x)
        if not _trees.is_connected(rep.adjacency, nodes):
            problems.append(f"vertex {x} does not induce a subtree")
    return problems


def is_tree_representation(g: LabeledGraph, rep: CliqueTreeRep) -> bool:
    return not representation_problems(g, rep)


def is_clique_tree_of(g: LabeledGraph, rep: CliqueTreeRep) -> bool:
    """Tree representation whose node map is a bijection onto maximal cliques."""
    if not is_chordal(g) or not is_tree_representation(g, rep):
        return False
    bags = list(rep.cliques.values())
    return len(set(bags)) == len(bags) and set(bags) == set(maximal_cliques_chordal(g))


def _weighted_pairs(cliques: Sequence[frozenset[int]]) -> list[tuple[int, Edge]]:
    return [
        (len(cliques[i] & cliques[j]), (i, j))
        for i, j in combinations(range(len(cliques)), 2)
    ]


def clique_tree(g: LabeledGraph) -> CliqueTreeRep:
    """A clique tree: maximum-weight spanning tree of the clique intersection graph.

    Nodes are indices into ``maximal_cliques_chordal(g)``; ties are broken by
    canonical clique order so the result is deterministic.
    """
    cliques = maximal_cliques_chordal(g)
    comp = list(range(len(cliques)))
    chosen = []
    for _, (i, j) in sorted(_weighted_pairs(cliques), key=lambda p: (-p[0], p[1])):
        if comp[i] != comp[j]:
            old, new = comp[j], comp[i]
            comp = [new if c == old else c for c in comp]
            chosen.append((i, j))
    return CliqueTreeRep(dict(enumerate(cliques)), tuple(sorted(chosen)), True)


def _forests(comp: tuple[int, ...], edges: Sequence[Edge], need: int, start: int = 0) -> Iterator[list[Edge]]:
    if need == 0:
        yield []
        return
    for i in range(start, len(edges) - need + 1):
        a, b = edges[i]
        if comp[a] == comp[b]:
            continue
        old, new = comp[b], comp[a]
        merged = tuple(new if c == old else c for c in comp)
        for rest in _forests(merged, edges, need - 1, i + 1):
            yield [edges[i], *rest]


def _merge_all(comp: tuple[int, ...], edges: Iterable[Edge]) -> tuple[int, ...]:
    for a, b in edges:
        if comp[a] != comp[b]:
            old, new = comp[b], comp[a]
            comp = tuple(new if c == old else c for c in comp)
    return comp


def _max_spanning_trees(k: int, weighted: list[tuple[int, Edge]]) -> Iterator[tuple[Edge, ...]]:
    """Every maximum-weight spanning tree of the complete weighted graph on k nodes.

    A spanning tree has maximum weight iff, for each weight w, its edges of
    weight >= w connect exactly what all edges of weight >= w connect.  So the
    trees are products of maximal spanning forests chosen class by class.
    """
    levels = sorted({w for w, _ in weighted}, reverse=True)
    by_level = {w: sorted(e for x, e in weighted if x == w) for w in levels}

    def rec(li: int, comp: tuple[int, ...], chosen: list[Edge]) -> Iterator[tuple[Edge, ...]]:
        if li == len(levels):
            yield tuple(sorted(chosen))
            return
        usable = [e for e in by_level[levels[li]] if comp[e[0]] != comp[e[1]]]
        need = len(set(comp)) - len(set(_merge_all(comp, usable)))
        for forest in _forests(comp, usable, need):
            yield from rec(li + 1, _merge_all(comp, forest), chosen + forest)

    yield from rec(0, tuple(range(k)), [])


def enumerate_clique_trees(g: LabeledGraph, limit: int | None = None) -> list[CliqueTreeRep]:
    """All clique trees of a chordal graph, sorted by edge list.

    ``limit`` stops the enumeration early (useful when only asking whether a
    second clique tree exists).  Each tree is checked for coverage and
    convexity before it is returned.
    """
    cliques = maximal_cliques_chordal(g)
    bags = dict(enumerate(cliques))
    out = []
    for edges in _max_spanning_trees(len(cliques), _weighted_pairs(cliques)):
        rep = CliqueTreeRep(bags, edges, True)
        if representation_problems(g, rep):
            raise AssertionError(f"maximum spanning tree {edges} is not a clique tree")
        out.append(rep)
        if limit is not None and len(out) >= limit:
            break
    out.sort(key=lambda r: r.edges)
    return out


# -- minimal separators -------------------------------------------------------


@dataclass(frozen=True)
class MinimalSeparator:
    vertices: frozenset[int]
    multiplicity: int

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))


def full_components(g: LabeledGraph, s: Iterable[int]) -> tuple[list[frozenset[int]], list[bool]]:
    """Components of ``g - s`` and, for each, whether its neighbourhood is all of s."""
    s = frozenset(s)
    comps = components(g, s)
    flags = []
    for comp in comps:
        nbhd = frozenset(w for u in comp for w in g.adj[u]) & s
        flags.append(nbhd == s)
    return comps, flags


def _neighbourhood(g: LabeledGraph, comp: Iterable[int]) -> frozenset[int]:
    comp = set(comp)
    return frozenset(w for u in comp for w in g.adj[u]) - comp


def _with_multiplicity(g: LabeledGraph, seps: Iterable[frozenset[int]]) -> list[MinimalSeparator]:
    out = []
    for s in seps:
        _, flags = full_components(g, s)
        out.append(MinimalSeparator(frozenset(s), sum(flags) - 1))
    return sorted(out, key=MinimalSeparator.key)


def minimal_separators_bruteforce(g: LabeledGraph, cap: int = 16) -> list[MinimalSeparator]:
    """All minimal separators of an arbitrary graph, with multiplicities.

    Seeds with N(C) for every component C of G - N[v], then closes under
    N(C) for components C of G - (S + N(x)), x in S.  Exponential in the worst
    case, hence the vertex cap.
    """
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceeds separator cap {cap}")
    found: set[frozenset[int]] = set()
    todo: list[frozenset[int]] = []

    def add_from(removed: Iterable[int]) -> None:
        for comp in components(g, removed):
            s = _neighbourhood(g, comp)
            _, flags = full_components(g, s)
            if s not in found and sum(flags) >= 2:
                found.add(s)
                todo.append(s)

    for v in range(g.n):
        add_from(g.adj[v] | {v})
    while todo:
        s = todo.pop()
        for x in s:
            add_from(s | g.adj[x])
    return _with_multiplicity(g, found)


def minimal_separators_subset_scan(g: LabeledGraph, cap: int = 12) -> list[MinimalSeparator]:
    """Test every vertex subset against the two-full-components criterion."""
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceeds subset-scan cap {cap}")
    seps = []
    for r in range(g.n + 1):
        for s in combinations(range(g.n), r):
            _, flags = full_components(g, s)
            if sum(flags) >= 2:
                seps.append(frozenset(s))
    return _with_multiplicity(g, seps)


def minimal_separators_from_clique_tree(ct: CliqueTreeRep) -> list[MinimalSeparator]:
    """Separators as clique intersections across tree edges; multiplicity is the edge count."""
    if not ct.is_clique_tree:
        raise NotCliqueTree("representation is not marked as a clique tree")
    counts = Counter(ct.cliques[u] & ct.cliques[v] for u, v in ct.edges)
    return sorted((MinimalSeparator(s, m) for s, m in counts.items()), key=MinimalSeparator.key)


# -- unique representability --------------------------------------------------


def is_ur_chordal(g: LabeledGraph) -> bool:
    """Whether connected chordal g has exactly one clique tree.

    Tested as: every minimal separator lies in exactly two maximal cliques.
    Counting separators against cliques is not enough.  Cliques {0,1,2},
    {1,2,3}, {2,4} give two separators and three cliques, yet {2,4} can
    hang off either of the other two.
    """
    if not is_chordal(g):
        raise NotChordal("graph is not chordal")
    if not is_connected(g):
        raise Disconnected("ur-chordal recognition needs a connected graph")
    ct = clique_tree(g)
    bags = list(ct.cliques.values())
    return all(
        sum(s.vertices <= k for k in bags) == 2 for s in minimal_separators_from_clique_tree(ct)
    )


def has_unique_clique_tree(g: LabeledGraph) -> bool:
    """Unique representability for chordal graphs that may be disconnected.

    Clique trees of a disconnected graph join the component trees through
    empty-intersection edges.  That join is forced only for two components
    that are each a single clique.
    """
    comps = components(g)
    if len(comps) <= 1:
        return is_ur_chordal(g)
    if not is_chordal(g):
        raise NotChordal("graph is not chordal")
    return len(comps) == 2 and all(g.is_clique(c) for c in comps)


def ur_leafage_and_ternary(ct: CliqueTreeRep) -> tuple[int, bool]:
    """Leaf count and whether every internal node has degree exactly three.

    Nodes of degree at most one count as leaves, so a one-node tree has
    leafage 1; trees with at most two nodes are vacuously ternary.
    """
    degrees = [len(ct.adjacency[v]) for v in ct.nodes]
    leafage = sum(1 for d in degrees if d <= 1)
    ternary = all(d == 3 for d in degrees if d >= 2)
    return leafage, ternary


def delete_vertices(g: LabeledGraph, u: Iterable[int]) -> LabeledGraph:
    """Induced subgraph on the remaining vertices, renumbered in order, labels kept."""
    u = set(u)
    keep = [v for v in range(g.n) if v not in u]
    new = {v: i for i, v in enumerate(keep)}
    edges = [(new[a], new[b]) for a, b in g.edges if a in new and b in new]
    labels = None if g.labels is None else [g.labels[v] for v in keep]
    return LabeledGraph.from_edges(len(keep), edges, labels)


# -- DOT ----------------------------------------------------------------------


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: LabeledGraph, fill: Iterable[Edge] = (), name: str = "G") -> str:
    """DOT text for ``g`` plus optional fill edges drawn dashed."""
    fill = sorted(_edge(*e) for e in fill)
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f"  v{v} [label={_quote(g.label(v))}];")
    for u, v in g.edges:
        lines.append(f"  v{u} -- v{v};")
    for u, v in fill:
        lines.append(f"  v{u} -- v{v} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def clique_tree_to_dot(ct: CliqueTreeRep, g: LabeledGraph | None = None, name: str = "T") -> str:
    lines = [f"graph {name} {{"]
    for node in ct.nodes:
        members = sorted(ct.cliques[node])
        text = ", ".join(g.label(x) if g is not None else str(x) for x in members)
        lines.append(f"  n{node} [shape=box,label={_quote('{' + text + '}')}];")
    for u, v in sorted(ct.edge_set()):
        lines.append(f"  n{u} -- n{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
