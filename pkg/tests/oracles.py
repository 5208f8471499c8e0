"""Slow, definition-level reference implementations built on networkx."""

from __future__ import annotations

import itertools

import networkx as nx

from perfectphylo.characters import CharacterSet
from perfectphylo.graph import LabeledGraph
from perfectphylo.phylo import XTree, span

from samples import to_nx


def minimal_fill_sets(g: LabeledGraph) -> set[frozenset]:
    """Inclusion-minimal sets of non-edges whose addition makes g chordal."""
    h = to_nx(g)
    non_edges = [e for e in itertools.combinations(range(g.n), 2) if not h.has_edge(*e)]
    found: list[frozenset] = []
    for k in range(len(non_edges) + 1):
        for fill in itertools.combinations(non_edges, k):
            fill = frozenset(fill)
            if any(f <= fill for f in found):
                continue
            trial = h.copy()
            trial.add_edges_from(fill)
            if nx.is_chordal(trial):
                found.append(fill)
    return set(found)


def is_minimal_by_subsets(g: LabeledGraph, fill: frozenset) -> bool:
    h = to_nx(g)
    for k in range(len(fill)):
        for sub in itertools.combinations(sorted(fill), k):
            trial = h.copy()
            trial.add_edges_from(sub)
            if nx.is_chordal(trial):
                return False
    return True


def maximal_cliques(g: LabeledGraph) -> list[frozenset]:
    if g.n == 0:
        return [frozenset()]
    return sorted((frozenset(c) for c in nx.find_cliques(to_nx(g))), key=sorted)


def _convex(cliques: list[frozenset], edges, vertices) -> bool:
    t = nx.Graph()
    t.add_nodes_from(range(len(cliques)))
    t.add_edges_from(edges)
    for x in vertices:
        holding = [i for i, c in enumerate(cliques) if x in c]
        if not nx.is_connected(t.subgraph(holding)):
            return False
    return True


def clique_trees_by_spanning_subsets(g: LabeledGraph) -> set[frozenset]:
    """Every tree on the maximal cliques satisfying convexity, as sets of clique pairs."""
    cliques = maximal_cliques(g)
    k = len(cliques)
    pairs = list(itertools.combinations(range(k), 2))
    out = set()
    for edges in itertools.combinations(pairs, k - 1):
        t = nx.Graph()
        t.add_nodes_from(range(k))
        t.add_edges_from(edges)
        if nx.is_tree(t) and _convex(cliques, edges, range(g.n)):
            out.add(frozenset(frozenset((cliques[a], cliques[b])) for a, b in edges))
    return out


def separators_by_definition(g: LabeledGraph) -> dict[frozenset, int]:
    """Subset scan: S is a minimal separator iff G - S has two or more full components."""
    h = to_nx(g)
    out = {}
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            s = set(s)
            rest = h.subgraph(set(h.nodes) - s)
            full = 0
            for comp in nx.connected_components(rest):
                nb = {w for v in comp for w in h[v]} & s
                if nb == s:
                    full += 1
            if full >= 2:
                out[frozenset(s)] = full - 1
    return out


def xtree_graph(xt: XTree) -> nx.Graph:
    t = nx.Graph()
    for v in xt.nodes:
        t.add_node(v, taxa=xt.labels[v])
    t.add_edges_from(xt.edges)
    return t


def isomorphic_by_matching(x1: XTree, x2: XTree) -> bool:
    return nx.is_isomorphic(xtree_graph(x1), xtree_graph(x2), node_match=lambda a, b: a["taxa"] == b["taxa"])


def displays_by_definition(xt: XTree, cs: CharacterSet, i: int) -> bool:
    spans = [span(xt, cell) for cell in cs.characters[i].cells]
    return all(not (a & b) for a, b in itertools.combinations(spans, 2))


def all_xtrees_by_pruefer(taxa: str, max_nodes: int) -> list[XTree]:
    """X-trees up to isomorphism from every labeled tree and every taxon placement."""
    reps: list[XTree] = []
    for m in range(1, max_nodes + 1):
        for t in _labeled_trees(m):
            for placement in itertools.product(range(m), repeat=len(taxa)):
                xt = XTree(tuple(range(m)), tuple(t.edges), dict(zip(taxa, placement)))
                low = [v for v in xt.nodes if xt.degree(v) <= 2 and not xt.labels[v]]
                if low:
                    continue
                if not any(isomorphic_by_matching(xt, r) for r in reps):
                    reps.append(xt)
    return reps


def _labeled_trees(m: int) -> list[nx.Graph]:
    if m == 1:
        t = nx.Graph()
        t.add_node(0)
        return [t]
    if m == 2:
        return [nx.Graph([(0, 1)])]
    return [nx.from_prufer_sequence(list(seq)) for seq in itertools.product(range(m), repeat=m - 2)]
