"""Decision procedures on character sets, plus an exhaustive X-tree oracle.

The checkers work on pig(C) and its minimal triangulations:

* compatibility: some minimal triangulation is proper;
* defining: exactly one proper minimal triangulation H, H has a unique
  clique tree that is ternary with |X| leaves, and every clique-tree edge is
  incontractable;
* maximum compatible subsets: largest displayed sets over minimal
  triangulations;
* maximal defining subsets: the defining test relativised to a subset C'.

``oracle_defines`` answers the same questions without any graph theory, by
listing every X-tree on the taxa up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, NamedTuple, Sequence

from .characters import CharacterSet, build_pig
from .errors import TooLarge, UnknownCharacter
from .graph import (
    CliqueTreeRep,
    LabeledGraph,
    clique_tree,
    enumerate_clique_trees,
    has_unique_clique_tree,
    ur_leafage_and_ternary,
)
from .phylo import (
    XTree,
    derive,
    displayed_characters,
    incontractable_edges,
    induce_xtree,
    is_distinguished,
    is_free_ternary,
    to_newick,
)
from .triangulation import (
    DEFAULT_CAP,
    Triangulation,
    display_report,
    enumerate_minimal_triangulations,
    is_proper,
)

NOT_UNIQUE_PROPER = "not-unique-proper-mintri"
NOT_UNIQUE_DISPLAYING = "not-unique-displaying-mintri"
NOT_UR_TERNARY = "not-ur-ternary-leafage"
NOT_INCONTRACTABLE = "not-incontractable"


@dataclass(frozen=True)
class CompatVerdict:
    compatible: bool
    witness_triangulation: Triangulation | None = None
    witness_xtree: XTree | None = None
    broken: tuple[frozenset[int], ...] = ()  # per minimal triangulation, when incompatible


@dataclass(frozen=True)
class DefinesVerdict:
    defines: bool
    xtree: XTree | None = None
    failed_condition: str | None = None
    evidence: dict[str, Any] = field(default_factory=dict)
    triangulation: Triangulation | None = None


@dataclass(frozen=True)
class SubsetVerdict:
    subset: frozenset[int]
    is_maximal_defining: bool
    displayed_match_unique: bool
    xtree: XTree | None = None
    failed_condition: str | None = None
    evidence: dict[str, Any] = field(default_factory=dict)
    triangulation: Triangulation | None = None


class MaxCompatible(NamedTuple):
    size: int
    subsets: list[frozenset[int]]
    witnesses: list[Triangulation]


class OracleResult(NamedTuple):
    count: int
    trees: list[XTree]


def _minimal_triangulations(cs: CharacterSet, cap: int | None) -> list[Triangulation]:
    return enumerate_minimal_triangulations(build_pig(cs), cap)


def _fill_names(t: Triangulation) -> list[str]:
    g = t.base
    return [f"{g.label(u)}~{g.label(v)}" for u, v in t.sorted_fill]


def is_compatible(cs: CharacterSet, cap: int | None = DEFAULT_CAP) -> CompatVerdict:
    """Compatible iff pig(C) has a proper minimal triangulation."""
    tris = _minimal_triangulations(cs, cap)
    for t in tris:
        if is_proper(t):
            xt = induce_xtree(clique_tree(t.graph), cs)
            if len(displayed_characters(xt, cs)) != len(cs.characters):
                raise RuntimeError("induced witness is not a perfect phylogeny")
            return CompatVerdict(True, t, xt)
    return CompatVerdict(False, broken=tuple(display_report(t).broken for t in tris))


def _ur_ternary_leafage(cs: CharacterSet, h: LabeledGraph) -> tuple[CliqueTreeRep | None, dict[str, Any]]:
    """The unique clique tree of h if it is ternary with |X| leaves, else evidence."""
    if not has_unique_clique_tree(h):
        two = enumerate_clique_trees(h, limit=2)
        return None, {"reason": "several clique trees", "clique_tree_edges": [list(t.edges) for t in two]}
    ct = clique_tree(h)
    leafage, ternary = ur_leafage_and_ternary(ct)
    if not ternary or leafage != len(cs.taxa):
        return None, {
            "reason": "shape",
            "leafage": leafage,
            "taxa": len(cs.taxa),
            "ternary": ternary,
        }
    return ct, {}


def _first_contractable(cs: CharacterSet, ct: CliqueTreeRep, chars: Iterable[int] | None) -> dict[str, Any]:
    for (u, v), by in incontractable_edges(ct, cs, chars).items():
        if not by:
            return {"edge": [u, v]}
    return {}


def _witness(cs: CharacterSet, ct: CliqueTreeRep, h: LabeledGraph) -> XTree:
    xt = induce_xtree(ct, cs)
    if derive(cs, xt)[0].edge_set != h.edge_set:
        raise RuntimeError("induced X-tree does not re-derive the triangulation")
    return xt


def defines_unique(cs: CharacterSet, cap: int | None = DEFAULT_CAP) -> DefinesVerdict:
    """Decide whether ``cs`` has exactly one perfect phylogeny."""
    proper = [t for t in _minimal_triangulations(cs, cap) if is_proper(t)]
    if len(proper) != 1:
        return DefinesVerdict(
            False,
            failed_condition=NOT_UNIQUE_PROPER,
            evidence={
                "proper_minimal_triangulations": len(proper),
                "fills": [_fill_names(t) for t in proper[:2]],
            },
        )
    t = proper[0]
    ct, evidence = _ur_ternary_leafage(cs, t.graph)
    if ct is None:
        return DefinesVerdict(False, failed_condition=NOT_UR_TERNARY, evidence=evidence, triangulation=t)
    evidence = _first_contractable(cs, ct, None)
    if evidence:
        return DefinesVerdict(False, failed_condition=NOT_INCONTRACTABLE, evidence=evidence, triangulation=t)
    return DefinesVerdict(True, xtree=_witness(cs, ct, t.graph), triangulation=t)


def max_compatible_subsets(cs: CharacterSet, cap: int | None = DEFAULT_CAP) -> MaxCompatible:
    """Largest displayed sets over the minimal triangulations of pig(C)."""
    best: dict[frozenset[int], Triangulation] = {}
    size = -1
    for t in _minimal_triangulations(cs, cap):
        shown = display_report(t).displayed
        if len(shown) > size:
            size, best = len(shown), {}
        if len(shown) == size and shown not in best:
            best[shown] = t
    keys = sorted(best, key=lambda s: sorted(s))
    return MaxCompatible(size, keys, [best[k] for k in keys])


def _subset_verdict(cs: CharacterSet, sub: frozenset[int], tris: Sequence[Triangulation]) -> SubsetVerdict:
    shown = [display_report(t).displayed for t in tris]
    over = [i for i, s in enumerate(shown) if sub <= s]
    if len(over) != 1 or shown[over[0]] != sub:
        return SubsetVerdict(
            sub,
            False,
            False,
            failed_condition=NOT_UNIQUE_DISPLAYING,
            evidence={
                "triangulations_displaying_subset": len(over),
                "displayed_sets": [cs.names(shown[i]) for i in over[:2]],
            },
        )
    t = tris[over[0]]
    ct, evidence = _ur_ternary_leafage(cs, t.graph)
    if ct is None:
        return SubsetVerdict(sub, False, True, failed_condition=NOT_UR_TERNARY, evidence=evidence, triangulation=t)
    evidence = _first_contractable(cs, ct, sub)
    if evidence:
        return SubsetVerdict(sub, False, True, failed_condition=NOT_INCONTRACTABLE, evidence=evidence, triangulation=t)
    return SubsetVerdict(sub, True, True, xtree=_witness(cs, ct, t.graph), triangulation=t)


def is_maximal_defining_subset(
    cs: CharacterSet, sub: Iterable[int], cap: int | None = DEFAULT_CAP
) -> SubsetVerdict:
    """Decide whether the characters at indices ``sub`` form a maximal defining subset."""
    sub = frozenset(sub)
    for i in sub:
        if not 0 <= i < len(cs.characters):
            raise UnknownCharacter(f"character index {i} out of range")
    return _subset_verdict(cs, sub, _minimal_triangulations(cs, cap))


def find_maximal_defining_subsets(
    cs: CharacterSet, cap: int | None = DEFAULT_CAP
) -> list[tuple[frozenset[int], SubsetVerdict]]:
    """Every maximal defining subset.

    A maximal defining subset is the full displayed set of some minimal
    triangulation, so only those sets are tested.
    """
    tris = _minimal_triangulations(cs, cap)
    candidates = sorted({display_report(t).displayed for t in tris}, key=lambda s: (len(s), sorted(s)))
    out = []
    for sub in candidates:
        verdict = _subset_verdict(cs, sub, tris)
        if verdict.is_maximal_defining:
            out.append((sub, verdict))
    return out


# -- the oracle ----------------------------------------------------------------


def _grow(xt: XTree, taxon: str) -> Iterable[XTree]:
    """Every X-tree on taxa + {taxon} whose removal of ``taxon`` gives back xt."""
    nodes = list(xt.nodes)
    edges = list(xt.edges)
    new = max(nodes) + 1
    for v in nodes:
        yield XTree(xt.nodes, xt.edges, {**xt.phi, taxon: v})
        yield XTree((*nodes, new), (*edges, (v, new)), {**xt.phi, taxon: new})
    for k, (u, v) in enumerate(edges):
        rest = edges[:k] + edges[k + 1 :]
        yield XTree((*nodes, new), (*rest, (u, new), (new, v)), {**xt.phi, taxon: new})
        leaf = new + 1
        yield XTree(
            (*nodes, new, leaf),
            (*rest, (u, new), (new, v), (new, leaf)),
            {**xt.phi, taxon: leaf},
        )


@lru_cache(maxsize=16)
def enumerate_xtrees(taxa: tuple[str, ...], node_cap: int | None = None) -> tuple[XTree, ...]:
    """All X-trees on ``taxa`` up to label-preserving isomorphism.

    Built taxon by taxon: deleting the last taxon from an X-tree and
    suppressing what that leaves behind gives an X-tree on the others, so
    the four insertion moves in ``_grow`` reach every tree.  With every
    node of degree at most two labeled, no tree exceeds 2|X| - 2 nodes
    (|X| >= 2); ``node_cap`` defaults to that bound.
    """
    if not taxa:
        return ()
    if node_cap is None:
        node_cap = max(1, 2 * len(taxa) - 2)
    level = {to_newick(t): t for t in [XTree((0,), (), {taxa[0]: 0})]}
    for taxon in taxa[1:]:
        nxt: dict[str, XTree] = {}
        for xt in level.values():
            for grown in _grow(xt, taxon):
                key = to_newick(grown)
                if key not in nxt:
                    nxt[key] = _renumber(grown)
        level = nxt
    level = {k: t for k, t in level.items() if len(t.nodes) <= node_cap}
    return tuple(level[k] for k in sorted(level))


def _renumber(xt: XTree) -> XTree:
    order = {v: i for i, v in enumerate(sorted(xt.nodes))}
    return XTree(
        tuple(range(len(order))),
        tuple((order[u], order[v]) for u, v in xt.edges),
        {t: order[v] for t, v in xt.phi.items()},
    )


def oracle_displayed_sets(
    cs: CharacterSet, max_taxa: int = 6, node_cap: int | None = None
) -> list[tuple[XTree, frozenset[int]]]:
    """Every X-tree on the taxa with the set of characters it displays."""
    if len(cs.taxa) > max_taxa:
        raise TooLarge(f"{len(cs.taxa)} taxa exceeds oracle cap {max_taxa}")
    trees = enumerate_xtrees(tuple(cs.taxa), node_cap)
    return [(xt, displayed_characters(xt, cs)) for xt in trees]


def oracle_defines(cs: CharacterSet, node_cap: int | None = None, max_taxa: int = 6) -> OracleResult:
    """Count perfect phylogenies of ``cs`` by exhaustive X-tree enumeration.

    Returns the number of isomorphism classes and at most two representatives.
    """
    everything = frozenset(range(len(cs.characters)))
    hits = [xt for xt, shown in oracle_displayed_sets(cs, max_taxa, node_cap) if shown == everything]
    return OracleResult(len(hits), hits[:2])


def verify_defined_tree(cs: CharacterSet, xt: XTree, chars: Iterable[int] | None = None) -> bool:
    """The shape a defined perfect phylogeny must have: free, ternary, distinguished."""
    free, ternary = is_free_ternary(xt)
    return free and ternary and is_distinguished(xt, cs, chars)
