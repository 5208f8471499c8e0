import itertools
import random

import pytest

from perfectphylo.characters import CharacterSet, PartialCharacter, make_character_set, parse_character_set
from perfectphylo.decide import (
    NOT_INCONTRACTABLE,
    NOT_UNIQUE_DISPLAYING,
    NOT_UNIQUE_PROPER,
    NOT_UR_TERNARY,
    defines_unique,
    enumerate_xtrees,
    find_maximal_defining_subsets,
    is_compatible,
    is_maximal_defining_subset,
    max_compatible_subsets,
    oracle_defines,
    oracle_displayed_sets,
    verify_defined_tree,
)
from perfectphylo.errors import TooLarge, UnknownCharacter
from perfectphylo.phylo import derive, displayed_characters, is_perfect_phylogeny, to_newick, xtree_isomorphic
from perfectphylo.triangulation import is_minimal_triangulation, is_proper

import oracles
from samples import planted_instance, random_character_set


def test_xtree_counts_small():
    # values frozen from the enumeration; the first three are re-derived below
    assert [len(enumerate_xtrees(tuple("abcdef"[:k]))) for k in range(1, 6)] == [1, 2, 8, 64, 832]
    assert enumerate_xtrees(()) == ()


def test_xtree_enumeration_matches_labeled_tree_scan():
    for k in (1, 2, 3):
        taxa = "abc"[:k]
        brute = oracles.all_xtrees_by_pruefer(taxa, max(1, 2 * k - 2))
        assert len(brute) == len(enumerate_xtrees(tuple(taxa)))
        mine = {to_newick(x) for x in enumerate_xtrees(tuple(taxa))}
        assert {to_newick(x) for x in brute} == mine


def test_node_bound_is_never_binding():
    trees = enumerate_xtrees(tuple("abcde"), node_cap=20)
    assert len(trees) == 832 and max(len(t.nodes) for t in trees) == 8


def test_example_incompatible(example):
    v = is_compatible(example)
    assert not v.compatible and v.witness_xtree is None
    assert v.broken == ({0}, {1})
    assert oracle_defines(example).count == 0


def test_example_subset_compatible(example, example_tree):
    sub = example.subset([0, 2])
    v = is_compatible(sub)
    assert v.compatible and is_proper(v.witness_triangulation)
    assert is_minimal_triangulation(v.witness_triangulation)
    assert is_perfect_phylogeny(v.witness_xtree, sub)
    assert is_perfect_phylogeny(example_tree, sub)
    assert oracle_defines(sub).count >= 1


def test_empty_sets():
    empty = make_character_set([], taxa=["a", "b"])
    assert is_compatible(empty).compatible
    assert not defines_unique(empty).defines
    assert max_compatible_subsets(empty).size == 0
    assert defines_unique(make_character_set([], taxa=["a"])).defines


def test_example_defines_and_max_compatible(example):
    d = defines_unique(example)
    assert not d.defines and d.failed_condition == NOT_UNIQUE_PROPER
    assert d.evidence["proper_minimal_triangulations"] == 0
    m = max_compatible_subsets(example)
    assert m.size == 2 and m.subsets == [{0, 2}, {1, 2}]
    assert [is_proper(t) for t in m.witnesses] == [False, False]


def test_example_maximal_defining(example):
    v = is_maximal_defining_subset(example, {0, 2})
    assert v.displayed_match_unique
    assert not v.is_maximal_defining and v.failed_condition == NOT_UR_TERNARY
    assert v.evidence["leafage"] == 2
    assert find_maximal_defining_subsets(example) == []
    truth = [s for s in _oracle_maximal_defining(example)]
    assert truth == []
    with pytest.raises(UnknownCharacter):
        is_maximal_defining_subset(example, {7})


def test_empty_subset_never_defines_on_two_taxa(example):
    v = is_maximal_defining_subset(example, set())
    assert not v.is_maximal_defining and v.failed_condition == NOT_UNIQUE_DISPLAYING


def test_single_cell_character_does_not_define():
    d = defines_unique(parse_character_set("taxa: a b\nx: a b\n"))
    assert not d.defines


def test_compatible_set_is_its_own_maximum():
    cs = parse_character_set("taxa: a b c d\nx: a b | c d\n")
    m = max_compatible_subsets(cs)
    assert m.size == 1 and m.subsets == [{0}]


def test_failed_conditions_are_reported():
    # one quartet split: node a+b--c+d also displays it, so the shape test fails
    d = defines_unique(parse_character_set("taxa: a b c d\nx: a b | c d\n"))
    assert d.failed_condition == NOT_UR_TERNARY
    for text in [
        "taxa: a b c d\nx: a | b c d\ny: d | a b c\nz: a b | c d\n",
        "taxa: a b c d\nx: a | b c d\ny: d | a b c\nz: b | a c\nw: c | b d\n",
        "taxa: a b c d\nx: a b | c d\ny: a | b\nz: c | d\n",
    ]:
        cs = parse_character_set(text)
        d = defines_unique(cs)
        assert d.defines == (oracle_defines(cs).count == 1)
        if not d.defines:
            assert d.failed_condition in (NOT_UNIQUE_PROPER, NOT_UR_TERNARY, NOT_INCONTRACTABLE)


def test_contractable_edge_is_reported():
    # the two one-cell characters fit on a+b as well as on a--b
    cs = parse_character_set("taxa: a b\nc0: a\nc1: b\n")
    d = defines_unique(cs)
    assert not d.defines and d.failed_condition == NOT_INCONTRACTABLE
    assert oracle_defines(cs).count == 2


def test_cap_is_enforced():
    cs = make_character_set([(f"c{i}", [[f"t{i}"], [f"u{i}"]]) for i in range(5)])
    with pytest.raises(TooLarge):
        is_compatible(cs, cap=5)
    with pytest.raises(TooLarge):
        oracle_displayed_sets(cs)


def test_planted_instances_are_defined():
    rng = random.Random(79)
    for _ in range(25):
        cs, xt = planted_instance(rng, rng.randint(2, 5))
        d = defines_unique(cs, cap=None)
        assert d.defines and xtree_isomorphic(d.xtree, xt)
        assert verify_defined_tree(cs, d.xtree)
        assert derive(cs, d.xtree)[0].edge_set == d.triangulation.graph.edge_set
        o = oracle_defines(cs)
        assert o.count == 1 and xtree_isomorphic(o.trees[0], xt)
        s = is_maximal_defining_subset(cs, range(len(cs.characters)), cap=None)
        assert s.is_maximal_defining
        assert [sub for sub, _ in find_maximal_defining_subsets(cs, cap=None)] == [
            frozenset(range(len(cs.characters)))
        ]


def _oracle_maximal_defining(cs: CharacterSet) -> list[frozenset]:
    shown = [s for _, s in oracle_displayed_sets(cs)]
    out = []
    for k in range(len(cs.characters) + 1):
        for sub in itertools.combinations(range(len(cs.characters)), k):
            sub = frozenset(sub)
            over = [s for s in shown if sub <= s]
            if len(over) == 1 and over[0] == sub:
                out.append(sub)
    return out


def test_planted_plus_conflict_matches_oracle():
    rng = random.Random(83)
    proper_hits = 0
    for _ in range(30):
        cs, xt = planted_instance(rng, rng.randint(3, 5))
        taxa = cs.taxa.taxa
        while True:
            owner = [rng.randrange(2) for _ in taxa]
            if len(set(owner)) == 2:
                break
        extra = PartialCharacter("z", tuple(frozenset(t for t, o in zip(taxa, owner) if o == k) for k in (0, 1)))
        cs = CharacterSet(cs.taxa, cs.characters + (extra,))
        got = [sub for sub, _ in find_maximal_defining_subsets(cs, cap=None)]
        truth = _oracle_maximal_defining(cs)
        assert sorted(got, key=sorted) == sorted(truth, key=sorted)
        proper_hits += any(len(s) < len(cs.characters) for s in truth)
        for sub, v in find_maximal_defining_subsets(cs, cap=None):
            assert displayed_characters(v.xtree, cs) == sub
    assert proper_hits > 0


def test_random_agreement_with_oracle():
    rng = random.Random(89)
    for _ in range(120):
        cs = random_character_set(rng)
        shown = [(x, s) for x, s in oracle_displayed_sets(cs)]
        full = frozenset(range(len(cs.characters)))
        hits = [x for x, s in shown if s == full]
        c = is_compatible(cs, cap=None)
        assert c.compatible == bool(hits)
        if c.compatible:
            assert is_perfect_phylogeny(c.witness_xtree, cs)
        d = defines_unique(cs, cap=None)
        assert d.defines == (len(hits) == 1)
        if len(hits) == 1:
            assert xtree_isomorphic(d.xtree, hits[0])
            assert verify_defined_tree(cs, hits[0])
        m = max_compatible_subsets(cs, cap=None)
        best = max(len(s) for _, s in shown)
        assert m.size == best
        assert set(m.subsets) == {s for _, s in shown if len(s) == best}
