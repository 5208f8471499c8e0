import random

import pytest

from perfectphylo.characters import build_pig, parse_character_set
from perfectphylo.errors import MissingLabels, NotChordal, TooLarge
from perfectphylo.graph import (
    LabeledGraph,
    clique_tree,
    delete_vertices,
    is_chordal,
    minimal_separators_bruteforce,
)
from perfectphylo.triangulation import (
    Triangulation,
    display_report,
    enumerate_minimal_triangulations,
    format_triangulation,
    is_minimal_triangulation,
    is_proper,
    parse_triangulation,
    triangulation_to_dot,
)

import oracles
from samples import cycle, random_character_set, random_graph

AC2, BDE2 = 2, 3  # pig(C) vertex numbers for (ac, chi2) and (bde, chi2)


def test_triangulation_rejects_bad_fill():
    with pytest.raises(ValueError):
        Triangulation(cycle(4), frozenset({(0, 1)}))
    with pytest.raises(ValueError):
        Triangulation(cycle(4), frozenset({(0, 9)}))
    assert Triangulation(cycle(4), frozenset({(2, 0)})).fill == {(0, 2)}


def test_minimality_on_four_cycle():
    assert is_minimal_triangulation(Triangulation(cycle(4), frozenset({(0, 2)})))
    assert not is_minimal_triangulation(Triangulation(cycle(4), frozenset({(0, 2), (1, 3)})))
    with pytest.raises(NotChordal):
        is_minimal_triangulation(Triangulation(cycle(4), frozenset()))


def test_example_fill_is_minimal_and_breaks_chi2(example):
    t = Triangulation(build_pig(example), frozenset({(AC2, BDE2)}))
    assert is_minimal_triangulation(t)
    assert not is_proper(t)
    report = display_report(t)
    assert report.displayed == {0, 2} and report.broken == {1}


def test_example_minimal_triangulations(example):
    g = build_pig(example)
    tris = enumerate_minimal_triangulations(g)
    assert {t.fill for t in tris} == oracles.minimal_fill_sets(g)
    assert [t.sorted_fill for t in tris] == [((0, 1), (1, 4)), ((AC2, BDE2),)]
    assert [display_report(t).broken for t in tris] == [{0}, {1}]
    assert not any(is_proper(t) for t in tris)


def test_enumeration_counts():
    assert len(enumerate_minimal_triangulations(cycle(4))) == 2
    assert len(enumerate_minimal_triangulations(cycle(5))) == 5
    k = LabeledGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert [t.fill for t in enumerate_minimal_triangulations(k)] == [frozenset()]
    assert [t.fill for t in enumerate_minimal_triangulations(LabeledGraph(0, ()))] == [frozenset()]


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        enumerate_minimal_triangulations(cycle(8), cap=10)
    assert len(enumerate_minimal_triangulations(cycle(6), cap=None)) == 14


def test_enumeration_matches_fill_subset_scan():
    rng = random.Random(41)
    for _ in range(120):
        g = random_graph(rng, max_non_edges=10)
        tris = enumerate_minimal_triangulations(g)
        fills = [t.fill for t in tris]
        assert len(set(fills)) == len(fills)
        assert set(fills) == oracles.minimal_fill_sets(g)
        assert [t.sorted_fill for t in tris] == sorted(t.sorted_fill for t in tris)


def test_single_edge_minimality_matches_subset_check():
    rng = random.Random(43)
    for _ in range(60):
        g = random_graph(rng, max_non_edges=8)
        non_edges = g.non_edges()
        for _ in range(4):
            fill = frozenset(e for e in non_edges if rng.random() < 0.5)
            t = Triangulation(g, fill)
            if is_chordal(t.graph):
                assert is_minimal_triangulation(t) == oracles.is_minimal_by_subsets(g, fill)


def test_fill_edges_lie_in_minimal_separators():
    rng = random.Random(47)
    for _ in range(80):
        g = random_graph(rng, max_non_edges=10)
        for t in enumerate_minimal_triangulations(g):
            assert is_minimal_triangulation(t)
            seps = [s.vertices for s in minimal_separators_bruteforce(t.graph)]
            for u, v in t.fill:
                assert any({u, v} <= s for s in seps)


def test_proper_triangulation_exists_iff_proper_minimal_one():
    rng = random.Random(53)
    for _ in range(40):
        cs = random_character_set(rng, max_taxa=4, max_chars=3)
        g = build_pig(cs)
        if len(g.non_edges()) > 10:
            continue
        any_proper = any(
            is_proper(Triangulation(g, fill)) and is_chordal(g.add_edges(fill))
            for fill in _all_fills(g)
        )
        assert any_proper == any(is_proper(t) for t in enumerate_minimal_triangulations(g))


def _all_fills(g):
    non_edges = g.non_edges()
    for mask in range(1 << len(non_edges)):
        yield frozenset(e for i, e in enumerate(non_edges) if mask >> i & 1)


def test_restriction_to_subsets():
    rng = random.Random(59)
    for _ in range(40):
        cs = random_character_set(rng, max_taxa=4, max_chars=3)
        g = build_pig(cs)
        full = enumerate_minimal_triangulations(g, cap=None)
        keep = sorted(rng.sample(range(len(cs.characters)), rng.randint(0, len(cs.characters))))
        gone = [k for k, v in enumerate(cs.vertices) if v.character_index not in keep]
        restricted = {delete_vertices(t.graph, gone).edge_set for t in full}
        for t in enumerate_minimal_triangulations(build_pig(cs.subset(keep)), cap=None):
            assert t.graph.edge_set in restricted


def test_properness_and_display():
    cs = parse_character_set("x: a | b\ny: a | b\n")
    g = build_pig(cs)  # x cells 0,1 and y cells 2,3; edges 0-2 and 1-3
    assert is_proper(Triangulation(g, frozenset()))
    assert display_report(Triangulation(g, frozenset())).displayed == {0, 1}
    assert is_proper(Triangulation(g, frozenset({(0, 3)})))
    t = Triangulation(g, frozenset({(0, 1), (2, 3)}))
    assert display_report(t).broken == {0, 1} and display_report(t).displayed == set()
    with pytest.raises(MissingLabels):
        is_proper(Triangulation(cycle(4), frozenset({(0, 2)})))
    with pytest.raises(MissingLabels):
        display_report(Triangulation(cycle(4), frozenset({(0, 2)})))


def test_text_round_trip(example):
    t = Triangulation(build_pig(example), frozenset({(AC2, BDE2)}))
    text = format_triangulation(t)
    assert text.splitlines()[0] == "vertices 6"
    assert "vertex 2 a,c/chi2" in text and text.rstrip().endswith("fill 2 3")
    back, names = parse_triangulation(text)
    assert back.base.edge_set == t.base.edge_set and back.fill == t.fill
    assert names[3] == "b,d,e/chi2"
    with pytest.raises(ValueError):
        parse_triangulation("bogus 1\n")


def test_dot_marks_fill_dashed(example):
    t = Triangulation(build_pig(example), frozenset({(AC2, BDE2)}))
    dot = triangulation_to_dot(t)
    assert dot.count("--") == 10
    assert "v2 -- v3 [style=dashed];" in dot
    assert clique_tree(t.graph).is_clique_tree
