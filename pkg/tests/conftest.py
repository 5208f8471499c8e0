import pytest
from hypothesis import settings

from perfectphylo.characters import parse_character_set
from perfectphylo.phylo import XTree

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

EXAMPLE_TEXT = """\
taxa: a b c d e
chi1: a b | c d
chi2: a c | b d e
chi3: a b | d e
"""

# internal nodes u, v, w; v carries the pendant edge to c
U, V, W = 0, 1, 2
EXAMPLE_NODES = {"u": U, "v": V, "w": W, "a": 3, "b": 4, "c": 5, "d": 6, "e": 7}
EXAMPLE_EDGES = ((U, 3), (U, 4), (U, V), (V, 5), (V, W), (W, 6), (W, 7))


@pytest.fixture
def example():
    return parse_character_set(EXAMPLE_TEXT)


@pytest.fixture
def example_tree():
    phi = {t: EXAMPLE_NODES[t] for t in "abcde"}
    return XTree(tuple(range(8)), EXAMPLE_EDGES, phi)


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "example.txt"
    p.write_text(EXAMPLE_TEXT)
    return p
