"""Perfect phylogeny and unique perfect phylogeny via chordal graphs."""

from .characters import (
    CharacterSet,
    PartialCharacter,
    PigVertex,
    TaxonSet,
    build_pig,
    format_character_set,
    make_character_set,
    parse_character_set,
)
from .decide import (
    defines_unique,
    find_maximal_defining_subsets,
    is_compatible,
    is_maximal_defining_subset,
    max_compatible_subsets,
    oracle_defines,
)
from .graph import CliqueTreeRep, LabeledGraph, MinimalSeparator
from .phylo import XTree, derive, induce_xtrees, parse_newick, to_newick, xtree_isomorphic
from .triangulation import Triangulation, enumerate_minimal_triangulations

__all__ = [
    "CharacterSet",
    "CliqueTreeRep",
    "LabeledGraph",
    "MinimalSeparator",
    "PartialCharacter",
    "PigVertex",
    "TaxonSet",
    "Triangulation",
    "XTree",
    "build_pig",
    "defines_unique",
    "derive",
    "enumerate_minimal_triangulations",
    "find_maximal_defining_subsets",
    "format_character_set",
    "induce_xtrees",
    "is_compatible",
    "is_maximal_defining_subset",
    "make_character_set",
    "max_compatible_subsets",
    "oracle_defines",
    "parse_character_set",
    "parse_newick",
    "to_newick",
    "xtree_isomorphic",
]
