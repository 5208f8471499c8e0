"""Line-oriented text reports for verdicts.

Every line is ``key: value``.  Keys appear in a fixed order per report kind;
list values are joined with ``", "``; nested evidence uses dotted keys such
as ``evidence.leafage``.
"""

from __future__ import annotations

from typing import Any, Iterable

from .characters import CharacterSet
from .decide import CompatVerdict, DefinesVerdict, MaxCompatible, OracleResult, SubsetVerdict
from .phylo import to_newick
from .triangulation import Triangulation


def _value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ", ".join(_value(x) for x in v)
    return str(v)


def render(pairs: Iterable[tuple[str, Any]]) -> str:
    return "".join(f"{k}: {_value(v)}\n" for k, v in pairs)


def _fill(t: Triangulation) -> list[str]:
    g = t.base
    return [f"{g.label(u)}~{g.label(v)}" for u, v in t.sorted_fill]


def _evidence(evidence: dict[str, Any]) -> list[tuple[str, Any]]:
    return [(f"evidence.{k}", evidence[k]) for k in sorted(evidence)]


def compat_report(cs: CharacterSet, v: CompatVerdict) -> str:
    pairs: list[tuple[str, Any]] = [
        ("command", "compat"),
        ("characters", [c.name for c in cs.characters]),
        ("compatible", v.compatible),
    ]
    if v.compatible:
        pairs.append(("witness_fill", _fill(v.witness_triangulation)))
        pairs.append(("witness_newick", to_newick(v.witness_xtree)))
    else:
        pairs.append(("minimal_triangulations", len(v.broken)))
        for i, broken in enumerate(v.broken):
            pairs.append((f"obstruction.{i}.broken", cs.names(broken)))
    return render(pairs)


def defines_report(cs: CharacterSet, v: DefinesVerdict) -> str:
    pairs: list[tuple[str, Any]] = [
        ("command", "defines"),
        ("characters", [c.name for c in cs.characters]),
        ("defines", v.defines),
    ]
    if v.defines:
        pairs.append(("newick", to_newick(v.xtree)))
    else:
        pairs.append(("failed_condition", v.failed_condition))
        pairs += _evidence(v.evidence)
    if v.triangulation is not None:
        pairs.append(("triangulation_fill", _fill(v.triangulation)))
    return render(pairs)


def max_compat_report(cs: CharacterSet, r: MaxCompatible) -> str:
    pairs: list[tuple[str, Any]] = [("command", "max-compat"), ("size", r.size), ("subsets", len(r.subsets))]
    for i, (sub, t) in enumerate(zip(r.subsets, r.witnesses)):
        pairs.append((f"subset.{i}", cs.names(sub)))
        pairs.append((f"subset.{i}.fill", _fill(t)))
    return render(pairs)


def subset_report(cs: CharacterSet, v: SubsetVerdict, prefix: str = "") -> list[tuple[str, Any]]:
    pairs: list[tuple[str, Any]] = [
        (prefix + "subset", cs.names(v.subset)),
        (prefix + "maximal_defining", v.is_maximal_defining),
        (prefix + "displayed_match_unique", v.displayed_match_unique),
    ]
    if v.is_maximal_defining:
        pairs.append((prefix + "newick", to_newick(v.xtree)))
    else:
        pairs.append((prefix + "failed_condition", v.failed_condition))
        pairs += [(prefix + k, x) for k, x in _evidence(v.evidence)]
    return pairs


def maximal_defining_report(cs: CharacterSet, verdicts: list[SubsetVerdict], checked: bool) -> str:
    pairs: list[tuple[str, Any]] = [("command", "maximal-defining")]
    if checked:
        pairs += subset_report(cs, verdicts[0])
    else:
        pairs.append(("found", len(verdicts)))
        for i, v in enumerate(verdicts):
            pairs += subset_report(cs, v, f"result.{i}.")
    return render(pairs)


def oracle_report(cs: CharacterSet, r: OracleResult) -> str:
    pairs: list[tuple[str, Any]] = [
        ("command", "oracle"),
        ("characters", [c.name for c in cs.characters]),
        ("perfect_phylogenies", r.count),
        ("defines", r.count == 1),
    ]
    for i, xt in enumerate(r.trees):
        pairs.append((f"tree.{i}", to_newick(xt)))
    return render(pairs)
