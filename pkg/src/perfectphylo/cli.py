"""Command line front end.

Exit codes: 0 affirmative verdict, 1 negative verdict, 2 usage or parse
error, 3 an exhaustive step hit its cap.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from . import decide, report
from .characters import CharacterSet, build_pig, parse_character_set
from .errors import PhyloError, TooLarge
from .graph import graph_to_dot
from .phylo import to_newick, xtree_to_dot
from .triangulation import DEFAULT_CAP, Triangulation, format_triangulation

COMMANDS = ("compat", "defines", "max-compat", "maximal-defining", "export-pig", "export-tree", "oracle")
FORMATS = ("text", "dot", "newick")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    input_path: str
    cap: int = DEFAULT_CAP
    format: str | None = None
    subset: tuple[str, ...] | None = None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfectphylo", description="Perfect phylogeny decisions on partial characters.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="character file, or - for stdin")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max non-edges of pig(C) for triangulation enumeration")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--subset", default=None, help="comma separated character names (maximal-defining)")
    return p


def _read(path: str, stdin: TextIO) -> str:
    return stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")


def _subset_indices(cs: CharacterSet, names: Sequence[str]) -> list[int]:
    return [cs.index(n) for n in names if n]


def _execute(config: CliConfig, cs: CharacterSet, out: TextIO) -> int:
    cmd, fmt, cap = config.command, config.format, config.cap
    if cmd == "export-pig":
        pig = build_pig(cs)
        if fmt in (None, "dot"):
            out.write(graph_to_dot(pig, name="pig"))
        elif fmt == "text":
            out.write(format_triangulation(Triangulation(pig, frozenset())))
        else:
            raise UsageError("export-pig supports --format dot or text")
        return 0
    if cmd == "export-tree":
        v = decide.is_compatible(cs, cap)
        if not v.compatible:
            out.write(report.compat_report(cs, v))
            return 1
        if fmt in (None, "newick"):
            out.write(to_newick(v.witness_xtree) + "\n")
        elif fmt == "dot":
            out.write(xtree_to_dot(v.witness_xtree))
        else:
            out.write(format_triangulation(v.witness_triangulation))
        return 0
    if fmt not in (None, "text", "newick"):
        raise UsageError(f"{cmd} supports --format text or newick")
    if cmd == "compat":
        v = decide.is_compatible(cs, cap)
        if fmt == "newick":
            out.write((to_newick(v.witness_xtree) if v.compatible else "") + "\n")
        else:
            out.write(report.compat_report(cs, v))
        return 0 if v.compatible else 1
    if cmd == "defines":
        d = decide.defines_unique(cs, cap)
        if fmt == "newick":
            out.write((to_newick(d.xtree) if d.defines else "") + "\n")
        else:
            out.write(report.defines_report(cs, d))
        return 0 if d.defines else 1
    if cmd == "max-compat":
        out.write(report.max_compat_report(cs, decide.max_compatible_subsets(cs, cap)))
        return 0
    if cmd == "maximal-defining":
        if config.subset is not None:
            s = decide.is_maximal_defining_subset(cs, _subset_indices(cs, config.subset), cap)
            verdicts, ok = [s], s.is_maximal_defining
        else:
            verdicts = [v for _, v in decide.find_maximal_defining_subsets(cs, cap)]
            ok = bool(verdicts)
        if fmt == "newick":
            out.write("".join(to_newick(v.xtree) + "\n" for v in verdicts if v.is_maximal_defining))
        else:
            out.write(report.maximal_defining_report(cs, verdicts, config.subset is not None))
        return 0 if ok else 1
    r = decide.oracle_defines(cs)
    if fmt == "newick":
        out.write("".join(to_newick(t) + "\n" for t in r.trees))
    else:
        out.write(report.oracle_report(cs, r))
    return 0 if r.count == 1 else 1


def run(config: CliConfig, stdin: TextIO | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    if config.cap < 0:
        err.write("error: --cap must be non-negative\n")
        return 2
    try:
        cs = parse_character_set(_read(config.input_path, stdin))
        return _execute(config, cs, out)
    except TooLarge as exc:
        err.write(f"too large: {exc}\n")
        return 3
    except (PhyloError, UsageError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    subset = None if args.subset is None else tuple(s.strip() for s in args.subset.split(","))
    config = CliConfig(args.command, args.input, args.cap, args.format, subset)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
