"""Command-line front end: compile, table, check, readings.

Exit codes: 0 success, 1 violations or unmatched bases under ``--strict``,
2 parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .catalog import Catalog, builtin_catalog, parse_catalog
from .errors import IncompleteDefault, SemdbError
from .plex import Lexicon, parse_lexicon_source
from .scope import build_scope_graph, build_scoped_tree, default_plugging, enumerate_pluggings
from .trafo import emit_outputs, parse_rules, shipped_rules
from .validate import PatternIndex, parse_aliases, shipped_aliases, validate
from .vit import iter_vits

COMMANDS = ("compile", "table", "check", "readings")
_DEFAULT_RULES = {"compile": "semlex", "table": "table"}


@dataclass
class RunConfig:
    command: str
    lexicon_path: Path | None = None
    rules_path: Path | None = None
    vit_path: Path | None = None
    alias_path: Path | None = None
    catalog_path: Path | None = None
    strict: bool = False
    output_path: Path | None = None
    format: str = "text"
    trees: bool = False


class UsageError(SemdbError):
    pass


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _lexicon(cfg: RunConfig) -> Lexicon:
    if cfg.lexicon_path is None:
        text = resources.files("semdb.data").joinpath("demo.plex").read_text(encoding="utf-8")
        return parse_lexicon_source(text, "demo.plex")
    return parse_lexicon_source(_read(cfg.lexicon_path), str(cfg.lexicon_path))


def _catalog(cfg: RunConfig) -> Catalog:
    if cfg.catalog_path is None:
        return builtin_catalog()
    return parse_catalog(_read(cfg.catalog_path), str(cfg.catalog_path))


def _emit(cfg: RunConfig, out: list[str], err: list[str]) -> int:
    if cfg.rules_path is None:
        rules = shipped_rules(_DEFAULT_RULES[cfg.command])
    else:
        rules = parse_rules(_read(cfg.rules_path), str(cfg.rules_path))
    text, warnings = emit_outputs(_lexicon(cfg), rules)
    out.append(text)
    err.extend(f"warning: {w}" for w in warnings)
    return 1 if warnings and cfg.strict else 0


def _check(cfg: RunConfig, out: list[str], err: list[str]) -> int:
    if cfg.vit_path is None:
        raise UsageError("check needs --vits PATH")
    aliases = shipped_aliases() if cfg.alias_path is None else parse_aliases(_read(cfg.alias_path), str(cfg.alias_path))
    index = PatternIndex.build(_lexicon(cfg), _catalog(cfg))
    status = 0
    records = []
    for line, item in iter_vits(_read(cfg.vit_path), str(cfg.vit_path)):
        if isinstance(item, SemdbError):
            err.append(f"{cfg.vit_path}:{line}: {item}")
            status = 2
            continue
        violations = validate(item, index, aliases, strict=cfg.strict)
        if violations and cfg.strict and status == 0:
            status = 1
        for v in violations:
            if cfg.format == "json":
                records.append({"vit": item.utterance_id, **v.to_dict()})
            else:
                out.append(f"{v}\n")
    if cfg.format == "json":
        out.append(json.dumps(records, indent=2) + "\n")
    return status


def _readings(cfg: RunConfig, out: list[str], err: list[str]) -> int:
    if cfg.vit_path is None:
        raise UsageError("readings needs --vits PATH")
    catalog = _catalog(cfg)
    index = PatternIndex.build(_lexicon(cfg), catalog)
    status = 0
    for line, item in iter_vits(_read(cfg.vit_path), str(cfg.vit_path)):
        if isinstance(item, SemdbError):
            err.append(f"{cfg.vit_path}:{line}: {item}")
            status = 2
            continue
        try:
            graph = build_scope_graph(item, catalog, index)
            pluggings = enumerate_pluggings(graph)
        except SemdbError as exc:
            err.append(f"{cfg.vit_path}:{line}: {item.utterance_id}: {exc}")
            status = 2
            continue
        out.append(f"% {item.utterance_id}: {len(pluggings)} reading{'s' if len(pluggings) != 1 else ''}\n")
        for p in pluggings:
            out.append(f"{p or '(empty)'}\n")
            if cfg.trees:
                out.append(build_scoped_tree(item, graph, p).render() + "\n")
        try:
            default, admissible = default_plugging(item, graph)
        except IncompleteDefault as exc:
            out.append(f"% default: incomplete ({exc})\n")
            admissible = False
        else:
            verdict = "admissible" if admissible else "not admissible"
            out.append(f"% default: {default or '(empty)'} {verdict}\n")
        if not admissible and cfg.strict and status == 0:
            status = 1
    return status


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out: list[str] = []
    err: list[str] = []
    try:
        if cfg.command in _DEFAULT_RULES:
            status = _emit(cfg, out, err)
        elif cfg.command == "check":
            status = _check(cfg, out, err)
        elif cfg.command == "readings":
            status = _readings(cfg, out, err)
        else:
            raise UsageError(f"unknown command {cfg.command!r}")
    except SemdbError as exc:
        for line in err:
            print(line, file=stderr)
        print(f"semdb: error: {exc}", file=stderr)
        return 2
    text = "".join(out)
    if cfg.output_path is None:
        stdout.write(text)
    else:
        cfg.output_path.write_text(text, encoding="utf-8")
    for line in err:
        print(line, file=stderr)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semdb", description="Semantic database toolchain.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "compile": "compile the semantic lexicon (sem_lex macros)",
        "table": "emit the table of lemmata",
        "check": "validate VITs against the database",
        "readings": "enumerate the scope readings of VITs",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--lexicon", type=Path, help="lexicon source (default: shipped demo lexicon)")
        p.add_argument("--out", type=Path, help="write output here instead of stdout")
        p.add_argument("--strict", action="store_true", help="treat warnings and violations as failures")
        if name in _DEFAULT_RULES:
            p.add_argument("--rules", type=Path, help="rule file (default: shipped rules for this command)")
        else:
            p.add_argument("--vits", type=Path, required=True, help="file with one or more VITs")
            p.add_argument("--catalog", type=Path, help="semantic class catalog (default: builtin)")
        if name == "check":
            p.add_argument("--aliases", type=Path, help="sort alias table (default: shipped)")
            p.add_argument("--format", choices=("text", "json"), default="text")
        if name == "readings":
            p.add_argument("--trees", action="store_true", help="also print each reading as a scoped tree")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        lexicon_path=args.lexicon,
        rules_path=getattr(args, "rules", None),
        vit_path=getattr(args, "vits", None),
        alias_path=getattr(args, "aliases", None),
        catalog_path=getattr(args, "catalog", None),
        strict=args.strict,
        output_path=args.out,
        format=getattr(args, "format", "text"),
        trees=getattr(args, "trees", False),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
