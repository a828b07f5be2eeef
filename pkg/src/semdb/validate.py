"""Correctness check of VITs against the semantic database."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .catalog import ROLE_NAMES, ArgKind, Catalog, PredPattern, predscheme_instances
from .errors import SourceSyntaxError, UnknownSemClass
from .plex import Lexicon, Lit, ValueExpr, check_value, expand_all
from .terms import Atom, Compound, ListTerm, Term, format_term
from .vit import VIT, label_of


class Check(str, enum.Enum):
    V1 = "V1_ArityShape"
    V2 = "V2_UndefinedLabel"
    V3 = "V3_RoleAttachment"
    V4 = "V4_RoleDeclaration"
    V5 = "V5_SortMismatch"
    V6 = "V6_ScopeReference"
    V7 = "V7_MainLabel"
    V8 = "V8_GroupShape"
    V9 = "V9_SyntaxVocabulary"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Violation:
    code: Check
    location: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code.value}\t{self.location}\t{self.detail}"

    def to_dict(self) -> dict[str, str]:
        return {"code": self.code.value, "location": self.location, "detail": self.detail}


VOCABULARY: dict[str, frozenset[str]] = {
    "num": frozenset({"sg", "pl"}),
    "pers": frozenset({"1", "2", "3"}),
    "gend": frozenset({"masc", "fem", "neut"}),
    "cas": frozenset({"nom", "acc", "dat", "gen"}),
    "ta_mood": frozenset({"ind", "conj", "imp"}),
    "ta_tense": frozenset({"pres", "past", "fut"}),
    "pros_mood": frozenset({"decl", "quest", "imp"}),
}


def convention_kind(term: Term) -> ArgKind | None:
    """Classify an argument by identifier convention (l…, i…, h…, integer)."""
    if isinstance(term, bool):
        return None
    if isinstance(term, int):
        return ArgKind.CARDINALITY
    if isinstance(term, Atom):
        return {"l": ArgKind.LABEL, "i": ArgKind.INSTANCE, "h": ArgKind.HOLE}.get(term.text[0])
    return None


def kind_fits(expected: ArgKind, term: Term) -> bool:
    seen = convention_kind(term)
    if expected.is_label:
        return seen is ArgKind.LABEL
    return seen is expected


@dataclass(frozen=True)
class PatternIndex:
    by_name: dict[str, tuple[PredPattern, ...]] = field(default_factory=dict)
    declared_roles: dict[str, tuple[frozenset[str], ...]] = field(default_factory=dict)
    declared_sorts: dict[str, tuple[ValueExpr, ...]] = field(default_factory=dict)

    @classmethod
    def build(cls, lexicon: Lexicon, catalog: Catalog) -> "PatternIndex":
        """Union of every base's predicate patterns and the closed-class ones.

        Bases without a semantic class contribute nothing.
        """
        by_name: dict[str, list[PredPattern]] = {}
        roles: dict[str, list[frozenset[str]]] = {}
        sorts: dict[str, list[ValueExpr]] = {}

        def add(p: PredPattern) -> None:
            known = by_name.setdefault(p.predicate_name, [])
            if all((k.arg_kinds != p.arg_kinds) for k in known):
                known.append(p)

        for entry in expand_all(lexicon):
            try:
                patterns = predscheme_instances(entry, catalog)
            except UnknownSemClass:
                if isinstance(entry.get("semclass"), Lit):
                    raise
                continue
            for p in patterns:
                add(p)
            head = patterns[0].predicate_name
            role_set = frozenset(p.predicate_name for p in patterns[1:] if p.predicate_name in ROLE_NAMES)
            if role_set not in roles.setdefault(head, []):
                roles[head].append(role_set)
            sort = entry.get("sort_of_inst")
            if sort not in sorts.setdefault(head, []):
                sorts[head].append(sort)
        for p in catalog.closed_class_patterns.values():
            add(p)
        return cls(
            {k: tuple(v) for k, v in by_name.items()},
            {k: tuple(v) for k, v in roles.items()},
            {k: tuple(v) for k, v in sorts.items()},
        )


@dataclass(frozen=True)
class SortAliasTable:
    aliases: dict[str, frozenset[str]] = field(default_factory=dict)

    def subsumed(self, sort: str) -> frozenset[str]:
        return self.aliases.get(sort, frozenset()) | {sort}


_ALIAS = re.compile(r"sort\s+([a-z]\w*)\s+subsumes\s+([a-z]\w*(?:\s*,\s*[a-z]\w*)*)\s*\.")


def parse_aliases(text: str, source: str = "<aliases>") -> SortAliasTable:
    """Parse ``sort S subsumes a, b .`` statements; ``%`` starts a comment."""
    aliases: dict[str, set[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        m = _ALIAS.fullmatch(line)
        if m is None:
            raise SourceSyntaxError("expected 'sort NAME subsumes NAME, ... .'", lineno, 1, source)
        aliases.setdefault(m.group(1), set()).update(s.strip() for s in m.group(2).split(","))
    return SortAliasTable({k: frozenset(v) for k, v in aliases.items()})


@lru_cache(maxsize=None)
def shipped_aliases() -> SortAliasTable:
    text = resources.files("semdb.data").joinpath("sorts.alias").read_text(encoding="utf-8")
    return parse_aliases(text, "sorts.alias")


def _sort_atoms(term: Term) -> list[str] | None:
    if isinstance(term, Atom):
        return [term.text]
    if isinstance(term, Compound) and term.functor == "&" and all(isinstance(a, Atom) for a in term.args):
        return [a.text for a in term.args]  # type: ignore[union-attr]
    return None


def _where(pred: Compound) -> str:
    first = pred.args[0]
    return f"{pred.functor}/{format_term(first)}"


def validate(vit: VIT, index: PatternIndex, aliases: SortAliasTable, strict: bool = False) -> list[Violation]:
    """All violations of ``vit``, in slot order and then source order.

    With ``strict``, semantics predicates unknown to the index are V1 errors.
    """
    out: list[Violation] = []
    sem = vit.semantics
    sem_labels = {label_of(p) for p in sem}
    group_labels = {format_term(g.args[0]) for g in vit.groups if g.functor == "sem_group" and g.args}
    defined_labels = sem_labels | group_labels
    sem_args = {format_term(a) for p in sem for a in p.args}

    def kinds_for(pred: Compound) -> tuple[ArgKind, ...] | None:
        for pattern in index.by_name.get(pred.functor, ()):
            if pattern.arity == pred.arity:
                return pattern.arg_kinds
        return None

    holes: list[str] = []
    for pred in sem:
        kinds = kinds_for(pred)
        patterns = index.by_name.get(pred.functor)
        # V1
        if patterns is None:
            if strict:
                out.append(Violation(Check.V1, _where(pred), f"unknown predicate {pred.functor}/{pred.arity}"))
        elif kinds is None:
            expected = " or ".join(str(p) for p in patterns)
            out.append(Violation(Check.V1, _where(pred), f"arity {pred.arity}, expected {expected}"))
        else:
            bad = [i for i, (k, a) in enumerate(zip(kinds, pred.args)) if not kind_fits(k, a)]
            if bad:
                shown = ", ".join(f"argument {i + 1} {format_term(pred.args[i])} is not a {kinds[i].name.lower()}" for i in bad)
                out.append(Violation(Check.V1, _where(pred), shown))
        # V2
        for i, arg in enumerate(pred.args[1:], 1):
            is_label = kinds[i].is_label if kinds else convention_kind(arg) is ArgKind.LABEL
            is_hole = kinds[i] is ArgKind.HOLE if kinds else convention_kind(arg) is ArgKind.HOLE
            if is_hole and isinstance(arg, Atom):
                holes.append(arg.text)
            if is_label and format_term(arg) not in defined_labels:
                out.append(Violation(Check.V2, _where(pred), f"label {format_term(arg)} is not defined"))
        # V3
        if pred.functor in ROLE_NAMES:
            label = label_of(pred)
            inst = pred.args[1] if pred.arity > 1 else None
            if not any(h.functor not in ROLE_NAMES and label_of(h) == label and h.arity > 1 and h.args[1] == inst
                       for h in sem):
                out.append(Violation(Check.V3, _where(pred),
                                     f"no head predicate at {label} with instance {format_term(inst) if inst is not None else '?'}"))
        # V4
        if pred.functor in index.declared_roles:
            label = label_of(pred)
            attached = frozenset(r.functor for r in sem if r.functor in ROLE_NAMES and label_of(r) == label)
            allowed = index.declared_roles[pred.functor]
            if attached not in allowed:
                want = " or ".join("{" + ",".join(sorted(s)) + "}" for s in allowed)
                out.append(Violation(Check.V4, _where(pred),
                                     f"roles {{{','.join(sorted(attached))}}}, declared {want}"))

    # V7
    if vit.main_label.text not in sem_labels:
        out.append(Violation(Check.V7, f"main:{vit.main_label.text}", "main label labels no semantics predicate"))

    # V5
    for s in vit.sorts:
        where = f"sorts:{format_term(s)}"
        if s.functor != "s_sort" or s.arity != 2:
            out.append(Violation(Check.V5, where, "expected s_sort/2"))
            continue
        inst, sort_term = s.args
        sort_atoms = _sort_atoms(sort_term)
        if format_term(inst) not in sem_args:
            out.append(Violation(Check.V5, where, f"instance {format_term(inst)} does not occur in semantics"))
            continue
        if sort_atoms is None:
            out.append(Violation(Check.V5, where, "sort must be an atom or &(...) of atoms"))
            continue
        for head in sem:
            if head.functor not in index.declared_sorts or head.arity < 2 or head.args[1] != inst:
                continue
            declared = index.declared_sorts[head.functor]
            if not any(check_value(d, Lit(Atom(sub))) for d in declared
                       for s_atom in sort_atoms for sub in aliases.subsumed(s_atom)):
                out.append(Violation(Check.V5, where, f"sort incompatible with {head.functor}"))

    def vocabulary(slot: str, preds: tuple[Compound, ...]) -> None:
        for p in preds:
            where = f"{slot}:{format_term(p)}"
            if format_term(p.args[0]) not in sem_args:
                out.append(Violation(Check.V9, where, f"{format_term(p.args[0])} does not occur in semantics"))
            vocab = VOCABULARY.get(p.functor)
            if vocab is not None and (p.arity != 2 or format_term(p.args[1]) not in vocab):
                out.append(Violation(Check.V9, where, f"value outside {{{','.join(sorted(vocab))}}}"))

    vocabulary("discourse", vit.discourse)
    vocabulary("syntax", vit.syntax)
    vocabulary("tense_aspect", vit.tense_aspect)

    # V6
    hole_set = set(holes)
    plugs: dict[str, int] = {}
    for c in vit.scope:
        if c.functor not in ("ccom_plug", "leq"):
            continue
        where = f"scope:{format_term(c)}"
        if c.arity != 2:
            out.append(Violation(Check.V6, where, f"expected {c.functor}/2"))
            continue
        for arg in c.args:
            name = format_term(arg)
            if name not in hole_set and name not in defined_labels:
                out.append(Violation(Check.V6, where, f"{name} is neither a hole nor a label"))
        if c.functor == "ccom_plug":
            hole = format_term(c.args[0])
            plugs[hole] = plugs.get(hole, 0) + 1
    for hole in dict.fromkeys(holes):
        if plugs.get(hole, 0) != 1:
            out.append(Violation(Check.V6, f"hole:{hole}", f"{plugs.get(hole, 0)} ccom_plug defaults, expected 1"))

    vocabulary("prosody", vit.prosody)

    # V8
    seen: dict[str, str] = {}
    for g in vit.groups:
        where = f"groups:{format_term(g)}"
        if g.functor != "sem_group" or g.arity != 2 or not isinstance(g.args[1], ListTerm):
            out.append(Violation(Check.V8, where, "expected sem_group(Label, [Labels])"))
            continue
        gname = format_term(g.args[0])
        for member in g.args[1].items:
            m = format_term(member)
            if m not in sem_labels:
                out.append(Violation(Check.V8, where, f"member {m} labels no semantics predicate"))
            elif m in seen:
                out.append(Violation(Check.V8, where, f"member {m} already in group {seen[m]}"))
            else:
                seen[m] = gname
    return out
