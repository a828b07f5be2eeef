"""Abstract semantic classes and the predicate patterns they contribute.

Argument kinds are written as comma-separated codes, the way predschemes are
spelled in the lexicon (``'L,I,I1'``).  Only the leading letter matters:

    L  label            I  instance          H  hole
    R  restrictor label N  cardinality (integer)
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import CatalogError, MissingRole, SourceSyntaxError, UnknownSemClass
from .plex import ExpandedEntry, Lit
from .terms import unquote

ROLE_NAMES = frozenset({"arg1", "arg2", "arg3"})


class ArgKind(enum.Enum):
    LABEL = "L"
    INSTANCE = "I"
    HOLE = "H"
    RESTRICTOR_LABEL = "R"
    CARDINALITY = "N"

    @property
    def is_label(self) -> bool:
        return self in (ArgKind.LABEL, ArgKind.RESTRICTOR_LABEL)


def parse_kinds(spec: str) -> tuple[ArgKind, ...]:
    """``'L,I,I1'`` -> ``(LABEL, INSTANCE, INSTANCE)``."""
    kinds = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            raise ValueError(f"empty argument in kind string {spec!r}")
        try:
            kinds.append(ArgKind(part[0]))
        except ValueError:
            raise ValueError(f"unknown argument kind {part!r} in {spec!r}") from None
    return tuple(kinds)


def format_kinds(kinds: tuple[ArgKind, ...]) -> str:
    return ",".join(k.value for k in kinds)


@dataclass(frozen=True)
class ExtraPredicate:
    """A non-head predicate of a scheme.

    When ``role`` is set, ``name`` is the lexicon feature (``role_a1``) whose
    value supplies the predicate name; otherwise ``name`` is the predicate.
    """

    name: str
    kinds: tuple[ArgKind, ...]
    role: bool = False


@dataclass(frozen=True)
class PredScheme:
    head_kinds: tuple[ArgKind, ...]
    extras: tuple[ExtraPredicate, ...] = ()
    head_name: str | None = None  # None: taken from the entry's predname

    def __post_init__(self) -> None:
        for kinds in [self.head_kinds, *(e.kinds for e in self.extras)]:
            if not kinds or kinds[0] is not ArgKind.LABEL:
                raise ValueError("every predscheme template starts with a label")


@dataclass(frozen=True)
class SemanticClass:
    name: str
    predscheme: PredScheme

    @property
    def role_slots(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.predscheme.extras if e.role)


@dataclass(frozen=True)
class PredPattern:
    predicate_name: str
    arg_kinds: tuple[ArgKind, ...]
    source_base: str | None = None

    @property
    def arity(self) -> int:
        return len(self.arg_kinds)

    def __str__(self) -> str:
        return f"{self.predicate_name}({format_kinds(self.arg_kinds)})"


@dataclass(frozen=True)
class Catalog:
    classes: dict[str, SemanticClass] = field(default_factory=dict)
    closed_class_patterns: dict[str, PredPattern] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clash = set(self.classes) & set(self.closed_class_patterns)
        if clash:
            raise CatalogError(f"names used both as class and closed-class predicate: {sorted(clash)}")


def _tl(spec: str) -> tuple[ArgKind, ...]:
    return parse_kinds(spec)


def builtin_catalog() -> Catalog:
    classes = [
        SemanticClass("transitive_verb", PredScheme(
            _tl("L,I"),
            (ExtraPredicate("role_a1", _tl("L,I,I1"), role=True),
             ExtraPredicate("role_a2", _tl("L,I,I2"), role=True)))),
        SemanticClass("common_noun", PredScheme(_tl("L,I"))),
        SemanticClass("det_quant", PredScheme(_tl("L,I,H"))),
        SemanticClass("demonstrative", PredScheme(_tl("L,I,L1"), head_name="demonstrative")),
        SemanticClass("wh_question", PredScheme(
            _tl("L,I,H"),
            (ExtraPredicate("tloc", _tl("L2,I2,I1")),
             ExtraPredicate("time", _tl("L1,I1"))),
            head_name="whq")),
        SemanticClass("card_quantifier", PredScheme(_tl("L,I,R,H,N"))),
    ]
    closed = [
        PredPattern("decl", _tl("L,H")),
        PredPattern("pron", _tl("L,I")),
        PredPattern("ein_card_qua", _tl("L,I,R,H,N")),
    ]
    return Catalog({c.name: c for c in classes}, {p.predicate_name: p for p in closed})


def predscheme_instances(entry: ExpandedEntry, catalog: Catalog) -> list[PredPattern]:
    """Instantiate the entry's semantic-class scheme with its own names."""
    base = entry.base_name.text
    semclass = entry.get("semclass")
    if not isinstance(semclass, Lit) or semclass.text not in catalog.classes:
        raise UnknownSemClass(semclass.text if isinstance(semclass, Lit) else None, base)
    scheme = catalog.classes[semclass.text].predscheme
    head = scheme.head_name
    if head is None:
        predname = entry.get("predname")
        if not isinstance(predname, Lit):
            raise CatalogError(f"base {base!r} has no literal predname")
        head = predname.text
    patterns = [PredPattern(head, scheme.head_kinds, base)]
    for extra in scheme.extras:
        name = extra.name
        if extra.role:
            value = entry.get(extra.name)
            if not isinstance(value, Lit):
                raise MissingRole(extra.name, base)
            name = value.text
        patterns.append(PredPattern(name, extra.kinds, base))
    return patterns


# -- catalog files ---------------------------------------------------------
#
#   semclass transitive_verb : 'L,I' & role role_a1 'L,I,I1' & role role_a2 'L,I,I2' .
#   semclass wh_question : whq 'L,I,H' & pred tloc 'L2,I2,I1' & pred time 'L1,I1' .
#   closed decl 'L,H' .

_TOKEN = re.compile(r"(?P<ws>\s+|%[^\n]*)|(?P<quoted>'(?:[^'\\]|\\.)*')|(?P<name>[a-z][A-Za-z0-9_]*)|(?P<op>[:&.])")


def _tokens(text: str, source: str):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SourceSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source)
        if m.lastgroup != "ws":
            yield m.lastgroup, m.group(), line, pos - line_start + 1
        if "\n" in m.group():
            line += m.group().count("\n")
            line_start = pos + m.group().rfind("\n") + 1
        pos = m.end()
    yield "eof", "", line, pos - line_start + 1


def parse_catalog(text: str, source: str = "<catalog>") -> Catalog:
    toks = list(_tokens(text, source))
    i = 0

    def fail(msg: str):
        _, _, line, col = toks[i]
        return SourceSyntaxError(msg, line, col, source)

    def take(kind: str, value: str | None = None) -> str:
        nonlocal i
        k, t, _, _ = toks[i]
        if k != kind or (value is not None and t != value):
            raise fail(f"expected {value or kind}, found {t or 'end of input'!r}")
        i += 1
        return t

    def kinds() -> tuple[ArgKind, ...]:
        raw = take("quoted")
        try:
            return parse_kinds(unquote(raw[1:-1]))
        except ValueError as exc:
            i_back = i - 1
            _, _, line, col = toks[i_back]
            raise SourceSyntaxError(str(exc), line, col, source) from None

    classes: dict[str, SemanticClass] = {}
    closed: dict[str, PredPattern] = {}
    while toks[i][0] != "eof":
        keyword = take("name")
        if keyword == "closed":
            name = take("name")
            closed[name] = PredPattern(name, kinds())
            take("op", ".")
        elif keyword == "semclass":
            name = take("name")
            take("op", ":")
            head_name = take("name") if toks[i][0] == "name" else None
            head = kinds()
            extras = []
            while toks[i][1] == "&":
                i += 1
                what = take("name")
                if what not in ("role", "pred"):
                    raise fail(f"expected 'role' or 'pred', found {what!r}")
                extras.append(ExtraPredicate(take("name"), kinds(), role=what == "role"))
            take("op", ".")
            if name in classes:
                raise fail(f"duplicate semantic class {name!r}")
            try:
                classes[name] = SemanticClass(name, PredScheme(head, tuple(extras), head_name))
            except ValueError as exc:
                raise fail(f"{name}: {exc}") from None
        else:
            raise fail(f"expected 'semclass' or 'closed', found {keyword!r}")
    return Catalog(classes, closed)


def format_catalog(catalog: Catalog) -> str:
    lines = []
    for cls in catalog.classes.values():
        ps = cls.predscheme
        head = f"{ps.head_name} " if ps.head_name else ""
        parts = [f"{head}'{format_kinds(ps.head_kinds)}'"]
        for e in ps.extras:
            parts.append(f"{'role' if e.role else 'pred'} {e.name} '{format_kinds(e.kinds)}'")
        lines.append(f"semclass {cls.name} : " + " & ".join(parts) + " .")
    for p in catalog.closed_class_patterns.values():
        lines.append(f"closed {p.predicate_name} '{format_kinds(p.arg_kinds)}' .")
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def shipped_catalog_text() -> str:
    return resources.files("semdb.data").joinpath("catalog.txt").read_text(encoding="utf-8")
