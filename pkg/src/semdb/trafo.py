"""First-match transformation rules over expanded lexicon entries.

Rule file syntax::

    rule sort1_trafo
       requires predname, syntax_link, sort_of_inst, usb_macro
       emits "sem_lex(Cat, ~w) short_for~n     ~w(Cat, ~w, (~w)) .~n"
       with syntax_link, usb_macro, predname, sort_of_inst .

``~w`` substitutes the next binding, ``~n`` is a line feed and ``~~`` a
literal tilde.  Bindings come from the ``with`` list (repeats allowed) or,
without one, from ``requires``.  ``@base`` and ``@class`` name the entry's
base and leaf class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Union

from .errors import HierarchyError, RuleSyntaxError, TemplateArityError
from .plex import ExpandedEntry, Lexicon, Lit, Not, Or, Top, ValueExpr, check_hierarchy, expand_all
from .terms import Atom

MISSING = "-"


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class Substitute:
    pass


@dataclass(frozen=True)
class Newline:
    pass


Segment = Union[Literal, Substitute, Newline]


@dataclass(frozen=True)
class Template:
    segments: tuple[Segment, ...]

    @property
    def arity(self) -> int:
        return sum(isinstance(s, Substitute) for s in self.segments)

    @classmethod
    def parse(cls, text: str) -> "Template":
        segments: list[Segment] = []
        buf: list[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch != "~":
                buf.append(ch)
                i += 1
                continue
            directive = text[i + 1:i + 2]
            if directive == "~":
                buf.append("~")
            elif directive in ("w", "n"):
                if buf:
                    segments.append(Literal("".join(buf)))
                    buf = []
                segments.append(Substitute() if directive == "w" else Newline())
            else:
                raise ValueError(f"unknown format directive ~{directive} at offset {i}")
            i += 2
        if buf:
            segments.append(Literal("".join(buf)))
        return cls(tuple(segments))


@dataclass(frozen=True)
class TrafoRule:
    name: str
    required_features: tuple[str, ...]
    template: Template
    bindings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.template.arity != len(self.binding_order):
            raise TemplateArityError(self.template.arity, len(self.binding_order))

    @property
    def binding_order(self) -> tuple[str, ...]:
        return self.bindings or self.required_features

    def matches(self, entry: ExpandedEntry) -> bool:
        return all(_lookup(entry, f) is not None for f in self.required_features)


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[TrafoRule, ...] = ()

    def __post_init__(self) -> None:
        names = [r.name for r in self.rules]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise ValueError(f"duplicate rule names: {sorted(dupes)}")


@dataclass(frozen=True)
class NoMatch:
    base_name: str

    def __str__(self) -> str:
        return f"no rule matches base {self.base_name!r}"


def format_binding(value: ValueExpr | Atom | str | None) -> str:
    if value is None or isinstance(value, Top):
        return MISSING
    if isinstance(value, str):
        return value
    if isinstance(value, Atom):
        return value.text
    if isinstance(value, Lit):
        return value.text
    if isinstance(value, Or):
        return ";".join(format_binding(v) for v in value.items)
    if isinstance(value, Not):
        inner = format_binding(value.operand)
        return f"~({inner})" if isinstance(value.operand, Or) else f"~{inner}"
    raise TypeError(f"cannot render {value!r}")


def render_template(template: Template, bindings: list) -> str:
    if template.arity != len(bindings):
        raise TemplateArityError(template.arity, len(bindings))
    values = iter(bindings)
    out = []
    for seg in template.segments:
        if isinstance(seg, Literal):
            out.append(seg.text)
        elif isinstance(seg, Newline):
            out.append("\n")
        else:
            out.append(format_binding(next(values)))
    return "".join(out)


def _lookup(entry: ExpandedEntry, feature: str) -> ValueExpr | Atom | str | None:
    if feature == "@base":
        return entry.base_name
    if feature == "@class":
        return entry.class_name
    value = entry.values.get(feature)
    return None if value is None or isinstance(value, Top) else value


def apply_rules(rules: RuleSet, entry: ExpandedEntry) -> str | None:
    """Render ``entry`` with the first matching rule, or None if none match."""
    for rule in rules.rules:
        if rule.matches(entry):
            return render_template(rule.template, [_lookup(entry, f) for f in rule.binding_order])
    return None


def emit_outputs(lexicon: Lexicon, rules: RuleSet) -> tuple[str, list[NoMatch]]:
    diags = check_hierarchy(lexicon)
    if diags:
        raise HierarchyError("; ".join(str(d) for d in diags))
    chunks: list[str] = []
    warnings: list[NoMatch] = []
    for entry in expand_all(lexicon):
        text = apply_rules(rules, entry)
        if text is None:
            warnings.append(NoMatch(entry.base_name.text))
        else:
            chunks.append(text)
    return "".join(chunks), warnings


# -- rule files ------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<name>@?[a-z][A-Za-z0-9_]*)
  | (?P<op>[,.])
    """,
    re.VERBOSE | re.DOTALL,
)


def _unescape(body: str) -> str:
    return re.sub(r"\\([\"\\])", r"\1", body)


def parse_rules(text: str, source: str = "<rules>") -> RuleSet:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise RuleSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source)
        if m.lastgroup != "ws":
            toks.append((m.lastgroup, m.group(), line, pos - line_start + 1))
        if "\n" in m.group():
            line += m.group().count("\n")
            line_start = pos + m.group().rfind("\n") + 1
        pos = m.end()
    toks.append(("eof", "", line, pos - line_start + 1))
    i = 0

    def fail(msg: str, at: int | None = None) -> RuleSyntaxError:
        _, _, ln, col = toks[i if at is None else at]
        return RuleSyntaxError(msg, ln, col, source)

    def take(kind: str, value: str | None = None) -> str:
        nonlocal i
        k, t, _, _ = toks[i]
        if k != kind or (value is not None and t != value):
            raise fail(f"expected {value or kind}, found {t or 'end of input'!r}")
        i += 1
        return t

    def names() -> tuple[str, ...]:
        nonlocal i
        out = [take("name")]
        while toks[i][1] == ",":
            i += 1
            out.append(take("name"))
        return tuple(out)

    rules: list[TrafoRule] = []
    seen: set[str] = set()
    while toks[i][0] != "eof":
        start = i
        take("name", "rule")
        name = take("name")
        if name in seen:
            raise fail(f"duplicate rule {name!r}", start)
        seen.add(name)
        take("name", "requires")
        required = names()
        take("name", "emits")
        tpl_at = i
        raw = take("string")
        try:
            template = Template.parse(_unescape(raw[1:-1]))
        except ValueError as exc:
            raise fail(str(exc), tpl_at) from None
        bindings: tuple[str, ...] = ()
        if toks[i][1] == "with":
            i += 1
            bindings = names()
        take("op", ".")
        try:
            rules.append(TrafoRule(name, required, template, bindings))
        except TemplateArityError as exc:
            raise fail(f"rule {name!r}: {exc}", start) from None
    return RuleSet(tuple(rules))


@lru_cache(maxsize=None)
def shipped_rules(name: str) -> RuleSet:
    """Load one of the rule files shipped with the package (``semlex``, ``table``)."""
    path = resources.files("semdb.data").joinpath(f"{name}.trafo")
    return parse_rules(path.read_text(encoding="utf-8"), f"{name}.trafo")
