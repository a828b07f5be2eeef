"""The lexicon formalism: classes with appropriate features, bases, expansion.

Source syntax::

    % comment
    class transitive_c :< verb_c >:
       semclass: transitive_verb &
       role_a1: (arg1 \\/ arg2 \\/ arg3) .

    base 'ausmachen' :<< transitive_c >>:
       role_a1: 'arg1' .

A class body item whose value is a single literal fixes that feature for the
class and every subclass; any other value (``top``, a disjunction, a negation)
declares the feature's appropriateness and leaves it open for bases to fill.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import (
    AppropriatenessViolation,
    DuplicateDefinition,
    HierarchyError,
    LexiconSyntaxError,
    UnknownBase,
    UnknownClass,
    UnknownFeature,
)
from .terms import PLAIN_ATOM, Atom, quote, unquote

TOP_KEYWORD = "top"


# -- value expressions -----------------------------------------------------

class Top:
    """The most general value.  Use the module-level ``TOP`` singleton."""

    _instance: "Top | None" = None

    def __new__(cls) -> "Top":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TOP"

    def __reduce__(self):
        return (Top, ())


TOP = Top()


@dataclass(frozen=True)
class Lit:
    atom: Atom

    @property
    def text(self) -> str:
        return self.atom.text


@dataclass(frozen=True)
class Or:
    items: tuple["ValueExpr", ...]

    def __post_init__(self) -> None:
        if len(self.items) < 2:
            raise ValueError("a disjunction needs at least two disjuncts")
        seen = set()
        for item in self.items:
            if isinstance(item, Top):
                raise ValueError("top cannot appear inside a disjunction")
            if isinstance(item, Or):
                raise ValueError("nested disjunctions must be flattened")
            if isinstance(item, Lit):
                if item.text in seen:
                    raise ValueError(f"duplicate disjunct {item.text!r}")
                seen.add(item.text)


@dataclass(frozen=True)
class Not:
    operand: "ValueExpr"

    def __post_init__(self) -> None:
        if isinstance(self.operand, Top):
            raise ValueError("top cannot appear under negation")


ValueExpr = Union[Top, Lit, Or, Not]


def lit(text: str, quoted: bool = False) -> Lit:
    return Lit(Atom(text, quoted))


def disj(*items: ValueExpr | str) -> ValueExpr:
    """Build a flattened disjunction; plain strings become literals."""
    flat: list[ValueExpr] = []
    for item in items:
        item = lit(item) if isinstance(item, str) else item
        flat.extend(item.items if isinstance(item, Or) else (item,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def literals(value: ValueExpr) -> list[str]:
    """All literal texts occurring in ``value``, in order."""
    if isinstance(value, Lit):
        return [value.text]
    if isinstance(value, Or):
        return [t for item in value.items for t in literals(item)]
    if isinstance(value, Not):
        return literals(value.operand)
    return []


def check_value(appropriateness: ValueExpr, value: ValueExpr) -> bool:
    """Is ``value`` admissible under ``appropriateness``?

    A disjunctive value is admissible only if each of its disjuncts is, so a
    base may narrow a declared disjunction but never widen it.  Negation is
    complement of acceptance, not complement over some universe of atoms.
    """
    if isinstance(appropriateness, Top) or isinstance(value, Top):
        return True
    if isinstance(value, Or):
        return all(check_value(appropriateness, v) for v in value.items)
    if isinstance(value, Not):
        return not check_value(appropriateness, value.operand)
    # value is a literal from here on
    if isinstance(appropriateness, Lit):
        return appropriateness.text == value.text
    if isinstance(appropriateness, Or):
        return any(check_value(a, value) for a in appropriateness.items)
    if isinstance(appropriateness, Not):
        return not check_value(appropriateness.operand, value)
    raise TypeError(f"not a value expression: {appropriateness!r}")


# -- lexicon model ---------------------------------------------------------

@dataclass(frozen=True)
class FeatureDecl:
    name: str
    appropriateness: ValueExpr


@dataclass(frozen=True)
class LexClass:
    name: str
    parent: str | None
    features: tuple[FeatureDecl, ...] = ()

    @property
    def fixed_values(self) -> dict[str, ValueExpr]:
        return {f.name: f.appropriateness for f in self.features if isinstance(f.appropriateness, Lit)}


@dataclass(frozen=True)
class BaseEntry:
    name: Atom
    class_name: str
    assignments: dict[str, ValueExpr] = field(default_factory=dict)


@dataclass(frozen=True)
class Lexicon:
    classes: dict[str, LexClass] = field(default_factory=dict)
    bases: tuple[BaseEntry, ...] = ()

    def base(self, name: str) -> BaseEntry:
        for b in self.bases:
            if b.name.text == name:
                return b
        raise UnknownBase(name)


@dataclass(frozen=True)
class ExpandedEntry:
    base_name: Atom
    class_chain: tuple[str, ...]
    values: dict[str, ValueExpr]

    @property
    def class_name(self) -> str:
        return self.class_chain[-1]

    def get(self, feature: str) -> ValueExpr:
        return self.values.get(feature, TOP)


@dataclass(frozen=True)
class Diagnostic:
    code: str  # UnknownParent | Cycle | UnknownClass
    name: str

    def __str__(self) -> str:
        return f"{self.code}({self.name})"


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<quoted>'(?:[^'\\]|\\.)*')
  | (?P<name>[a-z][A-Za-z0-9_]*)
  | (?P<or>\\[ \t]*/?)
  | (?P<op>:<<|>>:|:<|>:|[:&.()~,])
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int

    @property
    def shown(self) -> str:
        return repr(self.text) if self.kind != "eof" else "end of input"


def _tokenize(text: str, source: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            ch = text[pos]
            hint = " (unquoted atoms start with a lowercase letter)" if ch.isupper() else ""
            raise LexiconSyntaxError(f"unexpected character {ch!r}{hint}", line, pos - line_start + 1, source)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _LexiconParser:
    def __init__(self, text: str, source: str):
        self.source = source
        self.toks = _tokenize(text, source)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: _Tok | None = None) -> LexiconSyntaxError:
        tok = tok or self.peek()
        return LexiconSyntaxError(msg, tok.line, tok.col, self.source)

    def expect_op(self, text: str) -> _Tok:
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.shown}", tok)
        return tok

    def atom(self) -> Atom:
        tok = self.next()
        if tok.kind == "name":
            return Atom(tok.text)
        if tok.kind == "quoted":
            body = unquote(tok.text[1:-1])
            if not body:
                raise self.error("empty quoted atom", tok)
            return Atom(body, quoted=True)
        raise self.error(f"expected an atom, found {tok.shown}", tok)

    def lexicon(self) -> Lexicon:
        classes: dict[str, LexClass] = {}
        bases: list[BaseEntry] = []
        base_names: set[str] = set()
        while self.peek().kind != "eof":
            tok = self.next()
            if tok.kind == "name" and tok.text == "class":
                cls = self.class_decl()
                if cls.name in classes:
                    raise DuplicateDefinition("class", cls.name)
                classes[cls.name] = cls
            elif tok.kind == "name" and tok.text == "base":
                base = self.base_decl()
                if base.name.text in base_names:
                    raise DuplicateDefinition("base", base.name.text)
                base_names.add(base.name.text)
                bases.append(base)
            else:
                raise self.error(f"expected 'class' or 'base', found {tok.shown}", tok)
        return Lexicon(classes, tuple(bases))

    def class_decl(self) -> LexClass:
        name = self.atom().text
        self.expect_op(":<")
        parent = self.atom()
        if self.peek().text == ",":
            raise self.error(f"class {name!r}: only single inheritance is supported")
        self.expect_op(">:")
        body = self.body(f"class {name!r}")
        if parent.text == TOP_KEYWORD and not parent.quoted:
            parent_name = None
        else:
            parent_name = parent.text
        return LexClass(name, parent_name, tuple(FeatureDecl(f, v) for f, v in body))

    def base_decl(self) -> BaseEntry:
        name = self.atom()
        self.expect_op(":<<")
        class_name = self.atom().text
        self.expect_op(">>:")
        body = self.body(f"base {name.text!r}")
        return BaseEntry(name, class_name, dict(body))

    def body(self, where: str) -> list[tuple[str, ValueExpr]]:
        items: list[tuple[str, ValueExpr]] = []
        seen: set[str] = set()
        if self.peek().text == ".":
            self.next()
            return items
        while True:
            ftok = self.peek()
            feature = self.atom().text
            if feature in seen:
                raise self.error(f"{where}: feature {feature!r} assigned twice", ftok)
            seen.add(feature)
            self.expect_op(":")
            items.append((feature, self.value()))
            tok = self.next()
            if tok.text == ".":
                return items
            if tok.text != "&":
                raise self.error(f"expected '&' or '.', found {tok.shown}", tok)

    def value(self) -> ValueExpr:
        start = self.peek()
        first = self.unary()
        if self.peek().kind != "or":
            return first
        parts = [first]
        while self.peek().kind == "or":
            self.next()
            parts.append(self.unary())
        return self.make_or(parts, start)

    def make_or(self, parts: list[ValueExpr], tok: _Tok) -> ValueExpr:
        flat: list[ValueExpr] = []
        for p in parts:
            if isinstance(p, Top):
                raise self.error("'top' cannot appear inside a disjunction", tok)
            flat.extend(p.items if isinstance(p, Or) else (p,))
        try:
            return Or(tuple(flat))
        except ValueError as exc:
            raise self.error(str(exc), tok) from None

    def unary(self) -> ValueExpr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "~":
            self.next()
            operand = self.unary()
            if isinstance(operand, Top):
                raise self.error("'top' cannot be negated", tok)
            return Not(operand)
        if tok.kind == "op" and tok.text == "(":
            self.next()
            inner = self.value()
            self.expect_op(")")
            return inner
        atom = self.atom()
        if atom.text == TOP_KEYWORD and not atom.quoted:
            return TOP
        return Lit(atom)


def parse_lexicon_source(text: str, source: str = "<input>") -> Lexicon:
    """Parse lexicon source text into a :class:`Lexicon` (source order kept)."""
    return _LexiconParser(text, source).lexicon()


def parse_value(text: str) -> ValueExpr:
    p = _LexiconParser(text, "<value>")
    v = p.value()
    if p.peek().kind != "eof":
        raise p.error(f"trailing input {p.peek().shown}")
    return v


# -- printing --------------------------------------------------------------

def format_name(text: str, quoted: bool = False) -> str:
    if not quoted and PLAIN_ATOM.fullmatch(text) and text != TOP_KEYWORD:
        return text
    return quote(text)


def format_value(value: ValueExpr) -> str:
    if isinstance(value, Top):
        return TOP_KEYWORD
    if isinstance(value, Lit):
        return format_name(value.atom.text, value.atom.quoted)
    if isinstance(value, Or):
        return "(" + " \\/ ".join(format_value(v) for v in value.items) + ")"
    if isinstance(value, Not):
        return "~" + format_value(value.operand)
    raise TypeError(f"not a value expression: {value!r}")


def _format_body(items: Iterable[tuple[str, ValueExpr]]) -> str:
    lines = [f"   {format_name(f)}: {format_value(v)}" for f, v in items]
    if not lines:
        return " ."
    return "\n" + " &\n".join(lines) + " ."


def format_class(cls: LexClass) -> str:
    parent = format_name(cls.parent) if cls.parent is not None else TOP_KEYWORD
    body = _format_body((f.name, f.appropriateness) for f in cls.features)
    return f"class {format_name(cls.name)} :< {parent} >:{body}"


def format_base(base: BaseEntry) -> str:
    name = format_name(base.name.text, base.name.quoted)
    return f"base {name} :<< {format_name(base.class_name)} >>:{_format_body(base.assignments.items())}"


def print_lexicon(lexicon: Lexicon) -> str:
    """Canonical source text: classes first, then bases, each in source order."""
    blocks = [format_class(c) for c in lexicon.classes.values()]
    blocks += [format_base(b) for b in lexicon.bases]
    return "".join(block + "\n\n" for block in blocks)


# -- hierarchy -------------------------------------------------------------

def check_hierarchy(lexicon: Lexicon) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    in_cycle: set[str] = set()
    for name, cls in lexicon.classes.items():
        if cls.parent is not None and cls.parent not in lexicon.classes:
            diags.append(Diagnostic("UnknownParent", cls.parent))
    for name in lexicon.classes:
        if name in in_cycle:
            continue
        path: list[str] = []
        current: str | None = name
        while current is not None and current in lexicon.classes and current not in path:
            path.append(current)
            current = lexicon.classes[current].parent
        if current is not None and current in path:
            members = path[path.index(current):]
            if not in_cycle.intersection(members):
                diags.append(Diagnostic("Cycle", min(members, key=list(lexicon.classes).index)))
            in_cycle.update(members)
    for base in lexicon.bases:
        if base.class_name not in lexicon.classes:
            diags.append(Diagnostic("UnknownClass", base.class_name))
    return diags


def class_chain(lexicon: Lexicon, class_name: str) -> tuple[str, ...]:
    """Class names from the root down to ``class_name``."""
    if class_name not in lexicon.classes:
        raise UnknownClass(class_name)
    chain: list[str] = []
    current: str | None = class_name
    while current is not None:
        if current in chain:
            raise HierarchyError(f"inheritance cycle through {current!r}")
        if current not in lexicon.classes:
            raise HierarchyError(f"class {chain[-1]!r} has unknown parent {current!r}")
        chain.append(current)
        current = lexicon.classes[current].parent
    return tuple(reversed(chain))


def effective_features(lexicon: Lexicon, class_name: str) -> list[tuple[FeatureDecl, ValueExpr | None]]:
    """Every feature visible in ``class_name`` with its fixed value, if any.

    Root-class features come first, then each subclass's new features in
    declaration order.  A subclass restating an inherited feature narrows it
    in place; the narrowed value must be admissible under the inherited one.
    """
    slots: dict[str, tuple[FeatureDecl, ValueExpr | None]] = {}
    for cname in class_chain(lexicon, class_name):
        for decl in lexicon.classes[cname].features:
            fixed = decl.appropriateness if isinstance(decl.appropriateness, Lit) else None
            inherited = slots.get(decl.name)
            if inherited is not None:
                if isinstance(decl.appropriateness, Top):
                    continue
                if not check_value(inherited[0].appropriateness, decl.appropriateness):
                    raise AppropriatenessViolation(decl.name, format_value(decl.appropriateness), f"class {cname!r}")
            slots[decl.name] = (decl, fixed)
    return list(slots.values())


def _expand(base: BaseEntry, chain: tuple[str, ...], feats: list[tuple[FeatureDecl, ValueExpr | None]]) -> ExpandedEntry:
    where = f"base {base.name.text!r}"
    appropriate = {decl.name: decl.appropriateness for decl, _ in feats}
    values = {decl.name: (fixed if fixed is not None else TOP) for decl, fixed in feats}
    for feature, value in base.assignments.items():
        if feature not in appropriate:
            raise UnknownFeature(feature, where)
        if not check_value(appropriate[feature], value):
            raise AppropriatenessViolation(feature, format_value(value), where)
        if isinstance(value, Top) and not isinstance(values[feature], Top):
            continue
        values[feature] = value
    return ExpandedEntry(base.name, chain, values)


def expand_base(lexicon: Lexicon, base_name: str) -> ExpandedEntry:
    """Overlay a base's assignments on the inherited class values."""
    base = lexicon.base(base_name)
    return _expand(base, class_chain(lexicon, base.class_name), effective_features(lexicon, base.class_name))


def expand_all(lexicon: Lexicon) -> list[ExpandedEntry]:
    """Expand every base in lexicon order, computing each class's features once."""
    cache: dict[str, tuple[tuple[str, ...], list]] = {}
    out = []
    for base in lexicon.bases:
        if base.class_name not in cache:
            cache[base.class_name] = (class_chain(lexicon, base.class_name), effective_features(lexicon, base.class_name))
        chain, feats = cache[base.class_name]
        out.append(_expand(base, chain, feats))
    return out
