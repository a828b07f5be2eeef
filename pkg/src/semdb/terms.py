"""Prolog-style first-order terms: atoms, integers, variables, compounds, lists.

Only the fragment needed for interface terms is supported: no operators,
no list tails, no floats.  ``&(a,b)`` is an ordinary compound whose functor
is the symbolic atom ``&``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import TermSyntaxError

PLAIN_ATOM = re.compile(r"[a-z][A-Za-z0-9_]*")
SYMBOL_ATOM = re.compile(r"[&+\-*/\\^<>=~:?@#$]+")

_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'"}


@dataclass(frozen=True)
class Atom:
    """A constant symbol.

    ``quoted`` records whether the source spelled it in single quotes.  It is
    kept for printing only and takes no part in equality.
    """

    text: str
    quoted: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("atoms are non-empty")

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compound:
    functor: str
    args: tuple["Term", ...]

    def __post_init__(self) -> None:
        if not self.args:
            raise ValueError("compound terms have arity >= 1")

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class ListTerm:
    items: tuple["Term", ...] = ()

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Atom, int, Var, Compound, ListTerm]


def quote(text: str) -> str:
    out = ["'"]
    for ch in text:
        if ch == "\\":
            out.append("\\\\")
        elif ch == "'":
            out.append("\\'")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        else:
            out.append(ch)
    out.append("'")
    return "".join(out)


def unquote(body: str) -> str:
    """Decode the inside of a quoted atom (without the surrounding quotes)."""
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            out.append(_ESCAPES.get(nxt, nxt))
            i += 2
        elif ch == "'" and body.startswith("''", i):
            out.append("'")
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def format_atom(text: str) -> str:
    if PLAIN_ATOM.fullmatch(text) or SYMBOL_ATOM.fullmatch(text):
        return text
    return quote(text)


def format_term(term: Term) -> str:
    if isinstance(term, Atom):
        return format_atom(term.text)
    if isinstance(term, bool):
        raise TypeError("booleans are not terms")
    if isinstance(term, int):
        return str(term)
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Compound):
        return f"{format_atom(term.functor)}({','.join(format_term(a) for a in term.args)})"
    if isinstance(term, ListTerm):
        return "[" + ",".join(format_term(a) for a in term.items) + "]"
    raise TypeError(f"not a term: {term!r}")


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<quoted>'(?:[^'\\]|\\.|'')*')
  | (?P<int>-?\d+)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<name>[a-z][A-Za-z0-9_]*)
  | (?P<symbol>[&+\-*/\\^<>=~:?@\#$]+)
  | (?P<punct>[()\[\],])
  | (?P<end>\.)
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, source: str) -> list[_Tok]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _TermParser:
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

    def error(self, msg: str, tok: _Tok | None = None) -> TermSyntaxError:
        tok = tok or self.peek()
        return TermSyntaxError(msg, tok.line, tok.col, self.source)

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text or tok.kind not in ("punct", "end"):
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def term(self) -> Term:
        tok = self.next()
        if tok.kind == "int":
            return int(tok.text)
        if tok.kind == "var":
            return Var(tok.text)
        if tok.kind in ("name", "symbol", "quoted"):
            quoted = tok.kind == "quoted"
            text = unquote(tok.text[1:-1]) if quoted else tok.text
            if self.peek().text == "(" and self.peek().kind == "punct":
                self.next()
                args = self.arguments(")")
                if not args:
                    raise self.error("compound term without arguments", tok)
                return Compound(text, tuple(args))
            if not text:
                raise self.error("empty atom", tok)
            return Atom(text, quoted)
        if tok.kind == "punct" and tok.text == "[":
            return ListTerm(tuple(self.arguments("]")))
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}", tok)

    def arguments(self, close: str) -> list[Term]:
        items: list[Term] = []
        if self.peek().text == close:
            self.next()
            return items
        while True:
            items.append(self.term())
            tok = self.next()
            if tok.text == close:
                return items
            if tok.text != ",":
                raise self.error(f"expected ',' or {close!r}, found {tok.text or 'end of input'!r}", tok)

    def terms(self) -> Iterator[tuple[Term, int]]:
        while self.peek().kind != "eof":
            if self.peek().kind == "end":
                self.next()
                continue
            line = self.peek().line
            yield self.term(), line


def iter_terms(text: str, source: str = "<input>") -> Iterator[tuple[Term, int]]:
    """Yield ``(term, line)`` for each top-level term in ``text``.

    Terms are separated by whitespace; an optional ``.`` may follow each.
    """
    return _TermParser(text, source).terms()


def parse_terms(text: str, source: str = "<input>") -> list[Term]:
    return [t for t, _ in iter_terms(text, source)]


def parse_term(text: str, source: str = "<input>") -> Term:
    terms = parse_terms(text, source)
    if len(terms) != 1:
        raise TermSyntaxError(f"expected exactly one term, found {len(terms)}", 1, 1, source)
    return terms[0]
