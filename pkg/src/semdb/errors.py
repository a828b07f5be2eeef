"""Exception hierarchy shared by all semdb modules."""

from __future__ import annotations


class SemdbError(Exception):
    """Base class for every error raised by semdb."""


class SourceSyntaxError(SemdbError):
    """A textual source (lexicon, rules, catalog, VIT) failed to parse."""

    def __init__(self, message: str, line: int, column: int, source: str = "<input>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


# -- lexicon ---------------------------------------------------------------

class LexiconSyntaxError(SourceSyntaxError):
    pass


class DuplicateDefinition(SemdbError):
    def __init__(self, kind: str, name: str):
        self.kind = kind
        self.name = name
        super().__init__(f"duplicate {kind} {name!r}")


class UnknownClass(SemdbError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown class {name!r}")


class UnknownBase(SemdbError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown base {name!r}")


class HierarchyError(SemdbError):
    """The class graph is not a well-formed forest."""


class UnknownFeature(SemdbError):
    def __init__(self, feature: str, where: str = ""):
        self.feature = feature
        suffix = f" in {where}" if where else ""
        super().__init__(f"unknown feature {feature!r}{suffix}")


class AppropriatenessViolation(SemdbError):
    def __init__(self, feature: str, value: object, where: str = ""):
        self.feature = feature
        self.value = value
        suffix = f" in {where}" if where else ""
        super().__init__(f"value {value} is not appropriate for feature {feature!r}{suffix}")


# -- catalog ---------------------------------------------------------------

class CatalogError(SemdbError):
    pass


class UnknownSemClass(CatalogError):
    def __init__(self, name: str | None, base: str = ""):
        self.name = name
        self.base = base
        super().__init__(f"base {base!r} has unknown semantic class {name!r}")


class MissingRole(CatalogError):
    def __init__(self, slot: str, base: str = ""):
        self.slot = slot
        self.base = base
        super().__init__(f"base {base!r} leaves role slot {slot!r} unspecified")


# -- trafo -----------------------------------------------------------------

class RuleSyntaxError(SourceSyntaxError):
    pass


class TemplateArityError(SemdbError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"template has {expected} substitutions but {got} bindings were given")


# -- VIT -------------------------------------------------------------------

class TermSyntaxError(SourceSyntaxError):
    pass


class SlotArity(SemdbError):
    def __init__(self, arity: int):
        self.arity = arity
        super().__init__(f"vit/{arity}: a VIT has exactly ten slots")


class SlotShape(SemdbError):
    def __init__(self, slot: int, detail: str):
        self.slot = slot
        super().__init__(f"slot {slot}: {detail}")


# -- scope -----------------------------------------------------------------

class ScopeError(SemdbError):
    pass


class UnknownKind(ScopeError):
    def __init__(self, predicate: str, position: int):
        self.predicate = predicate
        self.position = position
        super().__init__(f"cannot determine the kind of argument {position} of {predicate}")


class CardinalityMismatch(ScopeError):
    def __init__(self, holes: int, labels: int):
        self.holes = holes
        self.labels = labels
        super().__init__(f"{holes} holes but {labels} floating labels")


class IncompleteDefault(ScopeError):
    def __init__(self, hole: str):
        self.hole = hole
        super().__init__(f"hole {hole} has no ccom_plug default")
