"""Underspecified scope: holes, floating labels, leq constraints, pluggings.

A plugging maps every hole to one floating label.  It is admissible when
containment edges plus the plugged hole->label edges form a tree under the
root label and every ``leq(l, h)`` holds, i.e. ``l`` lies below ``h``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .catalog import ArgKind, Catalog
from .errors import CardinalityMismatch, IncompleteDefault, ScopeError, UnknownKind
from .terms import Compound, ListTerm, format_term
from .validate import PatternIndex, convention_kind
from .vit import VIT, label_of


def natural_key(name: str) -> tuple:
    """Order identifiers so that h2 sorts before h10."""
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name))


@dataclass(frozen=True)
class ScopeGraph:
    holes: frozenset[str]
    floating_labels: frozenset[str]
    root_label: str
    containment: dict[str, frozenset[str]] = field(default_factory=dict)
    leq_constraints: frozenset[tuple[str, str]] = frozenset()
    # maximal labels no scope constraint mentions; they hang directly under the root
    top_level: frozenset[str] = frozenset()

    def nodes(self) -> set[str]:
        out = {self.root_label} | set(self.holes) | set(self.floating_labels) | set(self.top_level)
        for owner, items in self.containment.items():
            out.add(owner)
            out.update(items)
        return out

    def with_leq(self, label: str, hole: str) -> "ScopeGraph":
        return ScopeGraph(self.holes, self.floating_labels, self.root_label, self.containment,
                          self.leq_constraints | {(label, hole)}, self.top_level)


@dataclass(frozen=True)
class Plugging:
    assignment: dict[str, str]

    def __str__(self) -> str:
        holes = sorted(self.assignment, key=natural_key)
        return " ".join(f"{h}->{self.assignment[h]}" for h in holes)


def _argument_kinds(pred: Compound, catalog: Catalog, index: PatternIndex | None) -> list[ArgKind | None]:
    pattern = catalog.closed_class_patterns.get(pred.functor)
    if pattern is not None and pattern.arity == pred.arity:
        return list(pattern.arg_kinds)
    if index is not None:
        for p in index.by_name.get(pred.functor, ()):
            if p.arity == pred.arity:
                return list(p.arg_kinds)
    kinds: list[ArgKind | None] = [ArgKind.LABEL]
    for pos, arg in enumerate(pred.args[1:], 1):
        kind = convention_kind(arg)
        if kind is None:
            raise UnknownKind(pred.functor, pos + 1)
        kinds.append(kind)
    return kinds


def build_scope_graph(vit: VIT, catalog: Catalog, index: PatternIndex | None = None) -> ScopeGraph:
    holes: set[str] = set()
    containment: dict[str, set[str]] = {}
    labels: set[str] = set()
    for pred in vit.semantics:
        label = label_of(pred)
        labels.add(label)
        for kind, arg in zip(_argument_kinds(pred, catalog, index)[1:], pred.args[1:]):
            if kind is ArgKind.HOLE:
                holes.add(format_term(arg))
                containment.setdefault(label, set()).add(format_term(arg))
            elif kind is not None and kind.is_label:
                containment.setdefault(label, set()).add(format_term(arg))
    for group in vit.groups:
        if group.functor == "sem_group" and group.arity == 2 and isinstance(group.args[1], ListTerm):
            name = format_term(group.args[0])
            labels.add(name)
            containment.setdefault(name, set()).update(format_term(m) for m in group.args[1].items)
    contained = {x for items in containment.values() for x in items}
    root = vit.main_label.text
    maximal = labels - contained - {root}
    mentioned = {format_term(a) for c in vit.scope if c.functor in ("leq", "ccom_plug") for a in c.args}
    floating = {lbl for lbl in maximal if lbl in mentioned}
    leq = {(format_term(c.args[0]), format_term(c.args[1]))
           for c in vit.scope if c.functor == "leq" and c.arity == 2}
    return ScopeGraph(
        frozenset(holes), frozenset(floating), root,
        {k: frozenset(v) for k, v in containment.items()},
        frozenset(leq), frozenset(maximal - floating),
    )


def _fixed_parents(graph: ScopeGraph) -> dict[str, str] | None:
    """Parent of every node from containment alone; None if some node has two."""
    parent: dict[str, str] = {}
    for owner in sorted(graph.containment, key=natural_key):
        for item in graph.containment[owner]:
            if item in parent:
                return None
            parent[item] = owner
    for lbl in graph.top_level:
        if lbl in parent:
            return None
        parent[lbl] = graph.root_label
    return parent


def _ancestry(parent: dict[str, str], node: str) -> tuple[list[str], bool]:
    """``node`` and its ancestors; the flag says whether a cycle was hit."""
    chain = [node]
    seen = {node}
    while chain[-1] in parent:
        nxt = parent[chain[-1]]
        if nxt in seen:
            return chain, True
        chain.append(nxt)
        seen.add(nxt)
    return chain, False


def _leq_holds(parent: dict[str, str], root: str, low: str, high: str) -> bool | None:
    """True/False once ``low``'s ancestry is settled up to the root, else None."""
    chain, cyclic = _ancestry(parent, low)
    if high in chain:
        return True
    if cyclic or chain[-1] == root:
        return False
    return None


def is_admissible(graph: ScopeGraph, plugging: Plugging) -> bool:
    assignment = plugging.assignment
    if set(assignment) != set(graph.holes) or sorted(assignment.values()) != sorted(graph.floating_labels):
        return False
    parent = _fixed_parents(graph)
    if parent is None:
        return False
    for hole, lbl in assignment.items():
        if lbl in parent:
            return False
        parent[lbl] = hole
    for node in graph.nodes():
        chain, cyclic = _ancestry(parent, node)
        if cyclic or chain[-1] != graph.root_label:
            return False
    return all(_leq_holds(parent, graph.root_label, low, high) for low, high in graph.leq_constraints)


def enumerate_pluggings(graph: ScopeGraph) -> list[Plugging]:
    """Every admissible plugging, ordered by hole then assigned label.

    Backtracks over holes in identifier order.  A branch is cut as soon as a
    plug closes a cycle or a leq constraint is decided false, which happens
    once the lower label's ancestry reaches the root.
    """
    if len(graph.holes) != len(graph.floating_labels):
        raise CardinalityMismatch(len(graph.holes), len(graph.floating_labels))
    parent = _fixed_parents(graph)
    if parent is None:
        return []
    holes = sorted(graph.holes, key=natural_key)
    labels = sorted(graph.floating_labels, key=natural_key)
    if any(lbl in parent for lbl in labels):
        return []
    results: list[Plugging] = []
    assignment: dict[str, str] = {}
    free = set(labels)

    def violated() -> bool:
        return any(_leq_holds(parent, graph.root_label, low, high) is False
                   for low, high in graph.leq_constraints)

    def search(i: int) -> None:
        if i == len(holes):
            candidate = Plugging(dict(assignment))
            if is_admissible(graph, candidate):
                results.append(candidate)
            return
        hole = holes[i]
        for lbl in labels:
            if lbl not in free:
                continue
            parent[lbl] = hole
            _, cyclic = _ancestry(parent, hole)
            if not cyclic and not violated():
                assignment[hole] = lbl
                free.discard(lbl)
                search(i + 1)
                free.add(lbl)
                del assignment[hole]
            del parent[lbl]

    search(0)
    return results


def default_plugging(vit: VIT, graph: ScopeGraph) -> tuple[Plugging, bool]:
    """The ccom_plug default reading and whether it is admissible."""
    plugs: dict[str, list[str]] = {}
    for c in vit.scope:
        if c.functor == "ccom_plug" and c.arity == 2:
            plugs.setdefault(format_term(c.args[0]), []).append(format_term(c.args[1]))
    assignment = {}
    for hole in sorted(graph.holes, key=natural_key):
        targets = plugs.get(hole)
        if not targets:
            raise IncompleteDefault(hole)
        if len(targets) > 1:
            raise ScopeError(f"hole {hole} has {len(targets)} ccom_plug defaults")
        assignment[hole] = targets[0]
    plugging = Plugging(assignment)
    return plugging, is_admissible(graph, plugging)


# -- scoped trees ----------------------------------------------------------

@dataclass(frozen=True)
class ScopedTree:
    label: str
    predicates: tuple[Compound, ...]
    children: tuple[tuple[str | None, "ScopedTree"], ...] = ()  # (plugged hole or None, subtree)

    def predicates_below(self) -> list[Compound]:
        out = list(self.predicates)
        for _, child in self.children:
            out.extend(child.predicates_below())
        return out

    def render(self, indent: int = 0, via: str | None = None) -> str:
        preds = ", ".join(format_term(p) for p in self.predicates) or "(group)"
        head = f"{via} -> " if via else ""
        lines = [f"{'  ' * indent}{head}{self.label}: {preds}"]
        for hole, child in self.children:
            lines.append(child.render(indent + 1, hole))
        return "\n".join(lines)


def build_scoped_tree(vit: VIT, graph: ScopeGraph, plugging: Plugging) -> ScopedTree:
    by_label: dict[str, list[Compound]] = {}
    for pred in vit.semantics:
        by_label.setdefault(label_of(pred), []).append(pred)
    visiting: set[str] = set()

    def node(label: str) -> ScopedTree:
        if label in visiting:
            raise ScopeError(f"scope cycle through {label}")
        visiting.add(label)
        children = []
        for item in sorted(graph.containment.get(label, ()), key=natural_key):
            if item in graph.holes:
                children.append((item, node(plugging.assignment[item])))
            else:
                children.append((None, node(item)))
        if label == graph.root_label:
            children.extend((None, node(lbl)) for lbl in sorted(graph.top_level, key=natural_key))
        visiting.discard(label)
        return ScopedTree(label, tuple(by_label.get(label, ())), tuple(children))

    return node(graph.root_label)
