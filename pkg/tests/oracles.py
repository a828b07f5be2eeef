"""Independent reference checks used by the tests.

The plugging oracle works top-down (children lists, depth-first search from
the root) over every permutation, whereas the library works bottom-up over
parent chains with pruning.
"""

from __future__ import annotations

import itertools
import re

from hypothesis import strategies as st

from semdb.scope import ScopeGraph


def _nat(name: str):
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name))


def _admissible(graph: ScopeGraph, assignment: dict[str, str]) -> bool:
    children: dict[str, list[str]] = {}
    for owner, items in graph.containment.items():
        children.setdefault(owner, []).extend(items)
    children.setdefault(graph.root_label, []).extend(graph.top_level)
    for hole, label in assignment.items():
        children.setdefault(hole, []).append(label)
    nodes = {graph.root_label} | set(graph.holes) | set(graph.floating_labels) | set(graph.top_level)
    for owner, items in graph.containment.items():
        nodes.add(owner)
        nodes.update(items)
    indegree = {n: 0 for n in nodes}
    for kids in children.values():
        for k in kids:
            indegree[k] += 1
    if indegree[graph.root_label] != 0 or any(indegree[n] != 1 for n in nodes if n != graph.root_label):
        return False
    visited: set[str] = set()
    stack = [graph.root_label]
    while stack:
        n = stack.pop()
        if n in visited:
            return False
        visited.add(n)
        stack.extend(children.get(n, ()))
    if visited != nodes:
        return False

    def below(top: str) -> set[str]:
        seen = {top}
        todo = [top]
        while todo:
            for k in children.get(todo.pop(), ()):
                if k not in seen:
                    seen.add(k)
                    todo.append(k)
        return seen

    return all(low in below(high) for low, high in graph.leq_constraints)


def brute_force_pluggings(graph: ScopeGraph) -> list[dict[str, str]]:
    holes = sorted(graph.holes, key=_nat)
    found = []
    for perm in itertools.permutations(sorted(graph.floating_labels, key=_nat)):
        assignment = dict(zip(holes, perm))
        if _admissible(graph, assignment):
            found.append(assignment)
    found.sort(key=lambda a: [_nat(a[h]) for h in holes])
    return found


@st.composite
def scope_graphs(draw, max_holes: int = 5) -> ScopeGraph:
    """Random well-formed graphs: holes owned by labels, restrictor-like
    contained labels, unconstrained top-level labels and random leq edges."""
    n = draw(st.integers(0, max_holes))
    root = "l0"
    floating = [f"l{i}" for i in range(1, n + 1)]
    extra = [f"l{i}" for i in range(n + 1, n + 1 + draw(st.integers(0, 3)))]
    top = [f"t{i}" for i in range(draw(st.integers(0, 2)))]
    containment: dict[str, set[str]] = {}
    owners_so_far = [root] + floating
    for lbl in extra:
        parent = draw(st.sampled_from(owners_so_far))
        containment.setdefault(parent, set()).add(lbl)
        owners_so_far.append(lbl)
    holes = [f"h{i}" for i in range(1, n + 1)]
    for h in holes:
        owner = draw(st.sampled_from(owners_so_far))
        containment.setdefault(owner, set()).add(h)
    candidates = [(lbl, h) for lbl in floating + extra for h in holes]
    candidates += [(a, b) for a in floating + extra for b in floating if a != b]
    leq = draw(st.sets(st.sampled_from(candidates), max_size=6)) if candidates else set()
    return ScopeGraph(
        frozenset(holes), frozenset(floating), root,
        {k: frozenset(v) for k, v in containment.items()},
        frozenset(leq), frozenset(top),
    )
