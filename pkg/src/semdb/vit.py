"""The ten-slot Verbmobil Interface Term: model, parser and canonical printer."""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterator

from .errors import SemdbError, SlotArity, SlotShape
from .terms import Atom, Compound, ListTerm, Term, format_term, iter_terms

SLOT_NAMES = (
    "segment", "semantics", "main_label", "sorts", "discourse",
    "syntax", "tense_aspect", "scope", "prosody", "groups",
)


@dataclass(frozen=True)
class SegmentDescription:
    utterance_id: Term
    mode_flag: Term
    surface_string: Term

    def to_term(self) -> Compound:
        return Compound("segment_description", (self.utterance_id, self.mode_flag, self.surface_string))


@dataclass(frozen=True)
class VIT:
    segment: SegmentDescription
    semantics: tuple[Compound, ...]
    main_label: Atom
    sorts: tuple[Compound, ...] = ()
    discourse: tuple[Compound, ...] = ()
    syntax: tuple[Compound, ...] = ()
    tense_aspect: tuple[Compound, ...] = ()
    scope: tuple[Compound, ...] = ()
    prosody: tuple[Compound, ...] = ()
    groups: tuple[Compound, ...] = ()

    @property
    def utterance_id(self) -> str:
        return format_term(self.segment.utterance_id)

    def labels(self) -> list[str]:
        """Labels of semantics predicates, first occurrence order."""
        return list(dict.fromkeys(label_of(p) for p in self.semantics))

    def to_term(self) -> Compound:
        slots: list[Term] = [self.segment.to_term()]
        for f in fields(self)[1:]:
            value = getattr(self, f.name)
            slots.append(value if isinstance(value, Atom) else ListTerm(value))
        return Compound("vit", tuple(slots))


def label_of(pred: Compound) -> str:
    return pred.args[0].text  # type: ignore[union-attr]


def vit_from_term(term: Term) -> VIT:
    if not isinstance(term, Compound) or term.functor != "vit":
        raise SlotShape(0, f"expected a vit/10 term, found {format_term(term)[:40]}")
    if term.arity != 10:
        raise SlotArity(term.arity)
    seg = term.args[0]
    if not (isinstance(seg, Compound) and seg.functor == "segment_description" and seg.arity == 3):
        raise SlotShape(1, "expected segment_description/3")
    main = term.args[2]
    if not isinstance(main, Atom):
        raise SlotShape(3, "the main label must be an atom")
    lists: list[tuple[Compound, ...]] = []
    for index in (1, 3, 4, 5, 6, 7, 8, 9):
        slot = term.args[index]
        if not isinstance(slot, ListTerm):
            raise SlotShape(index + 1, f"{SLOT_NAMES[index]} must be a list")
        for item in slot.items:
            if not isinstance(item, Compound):
                raise SlotShape(index + 1, f"{format_term(item)} is not a predicate")
            if index == 1 and not isinstance(item.args[0], Atom):
                raise SlotShape(2, f"{format_term(item)} is not labelled by an atom")
        lists.append(slot.items)  # type: ignore[arg-type]
    semantics, sorts, discourse, syntax, tense, scope, prosody, groups = lists
    return VIT(SegmentDescription(*seg.args), semantics, main, sorts, discourse,
               syntax, tense, scope, prosody, groups)


def iter_vits(text: str, source: str = "<input>") -> Iterator[tuple[int, VIT | SemdbError]]:
    """Yield ``(line, VIT or slot error)`` per top-level term.

    Slot errors are yielded so a batch can continue past a malformed VIT;
    term syntax errors are raised, since the rest of the stream is suspect.
    """
    for term, line in iter_terms(text, source):
        try:
            yield line, vit_from_term(term)
        except (SlotArity, SlotShape) as exc:
            yield line, exc


def parse_vits(text: str, source: str = "<input>") -> list[VIT]:
    out = []
    for _, item in iter_vits(text, source):
        if isinstance(item, SemdbError):
            raise item
        out.append(item)
    return out


def parse_vit(text: str, source: str = "<input>") -> VIT:
    vits = parse_vits(text, source)
    if len(vits) != 1:
        raise SlotShape(0, f"expected exactly one VIT, found {len(vits)}")
    return vits[0]


def print_vit(vit: VIT) -> str:
    """Slot-per-block layout; predicates one per line inside each list."""
    indent = " " * 4
    blocks = [format_term(vit.segment.to_term())]
    for name in SLOT_NAMES[1:]:
        value = getattr(vit, name)
        if isinstance(value, Atom):
            blocks.append(format_term(value))
        elif not value:
            blocks.append("[]")
        else:
            sep = ",\n" + indent + " "
            blocks.append("[" + sep.join(format_term(p) for p in value) + "]")
    return "vit(" + (",\n" + indent).join(blocks) + ")\n"
