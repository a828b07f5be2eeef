import pytest

from semdb.catalog import (
    ROLE_NAMES,
    ArgKind,
    PredPattern,
    format_catalog,
    parse_catalog,
    parse_kinds,
    predscheme_instances,
    shipped_catalog_text,
)
from semdb.errors import MissingRole, SourceSyntaxError, UnknownSemClass
from semdb.plex import expand_all, expand_base, parse_lexicon_source
from semdb.vit import parse_vit

L, I, H, R, N = ArgKind.LABEL, ArgKind.INSTANCE, ArgKind.HOLE, ArgKind.RESTRICTOR_LABEL, ArgKind.CARDINALITY


def test_transitive_verb(catalog):
    cls = catalog.classes["transitive_verb"]
    assert cls.predscheme.head_kinds == (L, I)
    assert [e.kinds for e in cls.predscheme.extras] == [(L, I, I), (L, I, I)]
    assert cls.role_slots == ("role_a1", "role_a2")


def test_wh_question(catalog):
    ps = catalog.classes["wh_question"].predscheme
    assert ps.head_name == "whq" and ps.head_kinds == (L, I, H)
    assert [(e.name, e.kinds, e.role) for e in ps.extras] == [("tloc", (L, I, I), False), ("time", (L, I), False)]


def test_table_classes(catalog):
    assert catalog.classes["common_noun"].predscheme.head_kinds == (L, I)
    assert catalog.classes["det_quant"].predscheme.head_kinds == (L, I, H)
    demo = catalog.classes["demonstrative"].predscheme
    assert demo.head_name == "demonstrative" and demo.head_kinds == (L, I, L)


def test_card_quantifier_matches_closed_class(catalog):
    assert catalog.classes["card_quantifier"].predscheme.head_kinds == (L, I, R, H, N)
    assert catalog.closed_class_patterns["ein_card_qua"].arg_kinds == (L, I, R, H, N)
    assert catalog.closed_class_patterns["decl"].arg_kinds == (L, H)
    assert catalog.closed_class_patterns["pron"].arg_kinds == (L, I)


def test_shipped_file_equals_builtin(catalog):
    assert parse_catalog(shipped_catalog_text()) == catalog
    assert parse_catalog(format_catalog(catalog)) == catalog


def test_kind_strings():
    assert parse_kinds("L,I,I1") == (L, I, I)
    assert parse_kinds("L, I2 ,H") == (L, I, H)
    with pytest.raises(ValueError):
        parse_kinds("L,X")


@pytest.mark.parametrize("text", [
    "semclass x : 'I,L' .",
    "semclass x : 'L,Q' .",
    "closed decl 'L,H'",
    "semclass x : 'L' & thing y 'L' .",
])
def test_bad_catalog_files(text):
    with pytest.raises(SourceSyntaxError):
        parse_catalog(text)


def test_instances_ausmachen(demo_lexicon, catalog):
    got = predscheme_instances(expand_base(demo_lexicon, "ausmachen"), catalog)
    assert got == [
        PredPattern("ausmachen", (L, I), "ausmachen"),
        PredPattern("arg1", (L, I, I), "ausmachen"),
        PredPattern("arg3", (L, I, I), "ausmachen"),
    ]


def test_instances_termin(demo_lexicon, catalog):
    assert predscheme_instances(expand_base(demo_lexicon, "Termin"), catalog) == [PredPattern("termin", (L, I), "Termin")]


def test_unclassified_entry(demo_source, catalog):
    lex = parse_lexicon_source(demo_source + "\nbase gehen :<< verb_c >>: predname: gehen .")
    with pytest.raises(UnknownSemClass):
        predscheme_instances(expand_base(lex, "gehen"), catalog)


def test_missing_role(demo_source, catalog):
    lex = parse_lexicon_source(demo_source + "\nbase treffen :<< transitive_c >>: predname: treffen & role_a1: arg1 .")
    with pytest.raises(MissingRole) as info:
        predscheme_instances(expand_base(lex, "treffen"), catalog)
    assert info.value.slot == "role_a2"


def test_demo_patterns_match_sample(demo_lexicon, catalog, sample_text):
    vit = parse_vit(sample_text)
    for entry in expand_all(demo_lexicon):
        patterns = {p.predicate_name: p for p in predscheme_instances(entry, catalog)}
        head = patterns[entry.values["predname"].text]
        for pred in vit.semantics:
            if pred.functor in patterns and (pred.functor == head.predicate_name or pred.args[0] == vit.semantics[1].args[0]):
                assert pred.arity == patterns[pred.functor].arity
        for p in patterns.values():
            if p is not head:
                assert p.predicate_name in ROLE_NAMES
