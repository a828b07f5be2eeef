"""One test per acceptance criterion; each prints PASS/FAIL in the session summary."""

import time

from hypothesis import given, settings

import report
import test_plex
from conftest import TESTS
from lexgen import generated_source
from oracles import brute_force_pluggings, scope_graphs
from semdb.plex import expand_all, parse_lexicon_source
from semdb.scope import build_scope_graph, default_plugging, enumerate_pluggings
from semdb.trafo import emit_outputs, shipped_rules
from semdb.validate import validate
from semdb.vit import parse_vit, print_vit
from test_validate import MUTATIONS, mutate

GOLDEN = TESTS / "golden"


def counted(prop):
    """Run a hypothesis property, returning how many examples it executed."""
    inner = prop.hypothesis.inner_test
    calls = [0]

    def counting(*args, **kwargs):
        calls[0] += 1
        return inner(*args, **kwargs)

    prop.hypothesis.inner_test = counting
    try:
        prop()
    finally:
        prop.hypothesis.inner_test = inner
    return calls[0]


def _emit(lexicon, rules_name):
    start = time.perf_counter()
    text, warnings = emit_outputs(lexicon, shipped_rules(rules_name))
    return text, warnings, time.perf_counter() - start


def test_ac1_golden_semlex(demo_source):
    with report.criterion("AC1 golden semlex output, < 1 s"):
        start = time.perf_counter()
        text, warnings = emit_outputs(parse_lexicon_source(demo_source), shipped_rules("semlex"))
        elapsed = time.perf_counter() - start
        assert warnings == []
        assert text == (GOLDEN / "semlex.out").read_text(encoding="utf-8")
        assert text.count("sem_lex(") == 2
        assert elapsed < 1.0, elapsed


def test_ac2_golden_table(demo_source):
    with report.criterion("AC2 golden table of lemmata, < 1 s"):
        start = time.perf_counter()
        text, warnings = emit_outputs(parse_lexicon_source(demo_source), shipped_rules("table"))
        elapsed = time.perf_counter() - start
        assert warnings == []
        assert text == (GOLDEN / "table.out").read_text(encoding="utf-8")
        lines = text.splitlines()
        assert len(lines) == 2 and all(line.endswith(" - -") for line in lines)
        assert elapsed < 1.0, elapsed


def test_ac3_sample_round_trip(sample_text):
    with report.criterion("AC3 sample VIT round trip, 7 semantics / 5 scope"):
        vit = parse_vit(sample_text)
        assert parse_vit(print_vit(vit)) == vit
        assert len(vit.semantics) == 7 and len(vit.scope) == 5


def test_ac4_sample_validation(sample_text, index, aliases):
    with report.criterion("AC4 sample VIT validates clean; nine single faults each caught"):
        assert validate(parse_vit(sample_text), index, aliases) == []
        for code, (old, new) in MUTATIONS.items():
            got = [v.code for v in validate(parse_vit(mutate(sample_text, old, new)), index, aliases)]
            assert got == [code], (code, got)
        assert len(MUTATIONS) == 9


def test_ac5_sample_scoping(sample_text, two_quantifier_text, catalog, index):
    with report.criterion("AC5 sample VIT has 1 reading = default; two quantifiers give 2"):
        vit = parse_vit(sample_text)
        graph = build_scope_graph(vit, catalog, index)
        readings = enumerate_pluggings(graph)
        assert [p.assignment for p in readings] == [{"h1": "l3", "h2": "l2"}]
        assert [p.assignment for p in readings] == brute_force_pluggings(graph)
        assert default_plugging(vit, graph) == (readings[0], True)
        graph2 = build_scope_graph(parse_vit(two_quantifier_text), catalog, index)
        readings2 = [p.assignment for p in enumerate_pluggings(graph2)]
        assert len(readings2) == 2 and readings2 == brute_force_pluggings(graph2)


@settings(max_examples=500, deadline=None, database=None)
@given(scope_graphs(max_holes=5))
def _oracle_property(graph):
    assert [p.assignment for p in enumerate_pluggings(graph)] == brute_force_pluggings(graph)


def test_ac6_oracle_equivalence():
    with report.criterion("AC6 enumeration equals brute force, >= 500 graphs, < 30 s"):
        start = time.perf_counter()
        n = counted(_oracle_property)
        elapsed = time.perf_counter() - start
        assert n >= 500, n
        assert elapsed < 30.0, elapsed


def test_ac7_formalism_properties():
    props = [
        test_plex.test_top_accepts_everything,
        test_plex.test_negated_value_flips,
        test_plex.test_disjunction_membership,
        test_plex.test_feature_sets_grow_down_the_hierarchy,
        test_plex.test_lexicon_round_trip,
    ]
    with report.criterion("AC7 formalism properties, >= 500 cases each"):
        counts = {p.__name__: counted(p) for p in props}
        assert all(n >= 500 for n in counts.values()), counts


def test_ac8_scale(demo_source):
    with report.criterion("AC8 2000 generated bases compile to semlex and table, < 5 s, no NoMatch"):
        source = generated_source(demo_source, 2000, seed=2000)
        start = time.perf_counter()
        lexicon = parse_lexicon_source(source, "generated.plex")
        semlex, w1, _ = _emit(lexicon, "semlex")
        table, w2, _ = _emit(lexicon, "table")
        elapsed = time.perf_counter() - start
        assert len(lexicon.bases) == 2000
        assert len({e.class_name for e in expand_all(lexicon)}) == 6
        assert w1 == [] and w2 == []
        assert semlex.count("sem_lex(") == 2000 and len(table.splitlines()) == 2000
        assert elapsed < 5.0, elapsed
