import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphqa.kbstore import (
    DATE_CLASS,
    NUMBER_CLASS,
    STRING_CLASS,
    XSD,
    Direction,
    KnowledgeBase,
    Literal,
    NTriplesError,
    Triple,
    decamelize,
    load_ntriples,
    shorten_iri,
    term_text,
)

RES = "http://dbpedia.org/resource/"
DBO = "http://dbpedia.org/ontology/"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
FOAF_PERSON = "http://xmlns.com/foaf/0.1/Person"


def test_single_triple_builds_both_indexes():
    kb = load_ntriples("<http://x/a> <http://x/p> <http://x/b> .")
    assert len(kb) == 1
    assert kb.out_index["http://x/a"] == [("http://x/p", "http://x/b")]
    assert kb.in_index["http://x/b"] == [("http://x/p", "http://x/a")]


def test_berlin_fixture_has_leader_out_edge(berlin_kb):
    edges = berlin_kb.neighbors(RES + "Berlin")
    assert (DBO + "leader", RES + "Klaus_Wowereit", Direction.OUT) in edges


def test_malformed_line_reports_line_number():
    with pytest.raises(NTriplesError) as err:
        load_ntriples("<http://x/a> <http://x/p>")
    assert err.value.lineno == 1
    assert "<http://x/a>" in err.value.text


def test_error_on_missing_dot():
    with pytest.raises(NTriplesError):
        load_ntriples("<http://x/a> <http://x/p> <http://x/b>")


def test_empty_input_is_valid_empty_kb():
    kb = load_ntriples("")
    assert len(kb) == 0
    assert kb.neighbors("http://nowhere") == []


def test_duplicates_are_removed():
    text = "<http://x/a> <http://x/p> <http://x/b> .\n" * 3
    kb = load_ntriples(text)
    assert len(kb) == 1


def test_byte_stream_input():
    kb = load_ntriples(io.BytesIO(b"<http://x/a> <http://x/p> <http://x/b> ."))
    assert len(kb) == 1


def test_literal_parsing_with_datatype_and_lang():
    kb = load_ntriples(
        f'<http://x/a> <http://x/p> "1989-11-09"^^<{XSD}date> .\n'
        '<http://x/a> <http://x/q> "hallo"@de .\n'
        '<http://x/a> <http://x/r> "say \\"hi\\"" .'
    )
    objects = {t.predicate: t.object for t in kb.triples}
    assert objects["http://x/p"] == Literal("1989-11-09", XSD + "date")
    assert objects["http://x/q"] == Literal("hallo", XSD + "string", "de")
    assert objects["http://x/r"].lexical == 'say "hi"'


def test_neighbors_inverted_edge_only_triple():
    kb = load_ntriples(f"<{RES}Berlin> <{DBO}leader> <{RES}Klaus_Wowereit> .")
    assert kb.neighbors(RES + "Klaus_Wowereit") == [
        (DBO + "leader", RES + "Berlin", Direction.IN)
    ]


def test_neighbors_node_in_both_roles():
    kb = load_ntriples(
        "<http://x/a> <http://x/p> <http://x/b> .\n<http://x/b> <http://x/q> <http://x/c> ."
    )
    directions = {d for _p, _o, d in kb.neighbors("http://x/b")}
    assert directions == {Direction.IN, Direction.OUT}


def test_unknown_node_has_no_neighbors(berlin_kb):
    assert berlin_kb.neighbors(RES + "Nowhere") == []


def test_labels_explicit(berlin_kb):
    assert berlin_kb.labels_of(DBO + "leader") == ["leader"]


def test_labels_fallback_decamelizes_local_name():
    kb = load_ntriples("")
    assert kb.labels_of(DBO + "birthPlace") == ["birth place"]


def test_two_labels_sorted():
    kb = load_ntriples(
        f'<{DBO}x> <{RDFS_LABEL}> "zeta" .\n<{DBO}x> <{RDFS_LABEL}> "alpha" .'
    )
    assert kb.labels_of(DBO + "x") == ["alpha", "zeta"]


def test_types_of_entity(berlin_kb):
    assert berlin_kb.types_of(RES + "Klaus_Wowereit") == [FOAF_PERSON]


def test_types_of_literals_use_pseudo_classes():
    kb = load_ntriples("")
    assert kb.types_of(Literal("1989-11-09", XSD + "date")) == [DATE_CLASS]
    assert kb.types_of(Literal("12", XSD + "integer")) == [NUMBER_CLASS]
    assert kb.types_of(Literal("hello")) == [STRING_CLASS]


def test_types_of_untyped_entity_is_empty(berlin_kb):
    assert berlin_kb.types_of(RES + "Germany") != []
    assert berlin_kb.types_of(DBO + "leader") == []


def test_literal_subject_rejected():
    with pytest.raises(ValueError):
        KnowledgeBase([Triple("has space", "http://x/p", "http://x/b")])


def test_fixture_round_trip(berlin_kb, golden_kb):
    for kb in (berlin_kb, golden_kb):
        again = load_ntriples(kb.to_ntriples())
        assert again.triples == kb.triples


def test_decamelize():
    assert decamelize("birthPlace") == "birth place"
    assert decamelize("leaderTitle") == "leader title"
    assert decamelize("Cities_in_Germany") == "cities in germany"


def test_shorten_iri():
    prefixes = {"res": RES, "dbo": DBO}
    assert shorten_iri(RES + "Berlin", prefixes) == "res:Berlin"
    assert shorten_iri("http://other/x", prefixes) == "http://other/x"


_iris = st.sampled_from([f"http://t/{c}" for c in "abcdefgh"])
_preds = st.sampled_from([f"http://t/p{i}" for i in range(4)])
_literals = st.builds(
    Literal,
    st.sampled_from(['v1', 'v "2"', 'v\\3', 'line\nbreak', 'tab\there']),
    st.sampled_from([XSD + "string", XSD + "date", XSD + "integer"]),
)
_terms = st.one_of(_iris, _literals)
_triples = st.builds(Triple, _iris, _preds, _terms)
_kbs = st.lists(_triples, max_size=30).map(KnowledgeBase)


@settings(max_examples=60, derandomize=True)
@given(_kbs)
def test_round_trip_property(kb):
    assert load_ntriples(kb.to_ntriples()).triples == kb.triples


@settings(max_examples=60, derandomize=True)
@given(_kbs)
def test_index_inversion_property(kb):
    for s, pairs in kb.out_index.items():
        for p, o in pairs:
            assert (p, s) in kb.in_index[o]
    for o, pairs in kb.in_index.items():
        for p, s in pairs:
            assert (p, o) in kb.out_index[s]


@settings(max_examples=60, derandomize=True)
@given(_kbs, _terms)
def test_neighbor_count_matches_degree(kb, node):
    out_deg = sum(1 for t in kb.triples if t.subject == node)
    in_deg = sum(1 for t in kb.triples if t.object == node)
    assert len(kb.neighbors(node)) == out_deg + in_deg


@settings(max_examples=60, derandomize=True)
@given(_kbs, _terms)
def test_neighbors_sorted_deterministically(kb, node):
    edges = kb.neighbors(node)
    keys = [(p, term_text(o), d.value) for p, o, d in edges]
    assert keys == sorted(keys)
