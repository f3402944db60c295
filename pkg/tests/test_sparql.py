"""Query parsing, BGP evaluation, EXISTS filters, oracle equivalence."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cloudaudit.rdf import Graph, Iri, Literal, Triple, TriplePattern, Var
from cloudaudit.sparql import (
    FilterExistence,
    GraphPattern,
    Polarity,
    Query,
    evaluate,
    parse_query,
)
from cloudaudit.rdf import PrefixMap
from cloudaudit.turtle import ErrorKind, ParseError
from cloudaudit.vocab import RDF_TYPE

from oracles import CLOUDENG, SEC, brute_rows, ce, sec, table_rows

B1_QUERY = """\
PREFIX cloudeng: <http://example.org/cloudengine#>
PREFIX sec: <http://example.org/security#>

SELECT ?data
WHERE {
  ?data a cloudeng:DataInterface .
  FILTER NOT EXISTS { ?data sec:encryptsData ?enc }
}
"""


class TestParse:
    def test_encryption_gap_query_shape(self):
        q = parse_query(B1_QUERY)
        assert q.projection == ["data"]
        assert len(q.where.triples) == 1
        assert q.where.triples[0] == TriplePattern(Var("data"), RDF_TYPE, ce("DataInterface"))
        (flt,) = q.where.filters
        assert flt.polarity is Polarity.NOT_EXISTS
        assert flt.inner.triples == [
            TriplePattern(Var("data"), sec("encryptsData"), Var("enc"))
        ]
        assert not flt.inner.filters

    def test_select_star_empty_group(self):
        q = parse_query("SELECT * WHERE { }")
        assert q.projection is None
        assert q.where.triples == [] and q.where.filters == []

    @pytest.mark.parametrize(
        "text",
        [
            "SELECT ?s WHERE { ?s a ?t OPTIONAL { ?s ?p ?o } }",
            "SELECT ?s WHERE { { ?s ?p ?o } UNION { ?s ?p ?o } }",
            "SELECT ?s WHERE { ?s ?p ?o } ORDER BY ?s",
            "ASK { ?s ?p ?o }",
        ],
    )
    def test_out_of_subset_constructs_rejected(self, text):
        with pytest.raises(ParseError) as info:
            parse_query(text)
        assert info.value.kind is ErrorKind.UNEXPECTED_TOKEN

    def test_unknown_prefix(self):
        with pytest.raises(ParseError) as info:
            parse_query("SELECT ?s WHERE { ?s a nosuch:C }")
        assert info.value.kind is ErrorKind.UNKNOWN_PREFIX

    def test_projection_must_appear_in_where(self):
        with pytest.raises(ParseError):
            parse_query("SELECT ?ghost WHERE { ?s ?p ?o }")

    def test_keywords_are_case_insensitive(self):
        q = parse_query("select ?s where { ?s ?p ?o . filter not exists { ?s ?p ?s } }")
        assert q.projection == ["s"]
        assert q.where.filters[0].polarity is Polarity.NOT_EXISTS

    def test_filters_nest(self):
        q = parse_query(
            "SELECT ?s WHERE { ?s ?p ?o . "
            "FILTER EXISTS { ?s ?q ?r . FILTER NOT EXISTS { ?r ?q ?s } } }"
        )
        (outer,) = q.where.filters
        (inner,) = outer.inner.filters
        assert outer.polarity is Polarity.EXISTS
        assert inner.polarity is Polarity.NOT_EXISTS


class TestEvaluate:
    def test_no_gaps_in_full_model(self, model_graph):
        table = evaluate(parse_query(B1_QUERY), model_graph)
        assert table.variables == ["data"]
        assert table.rows == []

    def test_swift_gap_detected(self, gap_graph):
        table = evaluate(parse_query(B1_QUERY), gap_graph)
        assert table.rows == [(ce("Swift"),)]

    def test_audit_interface_listing(self, model_graph):
        q = parse_query(
            f"PREFIX cloudeng: <{CLOUDENG}>\nSELECT ?s WHERE {{ ?s a cloudeng:AuditInterface }}"
        )
        values = {row[0].value for row in evaluate(q, model_graph).rows}
        assert values == {
            "https://docs.openstack.org/#Ceilometer",
            "https://aws.amazon.com/architecture/well-architected#CloudTrail",
            CLOUDENG + "Syslog",
        }

    def test_empty_bgp_has_one_empty_row(self):
        table = evaluate(parse_query("SELECT * WHERE { }"), Graph())
        assert table.variables == []
        assert table.rows == [()]

    def test_join_on_shared_variable(self, model_graph):
        q = parse_query(
            f"PREFIX cloudeng: <{CLOUDENG}>\nPREFIX sec: <{SEC}>\n"
            "SELECT ?i ?m WHERE { ?i a cloudeng:DataInterface . ?i sec:encryptsData ?m }"
        )
        table = evaluate(q, model_graph)
        assert table_rows(table) == brute_rows(model_graph, q)
        assert len(table.rows) == 2

    def test_correlated_exists_keeps_matching_rows(self, model_graph):
        q = parse_query(
            f"PREFIX cloudeng: <{CLOUDENG}>\nPREFIX sec: <{SEC}>\n"
            "SELECT ?i WHERE { ?i a cloudeng:AuditInterface . "
            "FILTER EXISTS { ?i sec:encryptsData ?e } }"
        )
        # only Syslog among the audit interfaces declares encryption
        assert [row[0] for row in evaluate(q, model_graph).rows] == [ce("Syslog")]

    def test_rows_are_deduplicated(self):
        g = Graph([
            Triple(ce("X"), sec("p"), Literal("1")),
            Triple(ce("X"), sec("q"), Literal("2")),
        ])
        q = parse_query("SELECT ?s WHERE { ?s ?p ?o }")
        assert evaluate(q, g).rows == [(ce("X"),)]

    def test_evaluation_is_deterministic(self, model_graph):
        q = parse_query(B1_QUERY)
        first = evaluate(q, model_graph)
        second = evaluate(q, model_graph)
        assert first.rows == second.rows and first.variables == second.variables

    def test_json_rendering(self, gap_graph):
        payload = evaluate(parse_query(B1_QUERY), gap_graph).to_json_dict()
        assert payload == {
            "head": {"vars": ["data"]},
            "results": {
                "bindings": [
                    {"data": {"type": "iri", "value": CLOUDENG + "Swift"}}
                ]
            },
        }


# --- randomized equivalence against exhaustive enumeration -------------------

_IRIS = [Iri(f"http://q.test/{c}") for c in "abcdefgh"]
_OBJECTS = _IRIS + [Literal("1"), Literal("2")]
_triples_st = st.builds(
    Triple,
    st.sampled_from(_IRIS),
    st.sampled_from(_IRIS),
    st.sampled_from(_OBJECTS),
)
_VARS = [Var("x"), Var("y")]


def _slot_st(concrete):
    return st.one_of(st.sampled_from(_VARS), st.sampled_from(concrete))


_pattern_st = st.builds(
    TriplePattern, _slot_st(_IRIS), _slot_st(_IRIS), _slot_st(_OBJECTS)
)


@st.composite
def _query_st(draw):
    triples = draw(st.lists(_pattern_st, min_size=1, max_size=3))
    filters = []
    if draw(st.booleans()):
        polarity = draw(st.sampled_from([Polarity.EXISTS, Polarity.NOT_EXISTS]))
        inner = GraphPattern(triples=draw(st.lists(_pattern_st, min_size=1, max_size=2)))
        filters.append(FilterExistence(polarity=polarity, inner=inner))
    return Query(
        prefixes=PrefixMap(),
        projection=None,
        where=GraphPattern(triples=triples, filters=filters),
    )


@given(st.lists(_triples_st, max_size=25), _query_st())
@settings(max_examples=60, deadline=None)
def test_matches_brute_force_enumeration(triples, query):
    g = Graph(triples)
    assert table_rows(evaluate(query, g)) == brute_rows(g, query)


@given(st.lists(_triples_st, max_size=25), st.lists(_pattern_st, min_size=1, max_size=2),
       st.lists(_pattern_st, min_size=1, max_size=2))
@settings(max_examples=40, deadline=None)
def test_exists_and_not_exists_partition_the_rows(triples, outer, inner):
    g = Graph(triples)

    def run(filters):
        q = Query(PrefixMap(), None, GraphPattern(triples=list(outer), filters=filters))
        return set(table_rows(evaluate(q, g)))

    unfiltered = run([])
    exists = run([FilterExistence(Polarity.EXISTS, GraphPattern(triples=list(inner)))])
    not_exists = run([FilterExistence(Polarity.NOT_EXISTS, GraphPattern(triples=list(inner)))])
    assert exists | not_exists == unfiltered
    assert not (exists & not_exists)
