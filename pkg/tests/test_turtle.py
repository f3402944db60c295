"""Parser/serializer behavior: supported subset, rejections, round-trips."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cloudaudit.rdf import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    PrefixMap,
    Triple,
    Var,
    TriplePattern,
    XSD_INTEGER,
    isomorphic,
)
from cloudaudit.turtle import Document, ErrorKind, ParseError, parse_turtle, serialize_turtle
from cloudaudit.vocab import RDF_TYPE, RDFS_DOMAIN, RDFS_RESOURCE, RDFS_SUBCLASS_OF

from oracles import CLOUDENG, SEC, ce, sec

# triple counts confirmed once against an independent statement counter
MODEL_TRIPLES = 282
GAP_TRIPLES = 281
SHAPES_TRIPLES = 6

HEADER = f"@prefix cloudeng: <{CLOUDENG}> .\n@prefix sec: <{SEC}> .\n"


class TestParse:
    def test_single_statement_uses_rdf_type(self):
        doc = parse_turtle(HEADER + "cloudeng:OCCI a cloudeng:ControlInterface .\n")
        assert set(doc.graph) == {Triple(ce("OCCI"), RDF_TYPE, ce("ControlInterface"))}

    def test_empty_and_comment_only_input(self):
        for text in ("", "   \n\t\n", "# nothing here\n# at all\n"):
            doc = parse_turtle(text)
            assert len(doc.graph) == 0
            assert len(doc.prefixes) == 0

    def test_model_fixture_reference_counts(self, model_doc, gap_doc, shapes_doc):
        assert len(model_doc.graph) == MODEL_TRIPLES
        assert len(gap_doc.graph) == GAP_TRIPLES
        assert len(shapes_doc.graph) == SHAPES_TRIPLES

    def test_model_fixture_prefixes(self, model_doc):
        assert len(model_doc.prefixes) == 11
        assert model_doc.prefixes.expand("csa:IVS-02") == Iri(
            "https://cloudsecurityalliance.org/artifacts/cloud-controls-matrix/#IVS-02"
        )

    def test_comment_inside_object_list(self):
        text = HEADER + (
            "@prefix iso27001: <https://www.iso.org/standard/27001#> .\n"
            "sec:OAuth2 sec:implementsStandard iso27001:A.9.2.2,    # comment\n"
            "  iso27001:A.9.4.2 .\n"
        )
        doc = parse_turtle(text)
        assert len(doc.graph) == 2
        objects = {t.object.value for t in doc.graph}
        assert objects == {
            "https://www.iso.org/standard/27001#A.9.2.2",
            "https://www.iso.org/standard/27001#A.9.4.2",
        }

    def test_statement_dot_directly_after_local_name(self):
        doc = parse_turtle(HEADER + "sec:A a sec:B.\nsec:C a sec:D .")
        assert len(doc.graph) == 2

    def test_local_names_with_interior_dots_and_dashes(self):
        text = (
            "@prefix iso27001: <https://www.iso.org/standard/27001#> .\n"
            "@prefix nist80053: <https://csrc.nist.gov/sp800-53#> .\n"
            "iso27001:A.9.4.1 nist80053:AC-3 iso27001:A.12.4.1 .\n"
        )
        doc = parse_turtle(text)
        (t,) = list(doc.graph)
        assert t.subject.value.endswith("#A.9.4.1")
        assert t.predicate.value.endswith("#AC-3")
        assert t.object.value.endswith("#A.12.4.1")

    def test_predicate_list_and_trailing_semicolon(self):
        doc = parse_turtle(HEADER + "sec:X a sec:C ;\n  sec:p sec:Y ;\n.")
        assert len(doc.graph) == 2

    def test_anonymous_property_list_object(self):
        text = HEADER + (
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
            "sec:implementsStandard rdfs:domain [ rdfs:subClassOf rdfs:Resource ] .\n"
        )
        doc = parse_turtle(text)
        assert len(doc.graph) == 2
        (domain,) = [t for t in doc.graph if t.predicate == RDFS_DOMAIN]
        node = domain.object
        assert isinstance(node, BlankNode) and node.label == "b1"
        assert Triple(node, RDFS_SUBCLASS_OF, RDFS_RESOURCE) in doc.graph

    def test_anonymous_property_list_subject(self):
        doc = parse_turtle(HEADER + "[ sec:p sec:X ] sec:q sec:Y .")
        assert len(doc.graph) == 2
        doc2 = parse_turtle(HEADER + "[ sec:p sec:X ] .")
        assert len(doc2.graph) == 1

    def test_empty_anonymous_node(self):
        doc = parse_turtle(HEADER + "sec:X sec:p [] .")
        (t,) = list(doc.graph)
        assert isinstance(t.object, BlankNode)

    def test_integer_literal(self):
        doc = parse_turtle("@prefix sh: <http://www.w3.org/ns/shacl#> .\n[ sh:minCount 1 ] .")
        (t,) = list(doc.graph)
        assert t.object == Literal("1", XSD_INTEGER)

    def test_string_escapes_decode(self):
        doc = parse_turtle(HEADER + 'sec:X sec:p "a\\"b\\\\c\\nd\\te" .')
        (t,) = list(doc.graph)
        assert t.object == Literal('a"b\\c\nd\te')

    def test_iri_unicode_escapes(self):
        doc = parse_turtle("<http://x.test/\\u0041\\U00000042> a <http://x.test/C> .")
        (t,) = list(doc.graph)
        assert t.subject == Iri("http://x.test/AB")

    def test_prefixes_can_be_rebound_mid_document(self):
        doc = parse_turtle(
            "@prefix p: <http://one.test/> .\n"
            "p:x a p:C .\n"
            "@prefix p: <http://two.test/> .\n"
            "p:x a p:C .\n"
        )
        subjects = {t.subject.value for t in doc.graph}
        assert subjects == {"http://one.test/x", "http://two.test/x"}
        assert doc.prefixes.expand("p:x") == Iri("http://two.test/x")

    def test_blank_node_labels_are_deterministic(self):
        text = HEADER + "sec:X sec:p [ sec:q [ sec:r sec:Y ] ], [ sec:s sec:Z ] ."
        first = parse_turtle(text)
        second = parse_turtle(text)
        assert set(first.graph) == set(second.graph)
        labels = sorted(
            t.subject.label for t in first.graph if isinstance(t.subject, BlankNode)
        )
        assert labels == ["b1", "b2", "b3"]


def error_for(text: str) -> ParseError:
    with pytest.raises(ParseError) as info:
        parse_turtle(text)
    return info.value


class TestRejections:
    def test_base_directive(self):
        err = error_for("@base <http://x.test/> .\n")
        assert err.kind is ErrorKind.UNEXPECTED_TOKEN
        assert (err.line, err.column) == (1, 1)

    def test_language_tag(self):
        err = error_for(HEADER + 'sec:X sec:p "hi"@en .')
        assert err.kind is ErrorKind.UNEXPECTED_TOKEN

    def test_datatype_annotation(self):
        err = error_for(HEADER + 'sec:X sec:p "1"^^sec:t .')
        assert err.kind is ErrorKind.UNEXPECTED_TOKEN

    def test_collection_syntax(self):
        err = error_for(HEADER + "sec:X sec:p (sec:Y) .")
        assert err.kind is ErrorKind.UNEXPECTED_TOKEN

    def test_decimal_number(self):
        err = error_for(HEADER + "sec:X sec:p 1.5 .")
        assert err.kind is ErrorKind.UNEXPECTED_TOKEN

    def test_boolean_keyword(self):
        err = error_for(HEADER + "sec:X sec:p true .")
        assert err.kind is ErrorKind.UNEXPECTED_TOKEN

    def test_unknown_prefix_with_position(self):
        err = error_for(HEADER + "nosuch:x a sec:C .")
        assert err.kind is ErrorKind.UNKNOWN_PREFIX
        assert (err.line, err.column) == (3, 1)

    def test_unterminated_string(self):
        err = error_for(HEADER + 'sec:X sec:p "no end')
        assert err.kind is ErrorKind.UNTERMINATED_STRING

    def test_unterminated_iri(self):
        err = error_for("<http://x.test/never\n")
        assert err.kind is ErrorKind.UNTERMINATED_IRI

    def test_bad_string_escape(self):
        err = error_for(HEADER + 'sec:X sec:p "a\\qb" .')
        assert err.kind is ErrorKind.BAD_ESCAPE

    def test_bad_iri_escape(self):
        err = error_for("<http://x.test/\\n> a <http://x.test/C> .")
        assert err.kind is ErrorKind.BAD_ESCAPE

    def test_bad_local_name(self):
        err = error_for(HEADER + "sec:.leading a sec:C .")
        assert err.kind is ErrorKind.BAD_LOCAL_NAME

    def test_missing_final_dot(self):
        err = error_for(HEADER + "sec:X a sec:C")
        assert err.kind is ErrorKind.UNEXPECTED_TOKEN


class TestSerialize:
    def test_empty_document(self):
        assert serialize_turtle(Document()) == ""
        only_prefixes = serialize_turtle(Document(prefixes=PrefixMap({"sec": SEC})))
        assert only_prefixes == f"@prefix sec: <{SEC}> .\n"

    def test_single_triple_statement(self):
        doc = Document(Graph([Triple(sec("X"), RDF_TYPE, sec("C"))]), PrefixMap({"sec": SEC}))
        assert serialize_turtle(doc) == f"@prefix sec: <{SEC}> .\n\nsec:X a sec:C .\n"

    def test_model_round_trip_isomorphic(self, model_doc):
        text = serialize_turtle(model_doc)
        again = parse_turtle(text)
        assert isomorphic(model_doc.graph, again.graph)
        assert len(again.graph) == MODEL_TRIPLES

    def test_serialization_is_a_fixpoint(self, model_doc, shapes_doc):
        for doc in (model_doc, shapes_doc):
            once = serialize_turtle(doc)
            assert serialize_turtle(parse_turtle(once)) == once

    def test_shared_blank_node_rejected(self):
        node = BlankNode("shared")
        g = Graph([
            Triple(sec("X"), sec("p"), node),
            Triple(sec("Y"), sec("p"), node),
        ])
        with pytest.raises(ValueError):
            serialize_turtle(Document(g, PrefixMap({"sec": SEC})))

    def test_blank_node_cycle_rejected(self):
        a, b = BlankNode("a"), BlankNode("b")
        g = Graph([Triple(a, sec("p"), b), Triple(b, sec("p"), a)])
        with pytest.raises(ValueError):
            serialize_turtle(Document(g, PrefixMap({"sec": SEC})))

    def test_unwritable_datatype_rejected(self):
        g = Graph([
            Triple(sec("X"), sec("p"), Literal("x", Iri("http://x.test/custom")))
        ])
        with pytest.raises(ValueError):
            serialize_turtle(Document(g, PrefixMap({"sec": SEC})))


# --- generated-document round trip ------------------------------------------

_NS = {"a": "http://gen.test/a#", "b": "http://gen.test/b#"}
_locals = st.sampled_from(["x", "y1", "A.9.4.1", "AC-3", "z_z"])
_gen_iris = st.builds(
    lambda ns, local: Iri(_NS[ns] + local), st.sampled_from(sorted(_NS)), _locals
)
_gen_literals = st.one_of(
    st.builds(Literal, st.text(alphabet='ab"\\\n\t ', max_size=4)),
    st.builds(lambda n: Literal(str(n), XSD_INTEGER), st.integers(0, 99)),
)
_gen_objects = st.one_of(_gen_iris, _gen_literals)
_ground_triples = st.builds(Triple, _gen_iris, _gen_iris, _gen_objects)


@st.composite
def documents(draw):
    graph = Graph(draw(st.lists(_ground_triples, max_size=8)))
    # a few anonymous nodes: each used once as an object, or as a root
    for i in range(draw(st.integers(0, 2))):
        node = BlankNode(f"gen{i}")
        for _ in range(draw(st.integers(0, 2))):
            graph.add(Triple(node, draw(_gen_iris), draw(_gen_objects)))
        as_object = draw(st.booleans())
        if as_object:
            graph.add(Triple(draw(_gen_iris), draw(_gen_iris), node))
        elif not graph.match(TriplePattern(node, Var("p"), Var("o"))):
            continue  # property-less root would carry no triples
    return Document(graph, PrefixMap(_NS))


@given(documents())
@settings(max_examples=60)
def test_round_trip_of_generated_documents(doc):
    text = serialize_turtle(doc)
    again = parse_turtle(text)
    assert isomorphic(doc.graph, again.graph)
    assert serialize_turtle(again) == text


# --- error position accuracy -------------------------------------------------


def _between_token_offsets(text: str) -> list[int]:
    """Offsets with whitespace on both sides, outside strings/comments/IRIs."""
    points = []
    in_str = in_comment = in_iri = escape = False
    for k, c in enumerate(text):
        if (
            0 < k
            and not (in_str or in_comment or in_iri)
            and text[k - 1].isspace()
            and c.isspace()
        ):
            points.append(k)
        if in_comment:
            in_comment = c != "\n"
        elif in_str:
            if escape:
                escape = False
            elif c == "\\":
                escape = True
            elif c == '"':
                in_str = False
        elif in_iri:
            in_iri = c != ">"
        elif c == '"':
            in_str = True
        elif c == "<":
            in_iri = True
        elif c == "#":
            in_comment = True
    return points


@given(st.data())
@settings(max_examples=60)
def test_injected_stray_character_positions(fixtures_text, data):
    text = fixtures_text
    points = _between_token_offsets(text)
    k = data.draw(st.sampled_from(points))
    mutated = text[:k] + "@" + text[k:]
    expected_line = text.count("\n", 0, k) + 1
    last_newline = text.rfind("\n", 0, k)
    expected_col = k - last_newline if last_newline >= 0 else k + 1
    with pytest.raises(ParseError) as info:
        parse_turtle(mutated)
    assert (info.value.line, info.value.column) == (expected_line, expected_col)
    assert info.value.kind is ErrorKind.UNEXPECTED_TOKEN


@pytest.fixture(scope="module")
def fixtures_text(fixtures_dir):
    return (fixtures_dir / "cloudengine.ttl").read_text(encoding="utf-8")
