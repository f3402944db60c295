"""In-memory RDF substrate: terms, triples, indexed graphs, prefix maps.

Terms compare by byte equality of their string parts; IRIs are opaque keys
(no normalization, no dereferencing).  Graphs have set semantics and keep
subject/predicate/object indexes consistent with the triple set.  A graph is
single-writer during construction and safe for concurrent reads afterwards.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

_IRI_FORBIDDEN = set('<>"')


class UnknownPrefixError(KeyError):
    """A prefixed name used a label with no namespace binding."""

    def __init__(self, label: str):
        super().__init__(label)
        self.label = label

    def __str__(self) -> str:
        return f"unknown prefix: {self.label!r}"


@dataclass(frozen=True)
class Iri:
    """An absolute IRI, compared byte-for-byte."""

    value: str

    def __post_init__(self):
        if not self.value:
            raise ValueError("IRI must be non-empty")
        for c in self.value:
            if c.isspace() or c in _IRI_FORBIDDEN:
                raise ValueError(f"IRI contains forbidden character {c!r}: {self.value!r}")

    def __repr__(self) -> str:
        return f"Iri({self.value!r})"


@dataclass(frozen=True)
class BlankNode:
    """Graph-local anonymous node; identity is meaningful only within one graph."""

    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("blank node label must be non-empty")

    def __repr__(self) -> str:
        return f"BlankNode({self.label!r})"


XSD_STRING = Iri("http://www.w3.org/2001/XMLSchema#string")
XSD_INTEGER = Iri("http://www.w3.org/2001/XMLSchema#integer")


@dataclass(frozen=True)
class Literal:
    """A literal with a lexical form and a datatype (plain strings by default).

    Comparison is pairwise byte equality of (lexical, datatype); no
    datatype-aware value comparison is performed.
    """

    lexical: str
    datatype: Iri = XSD_STRING

    def __repr__(self) -> str:
        if self.datatype == XSD_STRING:
            return f"Literal({self.lexical!r})"
        return f"Literal({self.lexical!r}, {self.datatype.value!r})"


Term = Union[Iri, BlankNode, Literal]


def term_sort_key(term: Term) -> str:
    """Canonical string form used for deterministic ordering of terms.

    Literals sort before IRIs, IRIs before blank nodes ('"' < '<' < '_').
    """
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    return f'"{term.lexical}"^^<{term.datatype.value}>'


def term_json(term: Term) -> dict:
    """Render a term as a {type, value} mapping for JSON output."""
    if isinstance(term, Iri):
        return {"type": "iri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"type": "bnode", "value": term.label}
    return {"type": "literal", "value": term.lexical}


@dataclass(frozen=True)
class Triple:
    """An immutable RDF triple; well-formedness is enforced at construction."""

    subject: Term
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"subject must be an IRI or blank node, got {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise TypeError(f"predicate must be an IRI, got {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TypeError(f"object must be a term, got {self.object!r}")

    def sort_key(self) -> tuple[str, str, str]:
        return (
            term_sort_key(self.subject),
            term_sort_key(self.predicate),
            term_sort_key(self.object),
        )


@dataclass(frozen=True)
class Var:
    """A named variable slot in a triple pattern."""

    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")


PatternTerm = Union[Term, Var]


@dataclass(frozen=True)
class TriplePattern:
    """A triple with variables allowed in any position."""

    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm

    def binding(self, triple: Triple) -> Optional[dict[str, Term]]:
        """Unify against a concrete triple; returns variable bindings or None.

        A variable repeated within the pattern must bind the same term in
        every position.
        """
        bound: dict[str, Term] = {}
        for slot, actual in (
            (self.subject, triple.subject),
            (self.predicate, triple.predicate),
            (self.object, triple.object),
        ):
            if isinstance(slot, Var):
                seen = bound.get(slot.name)
                if seen is None:
                    bound[slot.name] = actual
                elif seen != actual:
                    return None
            elif slot != actual:
                return None
        return bound

    def variables(self) -> list[str]:
        """Variable names in subject, predicate, object order, deduplicated."""
        names: list[str] = []
        for slot in (self.subject, self.predicate, self.object):
            if isinstance(slot, Var) and slot.name not in names:
                names.append(slot.name)
        return names

    def substitute(self, bindings: dict[str, Term]) -> "TriplePattern":
        """Replace bound variables with their terms."""

        def sub(slot: PatternTerm) -> PatternTerm:
            if isinstance(slot, Var) and slot.name in bindings:
                return bindings[slot.name]
            return slot

        return TriplePattern(sub(self.subject), sub(self.predicate), sub(self.object))


class Graph:
    """A set of triples with subject/predicate/object lookup indexes.

    Insertion is idempotent (set semantics).  Iteration follows insertion
    order; `match` results are always sorted, so reports built from a graph
    are reproducible regardless of load order.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: dict[Triple, None] = {}
        self._by_subject: dict[Term, set[Triple]] = {}
        self._by_predicate: dict[Iri, set[Triple]] = {}
        self._by_object: dict[Term, set[Triple]] = {}
        for t in triples:
            self.add(t)

    def add(self, triple: Triple) -> bool:
        """Insert a triple; returns True iff it was not already present."""
        if triple in self._triples:
            return False
        self._triples[triple] = None
        self._by_subject.setdefault(triple.subject, set()).add(triple)
        self._by_predicate.setdefault(triple.predicate, set()).add(triple)
        self._by_object.setdefault(triple.object, set()).add(triple)
        return True

    def update(self, triples: Iterable[Triple]) -> int:
        """Insert many triples; returns how many were new."""
        return sum(1 for t in triples if self.add(t))

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def copy(self) -> "Graph":
        return Graph(self._triples)

    def match(self, pattern: TriplePattern) -> list[Triple]:
        """All triples unifying with the pattern, sorted by (s, p, o) form."""
        candidates = self._candidates(pattern)
        hits = [t for t in candidates if pattern.binding(t) is not None]
        hits.sort(key=Triple.sort_key)
        return hits

    def _candidates(self, pattern: TriplePattern) -> Iterable[Triple]:
        # narrow by the most selective concrete position
        pools = []
        if not isinstance(pattern.subject, Var):
            pools.append(self._by_subject.get(pattern.subject, set()))
        if not isinstance(pattern.predicate, Var):
            pools.append(self._by_predicate.get(pattern.predicate, set()))
        if not isinstance(pattern.object, Var):
            pools.append(self._by_object.get(pattern.object, set()))
        if not pools:
            return self._triples
        return min(pools, key=len)

    def objects(self, subject: Term, predicate: Iri) -> list[Term]:
        """Sorted objects of (subject, predicate, ?)."""
        return [t.object for t in self.match(TriplePattern(subject, predicate, Var("o")))]

    def subjects(self, predicate: Iri, obj: Term) -> list[Term]:
        """Sorted subjects of (?, predicate, obj)."""
        return [t.subject for t in self.match(TriplePattern(Var("s"), predicate, obj))]

    def __repr__(self) -> str:
        return f"Graph({len(self)} triples)"


# Local names our Turtle subset can write: start with alnum/underscore, may
# contain '.' and '-' inside, never end with '.'; empty is allowed.
_LOCAL_RE = re.compile(r"^(?:[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?)?$")
_PREFIX_LABEL_RE = re.compile(r"^(?:[A-Za-z_][A-Za-z0-9_-]*)?$")


def is_local_name(text: str) -> bool:
    return bool(_LOCAL_RE.match(text))


def is_prefix_label(text: str) -> bool:
    return bool(_PREFIX_LABEL_RE.match(text))


class PrefixMap:
    """Prefix label -> namespace IRI bindings with Turtle last-write-wins."""

    def __init__(self, bindings: Optional[dict[str, str]] = None):
        self._bindings: dict[str, str] = {}
        for label, ns in (bindings or {}).items():
            self.bind(label, ns)

    def bind(self, label: str, namespace: Union[str, Iri]) -> None:
        if not is_prefix_label(label):
            raise ValueError(f"invalid prefix label: {label!r}")
        ns = namespace.value if isinstance(namespace, Iri) else namespace
        Iri(ns)  # validate
        self._bindings[label] = ns

    def namespace(self, label: str) -> str:
        try:
            return self._bindings[label]
        except KeyError:
            raise UnknownPrefixError(label) from None

    def expand(self, qname: str) -> Iri:
        """Expand 'label:local' to a full IRI; raises UnknownPrefixError."""
        label, sep, local = qname.partition(":")
        if not sep:
            raise ValueError(f"not a prefixed name (missing ':'): {qname!r}")
        return Iri(self.namespace(label) + local)

    def compact(self, iri: Iri) -> Optional[str]:
        """Shortest prefixed form of an IRI, or None when not expressible.

        Picks the longest bound namespace that prefixes the IRI (smallest
        label on ties) and requires the remainder to be a writable local
        name, so expand(compact(iri)) round-trips exactly.
        """
        best: Optional[tuple[int, str, str]] = None
        for label, ns in self._bindings.items():
            if not iri.value.startswith(ns):
                continue
            local = iri.value[len(ns):]
            if not is_local_name(local):
                continue
            key = (-len(ns), label, local)
            if best is None or key < best:
                best = key
        if best is None:
            return None
        return f"{best[1]}:{best[2]}"

    @property
    def bindings(self) -> dict[str, str]:
        return dict(self._bindings)

    def items(self) -> list[tuple[str, str]]:
        return sorted(self._bindings.items())

    def copy(self) -> "PrefixMap":
        return PrefixMap(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __contains__(self, label: str) -> bool:
        return label in self._bindings


def _bnode_labels(triple: Triple) -> list[str]:
    out = []
    if isinstance(triple.subject, BlankNode):
        out.append(triple.subject.label)
    if isinstance(triple.object, BlankNode):
        out.append(triple.object.label)
    return out


def _rename(triple: Triple, mapping: dict[str, str]) -> Triple:
    s = triple.subject
    o = triple.object
    if isinstance(s, BlankNode):
        s = BlankNode(mapping[s.label])
    if isinstance(o, BlankNode):
        o = BlankNode(mapping[o.label])
    return Triple(s, triple.predicate, o)


def _signature(label: str, triples: list[Triple]) -> tuple:
    """Relabeling-invariant profile of one blank node's occurrences."""
    marks = []
    for t in triples:
        s_is = isinstance(t.subject, BlankNode) and t.subject.label == label
        o_is = isinstance(t.object, BlankNode) and t.object.label == label
        if not (s_is or o_is):
            continue
        other_s = "*" if isinstance(t.subject, BlankNode) else term_sort_key(t.subject)
        other_o = "*" if isinstance(t.object, BlankNode) else term_sort_key(t.object)
        marks.append((s_is, o_is, term_sort_key(t.predicate), other_s, other_o))
    marks.sort()
    return tuple(marks)


def isomorphic(a: Graph, b: Graph) -> bool:
    """True iff some bijective blank-node relabeling maps a exactly onto b."""
    if len(a) != len(b):
        return False
    a_bn = [t for t in a if _bnode_labels(t)]
    b_bn = [t for t in b if _bnode_labels(t)]
    if {t for t in a if not _bnode_labels(t)} != {t for t in b if not _bnode_labels(t)}:
        return False
    if len(a_bn) != len(b_bn):
        return False
    a_nodes = sorted({lbl for t in a_bn for lbl in _bnode_labels(t)})
    b_nodes = sorted({lbl for t in b_bn for lbl in _bnode_labels(t)})
    if len(a_nodes) != len(b_nodes):
        return False
    a_sig = {n: _signature(n, a_bn) for n in a_nodes}
    b_sig = {n: _signature(n, b_bn) for n in b_nodes}
    if sorted(a_sig.values()) != sorted(b_sig.values()):
        return False
    b_set = set(b_bn)

    def assign(i: int, mapping: dict[str, str], used: set[str]) -> bool:
        if i == len(a_nodes):
            return {_rename(t, mapping) for t in a_bn} == b_set
        node = a_nodes[i]
        for cand in b_nodes:
            if cand in used or a_sig[node] != b_sig[cand]:
                continue
            mapping[node] = cand
            used.add(cand)
            if assign(i + 1, mapping, used):
                return True
            del mapping[node]
            used.remove(cand)
        return False

    return assign(0, {}, set())
