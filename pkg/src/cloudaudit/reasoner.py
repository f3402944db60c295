"""RDFS materialization: subclass transitivity and instance type lifting.

Two rules run to a least fixpoint over the asserted graph:

  R1  x subClassOf y, y subClassOf z  =>  x subClassOf z
  R2  i type C, C subClassOf D        =>  i type D

Reflexivity of subClassOf is answered by `subclasses_of` rather than being
materialized, which keeps inferred graphs small.  Domain/range entailment is
deliberately not applied: the model declares domains and ranges as
documentation, and materializing them would type nodes nobody asserted.

Cycles in subClassOf are fine; the fixpoint still terminates because the
closure is bounded by the square of the vocabulary.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .rdf import Graph, Iri, Term, Triple, TriplePattern, Var
from .vocab import RDF_TYPE, RDFS_SUBCLASS_OF


@dataclass
class ClosureResult:
    """Materialized graph with bookkeeping about the run."""

    graph: Graph
    inferred_count: int
    iterations: int


def materialize(asserted: Graph) -> ClosureResult:
    """Compute the R1/R2 closure of a graph.

    The asserted graph is not modified; the result holds a fresh graph
    containing asserted plus inferred triples.
    """
    graph = asserted.copy()
    iterations = 0
    added = 0
    while True:
        iterations += 1
        fresh: list[Triple] = []
        sub_edges = graph.match(TriplePattern(Var("x"), RDFS_SUBCLASS_OF, Var("y")))
        supers: dict[Term, list[Term]] = {}
        for t in sub_edges:
            supers.setdefault(t.subject, []).append(t.object)
        for t in sub_edges:
            for z in supers.get(t.object, ()):
                candidate = Triple(t.subject, RDFS_SUBCLASS_OF, z)
                if candidate not in graph:
                    fresh.append(candidate)
        for t in graph.match(TriplePattern(Var("i"), RDF_TYPE, Var("c"))):
            for d in supers.get(t.object, ()):
                candidate = Triple(t.subject, RDF_TYPE, d)
                if candidate not in graph:
                    fresh.append(candidate)
        new_this_round = graph.update(fresh)
        added += new_this_round
        if new_this_round == 0:
            return ClosureResult(graph=graph, inferred_count=added, iterations=iterations)


def subclasses_of(graph: Graph, cls: Iri) -> set[Iri]:
    """Reflexive-transitive subclass set of a class.

    Walks subClassOf edges backwards from `cls`; the class itself is always
    included.  Blank-node subclasses are traversed but only IRIs are
    reported.
    """
    seen: set[Term] = {cls}
    queue = deque([cls])
    while queue:
        current = queue.popleft()
        for sub in graph.subjects(RDFS_SUBCLASS_OF, current):
            if sub not in seen:
                seen.add(sub)
                queue.append(sub)
    return {c for c in seen if isinstance(c, Iri)}
