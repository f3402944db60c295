"""Standards-coverage reports for cloud engine instances.

A standard declared by an engine's security policy counts as covered when
an interface attached to the engine either implements it directly or links
(one hop, via an authentication / authorization / encryption / transport /
identity-provider property) to a security mechanism that implements it.
Coverage is engine-scoped on purpose: facts about services the engine does
not attach never cover it.  Standards match by exact IRI; no hierarchy
among them is assumed.

Every covered standard carries its full evidence chain so reports can be
replayed against the graph, and every gap can be paired with remediation
hints naming the model nodes that do implement the missing standard.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .rdf import Graph, Iri, Literal, PrefixMap, Triple
from .vocab import (
    ATTACHMENT_PROPERTIES,
    COMPLIES_WITH,
    HAS_SECURITY_POLICY,
    IMPLEMENTS_STANDARD,
    MECHANISM_PROPERTIES,
    RDFS_LABEL,
)


class NoPolicyError(ValueError):
    """The engine has no sec:hasSecurityPolicy triple."""

    def __init__(self, engine: Iri):
        super().__init__(f"engine {engine.value} declares no security policy")
        self.engine = engine


class CoverageState(enum.Enum):
    COVERED = "Covered"
    GAP = "Gap"


class EvidenceKind(enum.Enum):
    DIRECT = "Direct"
    MECHANISM = "Mechanism"


@dataclass(frozen=True)
class CoverageEvidence:
    """One replayable reason a standard is covered.

    Direct evidence cites (interface, implementsStandard, standard);
    mechanism evidence adds the linking hop (interface, linking_property,
    mechanism) followed by (mechanism, implementsStandard, standard).
    """

    standard: Iri
    interface: Iri
    via: EvidenceKind
    mechanism: Iri | None = None
    linking_property: Iri | None = None

    def __post_init__(self):
        mediated = self.via is EvidenceKind.MECHANISM
        if mediated != (self.mechanism is not None and self.linking_property is not None):
            raise ValueError("mechanism evidence requires mechanism and linking property")

    def cited_triples(self) -> list[Triple]:
        if self.via is EvidenceKind.DIRECT:
            return [Triple(self.interface, IMPLEMENTS_STANDARD, self.standard)]
        return [
            Triple(self.interface, self.linking_property, self.mechanism),
            Triple(self.mechanism, IMPLEMENTS_STANDARD, self.standard),
        ]

    def to_json_dict(self) -> dict:
        out = {"interface": self.interface.value, "via": self.via.value}
        if self.via is EvidenceKind.MECHANISM:
            out["linkingProperty"] = self.linking_property.value
            out["mechanism"] = self.mechanism.value
        return out


@dataclass(frozen=True)
class StandardStatus:
    standard: Iri
    label: str | None
    state: CoverageState
    evidence: tuple[CoverageEvidence, ...]


@dataclass
class ComplianceReport:
    engine: Iri
    policy: Iri
    statuses: list[StandardStatus]
    gap_count: int
    warnings: list[str] = field(default_factory=list)

    @property
    def gaps(self) -> list[Iri]:
        return [s.standard for s in self.statuses if s.state is CoverageState.GAP]

    def to_json_dict(self) -> dict:
        return {
            "engine": self.engine.value,
            "policy": self.policy.value,
            "standards": [
                {
                    "iri": s.standard.value,
                    "label": s.label,
                    "state": s.state.value,
                    "evidence": [e.to_json_dict() for e in s.evidence],
                }
                for s in self.statuses
            ],
            "gaps": [g.value for g in self.gaps],
            "warnings": list(self.warnings),
        }

    def to_text(self, prefixes: PrefixMap | None = None) -> str:
        def show(iri: Iri) -> str:
            if prefixes is not None:
                compact = prefixes.compact(iri)
                if compact is not None:
                    return compact
            return f"<{iri.value}>"

        covered = len(self.statuses) - self.gap_count
        lines = [
            f"engine: {show(self.engine)}",
            f"policy: {show(self.policy)}",
            f"standards: {len(self.statuses)} declared, {covered} covered, {self.gap_count} gap(s)",
        ]
        for warning in self.warnings:
            lines.append(f"warning: {warning}")
        lines.append("")
        for status in self.statuses:
            tag = "COVERED" if status.state is CoverageState.COVERED else "GAP    "
            label = f"  ({status.label})" if status.label else ""
            lines.append(f"{tag}  {show(status.standard)}{label}")
            for ev in status.evidence:
                if ev.via is EvidenceKind.DIRECT:
                    lines.append(f"         via {show(ev.interface)} (direct)")
                else:
                    lines.append(
                        f"         via {show(ev.interface)} -> "
                        f"{show(ev.linking_property)} -> {show(ev.mechanism)}"
                    )
        return "\n".join(lines)


def attached_interfaces(graph: Graph, engine: Iri) -> set[Iri]:
    """Objects of the four interface attachment properties on the engine."""
    found: set[Iri] = set()
    for prop in ATTACHMENT_PROPERTIES:
        for obj in graph.objects(engine, prop):
            if isinstance(obj, Iri):
                found.add(obj)
    return found


def standards_of(graph: Graph, node: Iri) -> set[Iri]:
    """Standards a node claims to implement (exact-IRI objects)."""
    return {o for o in graph.objects(node, IMPLEMENTS_STANDARD) if isinstance(o, Iri)}


def _label_of(graph: Graph, node: Iri) -> str | None:
    for obj in graph.objects(node, RDFS_LABEL):
        if isinstance(obj, Literal):
            return obj.lexical
    return None


def coverage(graph: Graph, engine: Iri) -> ComplianceReport:
    """Compute the coverage report for one engine over a (typically
    materialized) graph.

    Raises NoPolicyError when the engine has no security policy.  Multiple
    policies produce a warning and the union of their declared standards.
    """
    policies = sorted(
        (p for p in graph.objects(engine, HAS_SECURITY_POLICY) if isinstance(p, Iri)),
        key=lambda p: p.value,
    )
    if not policies:
        raise NoPolicyError(engine)
    warnings = []
    if len(policies) > 1:
        listed = ", ".join(p.value for p in policies)
        warnings.append(f"engine declares multiple security policies ({listed}); using the union of their standards")

    declared: set[Iri] = set()
    for policy in policies:
        declared.update(o for o in graph.objects(policy, COMPLIES_WITH) if isinstance(o, Iri))

    interfaces = sorted(attached_interfaces(graph, engine), key=lambda i: i.value)
    statuses = []
    gap_count = 0
    for standard in sorted(declared, key=lambda s: s.value):
        evidence: list[CoverageEvidence] = []
        for interface in interfaces:
            if standard in standards_of(graph, interface):
                evidence.append(
                    CoverageEvidence(
                        standard=standard, interface=interface, via=EvidenceKind.DIRECT
                    )
                )
            for prop in MECHANISM_PROPERTIES:
                for mechanism in graph.objects(interface, prop):
                    if not isinstance(mechanism, Iri):
                        continue
                    if standard in standards_of(graph, mechanism):
                        evidence.append(
                            CoverageEvidence(
                                standard=standard,
                                interface=interface,
                                via=EvidenceKind.MECHANISM,
                                mechanism=mechanism,
                                linking_property=prop,
                            )
                        )
        state = CoverageState.COVERED if evidence else CoverageState.GAP
        if state is CoverageState.GAP:
            gap_count += 1
        statuses.append(
            StandardStatus(
                standard=standard,
                label=_label_of(graph, standard),
                state=state,
                evidence=tuple(evidence),
            )
        )
    return ComplianceReport(
        engine=engine,
        policy=policies[0],
        statuses=statuses,
        gap_count=gap_count,
        warnings=warnings,
    )


def remediation_hints(
    report: ComplianceReport, graph: Graph, prefixes: PrefixMap | None = None
) -> list[str]:
    """One actionable line per gap: who in the model implements the missing
    standard, or a statement that nobody does."""

    def show(iri: Iri) -> str:
        if prefixes is not None:
            compact = prefixes.compact(iri)
            if compact is not None:
                return compact
        return f"<{iri.value}>"

    hints = []
    for standard in report.gaps:
        implementers = sorted(
            {s for s in graph.subjects(IMPLEMENTS_STANDARD, standard) if isinstance(s, Iri)},
            key=lambda s: s.value,
        )
        if implementers:
            names = ", ".join(show(i) for i in implementers)
            hints.append(
                f"{show(standard)}: implemented in the model by {names}; "
                f"attach one of them to {show(report.engine)}"
            )
        else:
            hints.append(f"{show(standard)}: no node in the model implements this standard")
    return hints


def coverage_queries(engine: Iri, standard: Iri) -> list[str]:
    """Query texts whose union of results decides coverage of one standard.

    Each query is in the supported SELECT subset (BGP + FILTER EXISTS);
    the standard is covered exactly when at least one query returns a row.
    Used as an independent cross-check of `coverage`.
    """
    queries = []
    for attach in ATTACHMENT_PROPERTIES:
        queries.append(
            "SELECT ?i WHERE { "
            f"<{engine.value}> <{attach.value}> ?i . "
            f"FILTER EXISTS {{ ?i <{IMPLEMENTS_STANDARD.value}> <{standard.value}> }} "
            "}"
        )
        for link in MECHANISM_PROPERTIES:
            queries.append(
                "SELECT ?i WHERE { "
                f"<{engine.value}> <{attach.value}> ?i . "
                f"FILTER EXISTS {{ ?i <{link.value}> ?m . "
                f"?m <{IMPLEMENTS_STANDARD.value}> <{standard.value}> }} "
                "}"
            )
    return queries
