"""Turn OpenStack CLI JSON exports into model-aligned instance Turtle.

Consumes the files produced by `openstack endpoint list -f json`,
`openstack project list -f json`, `openstack user list -f json` and
`openstack role assignment list -f json`; it never talks to a cloud
itself.  Key naming is tolerant: both the CLI's title-case headers
("Service Name") and snake_case ("service_name") are accepted.

Mapping rules:

  * one service node per endpoint's service name, typed from the service
    type (identity/network -> control interface, object-store -> data
    interface, metering/telemetry -> audit interface, key-manager -> key
    management, anything else -> plain interface)
  * one endpoint node per record, attached to its service and carrying
    url / interface / region literals
  * projects and users become typed nodes labelled with their names
  * role assignments are reified (one node each) so the role name stays
    queryable alongside the subject and project
  * optional version metadata and policy files attach to the service node
    as version literals and lowercase-hex SHA-256 content hashes

Node IRIs are minted inside a configurable instance namespace with
percent-encoded ids/names, so identical inputs always produce identical
Turtle.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal as TypingLiteral, Sequence
from urllib.parse import quote

from .rdf import Graph, Iri, Literal, PrefixMap, Triple
from .turtle import Document
from . import vocab


class JsonShapeError(ValueError):
    """The CLI export is not shaped like a list of flat records."""


class IngestError(ValueError):
    """A record breaks an invariant; names the record index and field."""


@dataclass(frozen=True)
class EndpointRecord:
    id: str
    service_name: str
    service_type: str
    interface: str
    url: str
    region: str | None = None
    enabled: bool = True


@dataclass(frozen=True)
class ProjectRecord:
    id: str
    name: str
    domain_id: str | None = None
    enabled: bool | None = None


@dataclass(frozen=True)
class UserRecord:
    id: str
    name: str
    domain_id: str | None = None
    enabled: bool | None = None


@dataclass(frozen=True)
class RoleAssignmentRecord:
    role: str
    user_id: str | None = None
    group_id: str | None = None
    project_id: str | None = None


DEFAULT_SERVICE_TYPE_MAP: dict[str, Iri] = {
    "identity": vocab.CONTROL_INTERFACE,
    "object-store": vocab.DATA_INTERFACE,
    "metering": vocab.AUDIT_INTERFACE,
    "telemetry": vocab.AUDIT_INTERFACE,
    "network": vocab.CONTROL_INTERFACE,
    "key-manager": vocab.KEY_MANAGEMENT,
}


@dataclass
class IngestConfig:
    instance_namespace: str = "urn:cloudeng:inst:"
    service_type_map: dict[str, Iri] = field(
        default_factory=lambda: dict(DEFAULT_SERVICE_TYPE_MAP)
    )
    version_metadata: dict[str, str] = field(default_factory=dict)
    policy_files: dict[str, str | Path] = field(default_factory=dict)


RecordKind = TypingLiteral["endpoints", "projects", "users", "assignments"]

# accepted key spellings, CLI header first
_KEYS = {
    "id": ("ID", "id"),
    "name": ("Name", "name"),
    "service_name": ("Service Name", "service_name"),
    "service_type": ("Service Type", "service_type"),
    "interface": ("Interface", "interface"),
    "url": ("URL", "url"),
    "region": ("Region", "region"),
    "enabled": ("Enabled", "enabled"),
    "domain_id": ("Domain ID", "domain_id"),
    "role": ("Role", "role"),
    "user_id": ("User", "user", "user_id"),
    "group_id": ("Group", "group", "group_id"),
    "project_id": ("Project", "project", "project_id"),
}


def _get(obj: dict, index: int, name: str, required: bool):
    for key in _KEYS[name]:
        if key in obj:
            return obj[key]
    if required:
        raise JsonShapeError(
            f"record {index}: missing key {_KEYS[name][0]!r} (or {_KEYS[name][-1]!r})"
        )
    return None


def _opt_str(value) -> str | None:
    if value is None:
        return None
    text = str(value)
    return text if text else None


def _as_bool(value, default: bool | None):
    if value is None:
        return default
    if isinstance(value, bool):
        return value
    return str(value).lower() == "true"


def parse_cli_json(text: str, kind: RecordKind) -> list:
    """Decode one CLI export into typed records.

    Raises JsonShapeError when the payload is not a JSON array of objects
    or a required key is absent under every accepted spelling.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JsonShapeError(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, list):
        raise JsonShapeError(f"expected a JSON array, got {type(payload).__name__}")
    records = []
    for index, obj in enumerate(payload):
        if not isinstance(obj, dict):
            raise JsonShapeError(f"record {index}: expected an object, got {type(obj).__name__}")
        if kind == "endpoints":
            records.append(
                EndpointRecord(
                    id=str(_get(obj, index, "id", required=True)),
                    service_name=str(_get(obj, index, "service_name", required=True)),
                    service_type=str(_get(obj, index, "service_type", required=True)),
                    interface=str(_get(obj, index, "interface", required=True)),
                    url=str(_get(obj, index, "url", required=True)),
                    region=_opt_str(_get(obj, index, "region", required=False)),
                    enabled=_as_bool(_get(obj, index, "enabled", required=False), True),
                )
            )
        elif kind == "projects":
            records.append(
                ProjectRecord(
                    id=str(_get(obj, index, "id", required=True)),
                    name=str(_get(obj, index, "name", required=True)),
                    domain_id=_opt_str(_get(obj, index, "domain_id", required=False)),
                    enabled=_as_bool(_get(obj, index, "enabled", required=False), None),
                )
            )
        elif kind == "users":
            records.append(
                UserRecord(
                    id=str(_get(obj, index, "id", required=True)),
                    name=str(_get(obj, index, "name", required=True)),
                    domain_id=_opt_str(_get(obj, index, "domain_id", required=False)),
                    enabled=_as_bool(_get(obj, index, "enabled", required=False), None),
                )
            )
        elif kind == "assignments":
            records.append(
                RoleAssignmentRecord(
                    role=str(_get(obj, index, "role", required=True)),
                    user_id=_opt_str(_get(obj, index, "user_id", required=False)),
                    group_id=_opt_str(_get(obj, index, "group_id", required=False)),
                    project_id=_opt_str(_get(obj, index, "project_id", required=False)),
                )
            )
        else:
            raise ValueError(f"unknown record kind: {kind!r}")
    return records


def _mint(namespace: str, category: str, raw: str) -> Iri:
    return Iri(f"{namespace}{category}/{quote(raw, safe='')}")


def ingest(
    endpoints: Sequence[EndpointRecord] = (),
    projects: Sequence[ProjectRecord] = (),
    users: Sequence[UserRecord] = (),
    assignments: Sequence[RoleAssignmentRecord] = (),
    config: IngestConfig | None = None,
) -> Document:
    """Build the instance Document for a set of inventory records.

    Raises IngestError (naming record index and field) for invariant
    breaches, and for policy files that cannot be read.
    """
    config = config or IngestConfig()
    ns = config.instance_namespace
    graph = Graph()

    def service_node(name: str) -> Iri:
        return _mint(ns, "service", name)

    for i, ep in enumerate(endpoints):
        if not ep.id:
            raise IngestError(f"endpoints[{i}].id: must be non-empty")
        if not ep.url:
            raise IngestError(f"endpoints[{i}].url: must be non-empty")
        service = service_node(ep.service_name)
        cls = config.service_type_map.get(ep.service_type, vocab.INTERFACE)
        graph.add(Triple(service, vocab.RDF_TYPE, cls))
        graph.add(Triple(service, vocab.RDFS_LABEL, Literal(ep.service_name)))
        endpoint = _mint(ns, "endpoint", ep.id)
        graph.add(Triple(service, vocab.HAS_ENDPOINT, endpoint))
        graph.add(Triple(endpoint, vocab.RDF_TYPE, vocab.ENDPOINT))
        graph.add(Triple(endpoint, vocab.ENDPOINT_URL, Literal(ep.url)))
        graph.add(Triple(endpoint, vocab.ENDPOINT_INTERFACE, Literal(ep.interface)))
        if ep.region is not None:
            graph.add(Triple(endpoint, vocab.ENDPOINT_REGION, Literal(ep.region)))

    for i, pr in enumerate(projects):
        if not pr.id:
            raise IngestError(f"projects[{i}].id: must be non-empty")
        node = _mint(ns, "project", pr.id)
        graph.add(Triple(node, vocab.RDF_TYPE, vocab.PROJECT))
        graph.add(Triple(node, vocab.RDFS_LABEL, Literal(pr.name)))

    for i, ur in enumerate(users):
        if not ur.id:
            raise IngestError(f"users[{i}].id: must be non-empty")
        node = _mint(ns, "user", ur.id)
        graph.add(Triple(node, vocab.RDF_TYPE, vocab.USER))
        graph.add(Triple(node, vocab.RDFS_LABEL, Literal(ur.name)))

    for i, ra in enumerate(assignments):
        if bool(ra.user_id) == bool(ra.group_id):
            raise IngestError(
                f"assignments[{i}].user_id/group_id: exactly one subject must be present"
            )
        node = Iri(f"{ns}assignment/{i + 1}")
        graph.add(Triple(node, vocab.RDF_TYPE, vocab.ROLE_ASSIGNMENT))
        graph.add(Triple(node, vocab.ASSIGNMENT_ROLE, Literal(ra.role)))
        if ra.user_id:
            graph.add(Triple(node, vocab.ASSIGNMENT_USER, _mint(ns, "user", ra.user_id)))
        else:
            graph.add(Triple(node, vocab.ASSIGNMENT_GROUP, _mint(ns, "group", ra.group_id)))
        if ra.project_id:
            graph.add(
                Triple(node, vocab.ASSIGNMENT_PROJECT, _mint(ns, "project", ra.project_id))
            )

    for name in sorted(config.version_metadata):
        graph.add(
            Triple(service_node(name), vocab.SERVICE_VERSION,
                   Literal(config.version_metadata[name]))
        )

    for name in sorted(config.policy_files):
        path = Path(config.policy_files[name])
        try:
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
        except OSError as exc:
            raise IngestError(f"policy file for {name!r} unreadable: {exc}") from exc
        graph.add(Triple(service_node(name), vocab.POLICY_FILE_HASH, Literal(digest)))

    prefixes = PrefixMap(
        {
            "cloudeng": vocab.CLOUDENG_NS,
            "sec": vocab.SEC_NS,
            "rdf": vocab.RDF_NS,
            "rdfs": vocab.RDFS_NS,
            "inst": config.instance_namespace,
        }
    )
    return Document(graph=graph, prefixes=prefixes)
