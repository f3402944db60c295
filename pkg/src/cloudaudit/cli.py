"""Command-line front end: parse, infer, query, validate, compliance, ingest.

Reports go to stdout, diagnostics to stderr, and exit codes are
CI-friendly:

    0  success / conforms / no gaps
    1  usage, I/O or parse error
    2  shape violations present
    3  compliance gaps present

Unless --no-inference is given, query/validate/compliance run against the
RDFS-materialized graph so type queries also see instances typed via
subclasses.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .compliance import NoPolicyError, coverage, remediation_hints
from .openstack import IngestConfig, IngestError, JsonShapeError, ingest, parse_cli_json
from .rdf import Iri, UnknownPrefixError
from .reasoner import materialize, subclasses_of
from .shacl import ShapeError, parse_shapes, validate
from .sparql import evaluate, parse_query
from .turtle import Document, ParseError, parse_turtle, serialize_turtle

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATIONS = 2
EXIT_GAPS = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 means violations here
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_ERROR)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_document(path: str) -> Document:
    try:
        return parse_turtle(_read_text(path))
    except ParseError as exc:
        raise _CliError(f"{path}:{exc.line}:{exc.column}: {exc.detail}") from exc


def _write_output(text: str, out_path: str | None):
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        Path(out_path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"cannot write {out_path}: {exc.strerror or exc}") from exc


def _emit_json(payload: dict, out_path: str | None):
    _write_output(json.dumps(payload, indent=2) + "\n", out_path)


def _resolve_iri(text: str, doc: Document) -> Iri:
    if text.startswith("<") and text.endswith(">"):
        return Iri(text[1:-1])
    if "://" in text or text.startswith("urn:"):
        return Iri(text)
    if ":" in text:
        try:
            return doc.prefixes.expand(text)
        except UnknownPrefixError as exc:
            raise _CliError(str(exc)) from exc
    raise _CliError(f"not an IRI or prefixed name: {text!r}")


def _working_graph(doc: Document, no_inference: bool):
    return doc.graph if no_inference else materialize(doc.graph).graph


def _cmd_parse(args) -> int:
    doc = _load_document(args.file)
    if args.format == "json":
        _emit_json(
            {"file": args.file, "triples": len(doc.graph), "prefixes": len(doc.prefixes)},
            args.output,
        )
    else:
        _write_output(
            f"{args.file}: {len(doc.graph)} triples, {len(doc.prefixes)} prefixes\n",
            args.output,
        )
    return EXIT_OK


def _cmd_infer(args) -> int:
    doc = _load_document(args.file)
    closure = materialize(doc.graph)
    sys.stderr.write(
        f"{closure.inferred_count} inferred triple(s) in {closure.iterations} iteration(s)\n"
    )
    _write_output(serialize_turtle(Document(closure.graph, doc.prefixes)), args.output)
    return EXIT_OK


def _cmd_query(args) -> int:
    doc = _load_document(args.file)
    try:
        query = parse_query(_read_text(args.query))
    except ParseError as exc:
        raise _CliError(f"{args.query}:{exc.line}:{exc.column}: {exc.detail}") from exc
    table = evaluate(query, _working_graph(doc, args.no_inference))
    if args.format == "json":
        _emit_json(table.to_json_dict(), args.output)
    else:
        _write_output(table.to_text(doc.prefixes) + "\n", args.output)
    return EXIT_OK


def _cmd_validate(args) -> int:
    doc = _load_document(args.file)
    shapes_doc = _load_document(args.shapes)
    try:
        shapes = parse_shapes(shapes_doc)
    except ShapeError as exc:
        raise _CliError(f"{args.shapes}: {exc}") from exc
    report = validate(_working_graph(doc, args.no_inference), shapes, subclasses_of)
    if args.format == "json":
        _emit_json(report.to_json_dict(), args.output)
    else:
        _write_output(report.to_text() + "\n", args.output)
    return EXIT_OK if report.conforms else EXIT_VIOLATIONS


def _cmd_compliance(args) -> int:
    doc = _load_document(args.file)
    engine = _resolve_iri(args.engine, doc)
    graph = _working_graph(doc, args.no_inference)
    try:
        report = coverage(graph, engine)
    except NoPolicyError as exc:
        raise _CliError(str(exc)) from exc
    for warning in report.warnings:
        sys.stderr.write(f"warning: {warning}\n")
    hints = remediation_hints(report, graph, doc.prefixes)
    if args.format == "json":
        payload = report.to_json_dict()
        payload["hints"] = hints
        _emit_json(payload, args.output)
    else:
        text = report.to_text(doc.prefixes)
        if hints:
            text += "\n\nhints:\n" + "\n".join(f"  - {h}" for h in hints)
        _write_output(text + "\n", args.output)
    return EXIT_GAPS if report.gap_count else EXIT_OK


def _parse_policy_file_args(pairs: list[str]) -> dict[str, str]:
    out = {}
    for pair in pairs:
        service, sep, path = pair.partition("=")
        if not sep or not service or not path:
            raise _CliError(f"--policy-file expects SERVICE=PATH, got {pair!r}")
        out[service] = path
    return out


def _cmd_ingest(args) -> int:
    if args.source != "openstack":
        raise _CliError(f"unknown ingest source {args.source!r}")

    def load_records(path: str | None, kind):
        if path is None:
            return []
        try:
            return parse_cli_json(_read_text(path), kind)
        except JsonShapeError as exc:
            raise _CliError(f"{path}: {exc}") from exc

    endpoints = load_records(args.endpoints, "endpoints")
    projects = load_records(args.projects, "projects")
    users = load_records(args.users, "users")
    assignments = load_records(args.assignments, "assignments")

    versions: dict[str, str] = {}
    if args.versions:
        try:
            raw = json.loads(_read_text(args.versions))
        except json.JSONDecodeError as exc:
            raise _CliError(f"{args.versions}: not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise _CliError(f"{args.versions}: expected an object of service -> version")
        versions = {str(k): str(v) for k, v in raw.items()}

    config = IngestConfig(
        instance_namespace=args.namespace,
        version_metadata=versions,
        policy_files=_parse_policy_file_args(args.policy_file),
    )
    try:
        doc = ingest(
            endpoints=endpoints,
            projects=projects,
            users=users,
            assignments=assignments,
            config=config,
        )
    except IngestError as exc:
        raise _CliError(str(exc)) from exc
    sys.stderr.write(
        f"ingested {len(endpoints)} endpoint(s), {len(projects)} project(s), "
        f"{len(users)} user(s), {len(assignments)} assignment(s): "
        f"{len(doc.graph)} triples\n"
    )
    _write_output(serialize_turtle(doc), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="cloudaudit",
        description="Semantic compliance toolchain for cloud engine models",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inference=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
        if inference:
            p.add_argument(
                "--no-inference",
                action="store_true",
                help="run against asserted triples only (skip RDFS materialization)",
            )

    p = sub.add_parser("parse", help="syntax-check a Turtle file and print counts")
    p.add_argument("file")
    common(p, inference=False)
    p.set_defaults(handler=_cmd_parse)

    p = sub.add_parser("infer", help="write the RDFS-materialized graph as Turtle")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=_cmd_infer)

    p = sub.add_parser("query", help="run a SELECT query against a model")
    p.add_argument("file")
    p.add_argument("query", help="query file (.rq)")
    common(p)
    p.set_defaults(handler=_cmd_query)

    p = sub.add_parser("validate", help="validate a model against node shapes")
    p.add_argument("file")
    p.add_argument("shapes", help="shapes file (.ttl)")
    common(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("compliance", help="standards coverage report for one engine")
    p.add_argument("file")
    p.add_argument("--engine", required=True, help="engine IRI or prefixed name")
    common(p)
    p.set_defaults(handler=_cmd_compliance)

    p = sub.add_parser("ingest", help="convert inventory exports to instance Turtle")
    p.add_argument("source", choices=("openstack",))
    p.add_argument("--endpoints", help="endpoint list JSON")
    p.add_argument("--projects", help="project list JSON")
    p.add_argument("--users", help="user list JSON")
    p.add_argument("--assignments", help="role assignment list JSON")
    p.add_argument("--versions", help="JSON object mapping service name to version")
    p.add_argument(
        "--policy-file",
        action="append",
        default=[],
        metavar="SERVICE=PATH",
        help="hash this policy file onto the service node (repeatable)",
    )
    p.add_argument(
        "--namespace",
        default="urn:cloudeng:inst:",
        help="instance namespace for minted IRIs",
    )
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=_cmd_ingest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
