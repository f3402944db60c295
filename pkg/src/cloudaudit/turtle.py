"""Turtle subset reader and writer.

The supported grammar is deliberately small: exactly what the bundled model
and shapes files use, rejected loudly everywhere else.

  - ``#`` comments anywhere between tokens
  - ``@prefix`` directives (last binding wins)
  - IRIREF ``<...>`` with ``\\uXXXX`` / ``\\UXXXXXXXX`` escapes only
  - prefixed names whose local part may contain interior ``.`` (never
    terminal) plus ``-``, ``_`` and digits, e.g. ``iso27001:A.9.4.1``
  - the ``a`` keyword for rdf:type
  - ``;`` predicate lists (trailing ``;`` tolerated) and ``,`` object lists
  - ``[ ... ]`` anonymous blank node property lists
  - double-quoted string literals with ``\\"``, ``\\\\``, ``\\n``, ``\\t``
  - non-negative integer literals (typed xsd:integer), used by shape counts

No ``@base``, relative IRIs, collections, ``^^`` datatypes, language tags,
decimals or booleans: those raise a positioned ParseError instead of being
silently misread.

A ``.`` terminates a statement only when followed by whitespace, ``#`` or
end of input; that is what lets ``iso27001:A.9.4.1 .`` lex correctly.

Parsing is pure: the same input always yields the same Document, with blank
node labels minted as b1, b2, ... in encounter order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .rdf import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    PrefixMap,
    Term,
    Triple,
    TriplePattern,
    UnknownPrefixError,
    Var,
    XSD_INTEGER,
    XSD_STRING,
    is_local_name,
    term_sort_key,
)
from .vocab import RDF_TYPE


class ErrorKind(enum.Enum):
    UNEXPECTED_TOKEN = "UnexpectedToken"
    UNKNOWN_PREFIX = "UnknownPrefix"
    UNTERMINATED_STRING = "UnterminatedString"
    UNTERMINATED_IRI = "UnterminatedIri"
    BAD_ESCAPE = "BadEscape"
    BAD_LOCAL_NAME = "BadLocalName"


class ParseError(Exception):
    """Syntax error with a 1-based (line, column) of the first offending character."""

    def __init__(self, line: int, column: int, kind: ErrorKind, detail: str):
        super().__init__(f"{line}:{column}: {detail}")
        self.line = line
        self.column = column
        self.kind = kind
        self.detail = detail


@dataclass
class Document:
    """A parsed Turtle file: its graph plus the prefix map it declared."""

    graph: Graph = field(default_factory=Graph)
    prefixes: PrefixMap = field(default_factory=PrefixMap)


@dataclass
class Token:
    kind: str  # one of: iriref pname a string integer . ; , [ ] @prefix eof
    line: int
    col: int
    value: str = ""
    local: str = ""  # pname only


_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}
_LOCAL_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-")


def _is_word_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_word_char(c: str) -> bool:
    return c.isalnum() or c in "_-"


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.n = len(text)
        self.i = 0
        self.line = 1
        self.col = 1

    def _peek(self, offset: int = 0) -> str:
        j = self.i + offset
        return self.text[j] if j < self.n else ""

    def _advance(self) -> str:
        c = self.text[self.i]
        self.i += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def _error(self, kind: ErrorKind, detail: str, line: int = 0, col: int = 0):
        raise ParseError(line or self.line, col or self.col, kind, detail)

    def tokens(self) -> list[Token]:
        out = []
        while True:
            tok = self._next()
            out.append(tok)
            if tok.kind == "eof":
                return out

    def _next(self) -> Token:
        while self.i < self.n:
            c = self._peek()
            if c.isspace():
                self._advance()
                continue
            if c == "#":
                while self.i < self.n and self._peek() != "\n":
                    self._advance()
                continue
            break
        line, col = self.line, self.col
        if self.i >= self.n:
            return Token("eof", line, col)
        c = self._peek()
        if c in ".;,[]":
            self._advance()
            return Token(c, line, col)
        if c == "<":
            return self._iriref(line, col)
        if c == '"':
            return self._string(line, col)
        if c == "@":
            return self._directive(line, col)
        if c.isdigit():
            digits = []
            while self._peek().isdigit():
                digits.append(self._advance())
            return Token("integer", line, col, "".join(digits))
        if c == ":":
            self._advance()
            return Token("pname", line, col, "", self._local_part())
        if _is_word_start(c):
            word = []
            while self._peek() and _is_word_char(self._peek()):
                word.append(self._advance())
            name = "".join(word)
            if self._peek() == ":":
                self._advance()
                return Token("pname", line, col, name, self._local_part())
            if name == "a":
                return Token("a", line, col)
            self._error(ErrorKind.UNEXPECTED_TOKEN, f"unexpected word {name!r}", line, col)
        self._error(ErrorKind.UNEXPECTED_TOKEN, f"unexpected character {c!r}", line, col)
        raise AssertionError("unreachable")

    def _iriref(self, line: int, col: int) -> Token:
        self._advance()  # <
        parts = []
        while True:
            if self.i >= self.n or self._peek() == "\n":
                self._error(ErrorKind.UNTERMINATED_IRI, "IRI not closed with '>'")
            c = self._peek()
            if c == ">":
                self._advance()
                return Token("iriref", line, col, "".join(parts))
            if c == "\\":
                eline, ecol = self.line, self.col
                self._advance()
                kind = self._peek()
                width = {"u": 4, "U": 8}.get(kind)
                if width is None:
                    self._error(ErrorKind.BAD_ESCAPE, f"unsupported IRI escape \\{kind}", eline, ecol)
                self._advance()
                digits = ""
                for _ in range(width):
                    if self.i >= self.n or self._peek() not in "0123456789abcdefABCDEF":
                        self._error(ErrorKind.BAD_ESCAPE, "truncated \\u escape", eline, ecol)
                    digits += self._advance()
                parts.append(chr(int(digits, 16)))
                continue
            if c in ' \t<"':
                self._error(ErrorKind.UNEXPECTED_TOKEN, f"character {c!r} not allowed inside IRI")
            parts.append(self._advance())

    def _string(self, line: int, col: int) -> Token:
        self._advance()  # opening quote
        parts = []
        while True:
            if self.i >= self.n or self._peek() == "\n":
                self._error(ErrorKind.UNTERMINATED_STRING, "string not closed with '\"'")
            c = self._advance()
            if c == '"':
                return Token("string", line, col, "".join(parts))
            if c == "\\":
                eline, ecol = self.line, self.col - 1
                if self.i >= self.n:
                    self._error(ErrorKind.UNTERMINATED_STRING, "string not closed with '\"'")
                esc = self._advance()
                if esc not in _ESCAPES:
                    self._error(ErrorKind.BAD_ESCAPE, f"unsupported string escape \\{esc}", eline, ecol)
                parts.append(_ESCAPES[esc])
                continue
            parts.append(c)

    def _directive(self, line: int, col: int) -> Token:
        self._advance()  # @
        word = []
        while self._peek().isalpha():
            word.append(self._advance())
        name = "".join(word)
        if name == "prefix":
            return Token("@prefix", line, col)
        self._error(ErrorKind.UNEXPECTED_TOKEN, f"unsupported directive '@{name}'", line, col)
        raise AssertionError("unreachable")

    def _local_part(self) -> str:
        line, col = self.line, self.col
        start = self.i
        while self.i < self.n and self.text[self.i] in _LOCAL_CHARS:
            self._advance()
        chunk = self.text[start:self.i]
        trailing = len(chunk) - len(chunk.rstrip("."))
        if trailing:
            # give trailing dots back to the stream: they end the statement
            chunk = chunk[: len(chunk) - trailing]
            self.i -= trailing
            self.col -= trailing
        if not is_local_name(chunk):
            self._error(ErrorKind.BAD_LOCAL_NAME, f"invalid local name {chunk!r}", line, col)
        return chunk


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0
        self.doc = Document()
        self._bnodes = 0

    def _cur(self) -> Token:
        return self.tokens[self.i]

    def _take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _expect(self, kind: str) -> Token:
        tok = self._cur()
        if tok.kind != kind:
            self._fail(tok, f"expected {kind!r}, found {self._describe(tok)}")
        return self._take()

    @staticmethod
    def _describe(tok: Token) -> str:
        if tok.kind == "eof":
            return "end of input"
        return f"{tok.kind!r}" if not tok.value else f"{tok.kind} {tok.value!r}"

    @staticmethod
    def _fail(tok: Token, detail: str):
        raise ParseError(tok.line, tok.col, ErrorKind.UNEXPECTED_TOKEN, detail)

    def _fresh_bnode(self) -> BlankNode:
        self._bnodes += 1
        return BlankNode(f"b{self._bnodes}")

    def _expand(self, tok: Token) -> Iri:
        try:
            return Iri(self.doc.prefixes.namespace(tok.value) + tok.local)
        except UnknownPrefixError:
            raise ParseError(
                tok.line, tok.col, ErrorKind.UNKNOWN_PREFIX,
                f"prefix {tok.value!r} is not bound",
            ) from None

    def parse(self) -> Document:
        while self._cur().kind != "eof":
            if self._cur().kind == "@prefix":
                self._directive()
            else:
                self._statement()
        return self.doc

    def _directive(self):
        self._take()  # @prefix
        label_tok = self._cur()
        if label_tok.kind != "pname" or label_tok.local:
            self._fail(label_tok, "expected a prefix label ending in ':'")
        self._take()
        ns = self._expect("iriref")
        self._expect(".")
        self.doc.prefixes.bind(label_tok.value, ns.value)

    def _statement(self):
        tok = self._cur()
        if tok.kind == "[":
            subject = self._bnode_property_list()
            if self._cur().kind != ".":
                self._predicate_object_list(subject)
        else:
            subject = self._subject()
            self._predicate_object_list(subject)
        self._expect(".")

    def _subject(self) -> Term:
        tok = self._take()
        if tok.kind == "iriref":
            return Iri(tok.value)
        if tok.kind == "pname":
            return self._expand(tok)
        self._fail(tok, f"expected a subject, found {self._describe(tok)}")
        raise AssertionError("unreachable")

    def _verb(self) -> Iri:
        tok = self._take()
        if tok.kind == "a":
            return RDF_TYPE
        if tok.kind == "iriref":
            return Iri(tok.value)
        if tok.kind == "pname":
            return self._expand(tok)
        self._fail(tok, f"expected a predicate, found {self._describe(tok)}")
        raise AssertionError("unreachable")

    def _object(self) -> Term:
        tok = self._cur()
        if tok.kind == "[":
            return self._bnode_property_list()
        self._take()
        if tok.kind == "iriref":
            return Iri(tok.value)
        if tok.kind == "pname":
            return self._expand(tok)
        if tok.kind == "string":
            return Literal(tok.value)
        if tok.kind == "integer":
            return Literal(tok.value, XSD_INTEGER)
        self._fail(tok, f"expected an object, found {self._describe(tok)}")
        raise AssertionError("unreachable")

    def _predicate_object_list(self, subject: Term):
        while True:
            verb = self._verb()
            while True:
                obj = self._object()
                self.doc.graph.add(Triple(subject, verb, obj))
                if self._cur().kind != ",":
                    break
                self._take()
            if self._cur().kind != ";":
                return
            while self._cur().kind == ";":
                self._take()
            if self._cur().kind in (".", "]", "eof"):
                return  # trailing ';'

    def _bnode_property_list(self) -> BlankNode:
        self._expect("[")
        node = self._fresh_bnode()
        if self._cur().kind != "]":
            self._predicate_object_list(node)
        self._expect("]")
        return node


def parse_turtle(text: str) -> Document:
    """Parse Turtle text into a Document (graph + prefix map).

    Raises ParseError with a 1-based position for anything outside the
    supported subset.
    """
    return _Parser(_Lexer(text).tokens()).parse()


def _escape_literal(lexical: str) -> str:
    out = []
    for c in lexical:
        if c == "\\":
            out.append("\\\\")
        elif c == '"':
            out.append('\\"')
        elif c == "\n":
            out.append("\\n")
        elif c == "\t":
            out.append("\\t")
        else:
            out.append(c)
    return '"' + "".join(out) + '"'


def _iriref(iri: Iri) -> str:
    return "<" + iri.value.replace("\\", "\\u005C") + ">"


class _Serializer:
    def __init__(self, doc: Document):
        self.graph = doc.graph
        self.prefixes = doc.prefixes
        self.emitted = 0

    def run(self) -> str:
        blocks = []
        object_count: dict[str, int] = {}
        for t in self.graph:
            if isinstance(t.object, BlankNode):
                object_count[t.object.label] = object_count.get(t.object.label, 0) + 1
        over_shared = [lbl for lbl, n in object_count.items() if n > 1]
        if over_shared:
            raise ValueError(
                f"blank node(s) {sorted(over_shared)} are referenced more than once; "
                "not expressible with anonymous property lists"
            )
        self._object_count = object_count

        iri_subjects = sorted(
            {t.subject for t in self.graph if isinstance(t.subject, Iri)},
            key=term_sort_key,
        )
        for subj in iri_subjects:
            blocks.append(self._subject_block(subj))
        # blank nodes never used as an object become their own statements
        bnode_roots = sorted(
            {
                t.subject.label
                for t in self.graph
                if isinstance(t.subject, BlankNode) and not object_count.get(t.subject.label)
            }
        )
        root_blocks = sorted(self._bnode_root_block(lbl) for lbl in bnode_roots)
        blocks.extend(root_blocks)

        if self.emitted != len(self.graph):
            raise ValueError(
                "graph contains blank node cycles that cannot be written "
                "as anonymous property lists"
            )

        header = [f"@prefix {label}: {_iriref(Iri(ns))} ." for label, ns in self.prefixes.items()]
        parts = []
        if header:
            parts.append("\n".join(header))
        parts.extend(blocks)
        return "\n\n".join(parts) + "\n" if parts else ""

    def _term(self, term: Term, predicate_position: bool = False) -> str:
        if isinstance(term, Iri):
            if predicate_position and term == RDF_TYPE:
                return "a"
            compact = self.prefixes.compact(term)
            return compact if compact is not None else _iriref(term)
        if isinstance(term, BlankNode):
            return self._inline_bnode(term)
        if term.datatype == XSD_STRING:
            return _escape_literal(term.lexical)
        if term.datatype == XSD_INTEGER and term.lexical.isdigit():
            return term.lexical
        raise ValueError(f"literal datatype {term.datatype.value} is not writable in this subset")

    def _grouped(self, subject: Term) -> list[tuple[Iri, list[Term]]]:
        by_pred: dict[Iri, list[Term]] = {}
        for t in self.graph.match(TriplePattern(subject, Var("p"), Var("o"))):
            by_pred.setdefault(t.predicate, []).append(t.object)
        return sorted(by_pred.items(), key=lambda kv: kv[0].value)

    def _subject_block(self, subject: Term) -> str:
        lines = []
        groups = self._grouped(subject)
        for predicate, objects in groups:
            rendered = ", ".join(self._term(o) for o in objects)
            lines.append((self._term(predicate, predicate_position=True), rendered))
            self.emitted += len(objects)
        subj = self._term(subject)
        body = [f"{subj} {lines[0][0]} {lines[0][1]}"]
        body.extend(f"  {p} {o}" for p, o in lines[1:])
        return " ;\n".join(body) + " ."

    def _bnode_root_block(self, label: str) -> str:
        rendered = self._inline_bnode(BlankNode(label))
        return f"{rendered} ."

    def _inline_bnode(self, node: BlankNode) -> str:
        groups = self._grouped(node)
        if not groups:
            return "[]"
        parts = []
        for predicate, objects in groups:
            rendered = ", ".join(self._term(o) for o in objects)
            parts.append(f"{self._term(predicate, predicate_position=True)} {rendered}")
            self.emitted += len(objects)
        return "[ " + " ; ".join(parts) + " ]"


def serialize_turtle(doc: Document) -> str:
    """Write a Document as deterministic Turtle.

    Subjects, predicates within a subject, objects within a predicate and
    prefix directives are all emitted in sorted order, so identical
    documents produce byte-identical output.  Re-parsing the output yields
    a graph isomorphic to the input.
    """
    return _Serializer(doc).run()
