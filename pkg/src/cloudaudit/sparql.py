"""SPARQL subset: SELECT over a basic graph pattern with EXISTS filters.

Grammar (everything else is rejected with a positioned ParseError):

    PREFIX label: <iri>            -- any number, before SELECT
    SELECT ?a ?b ... | *
    WHERE { pattern }

where a pattern is triple patterns separated by optional dots plus any
number of FILTER EXISTS { ... } / FILTER NOT EXISTS { ... } groups, which
may nest and may reference outer variables (correlated semantics).  Terms
are variables, prefixed names, IRIREFs, the `a` keyword (predicate) and
double-quoted string literals (objects).  IRIs are resolved at parse time.

Evaluation is a left-to-right nested-loop join seeded by the graph's
indexed matcher; there is no optimizer.  Solution rows are deduplicated and
sorted, so repeated evaluation of one query is byte-stable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .rdf import (
    Graph,
    Iri,
    Literal,
    PatternTerm,
    PrefixMap,
    Term,
    TriplePattern,
    UnknownPrefixError,
    Var,
    term_json,
    term_sort_key,
)
from .turtle import ErrorKind, ParseError, Token, _Lexer
from .vocab import RDF_TYPE


class Polarity(enum.Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"


@dataclass
class FilterExistence:
    polarity: Polarity
    inner: "GraphPattern"


@dataclass
class GraphPattern:
    triples: list[TriplePattern] = field(default_factory=list)
    filters: list[FilterExistence] = field(default_factory=list)

    def variable_names(self) -> list[str]:
        """Variables of the pattern in first-appearance order, filters included."""
        names: list[str] = []

        def walk(pattern: "GraphPattern"):
            for tp in pattern.triples:
                for name in tp.variables():
                    if name not in names:
                        names.append(name)
            for flt in pattern.filters:
                walk(flt.inner)

        walk(self)
        return names


@dataclass
class Query:
    prefixes: PrefixMap
    projection: list[str] | None  # None means SELECT *
    where: GraphPattern


@dataclass
class SolutionTable:
    """Projected query solutions: deduplicated, deterministically ordered rows.

    Each row is a tuple aligned with `variables`; a None entry means the
    variable was not bound in that solution.
    """

    variables: list[str]
    rows: list[tuple[Term | None, ...]]

    def as_dicts(self) -> list[dict[str, Term]]:
        return [
            {v: t for v, t in zip(self.variables, row) if t is not None}
            for row in self.rows
        ]

    def column(self, variable: str) -> list[Term | None]:
        idx = self.variables.index(variable)
        return [row[idx] for row in self.rows]

    def to_json_dict(self) -> dict:
        bindings = []
        for row in self.rows:
            bindings.append(
                {v: term_json(t) for v, t in zip(self.variables, row) if t is not None}
            )
        return {"head": {"vars": list(self.variables)}, "results": {"bindings": bindings}}

    def to_text(self, prefixes: PrefixMap | None = None) -> str:
        def show(term: Term | None) -> str:
            if term is None:
                return ""
            if isinstance(term, Iri) and prefixes is not None:
                compact = prefixes.compact(term)
                if compact is not None:
                    return compact
            if isinstance(term, Iri):
                return f"<{term.value}>"
            if isinstance(term, Literal):
                return f'"{term.lexical}"'
            return f"_:{term.label}"

        headers = [f"?{v}" for v in self.variables]
        table = [headers] + [[show(t) for t in row] for row in self.rows]
        widths = [max(len(line[i]) for line in table) for i in range(len(headers))] if headers else []
        lines = []
        if headers:
            lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
            lines.append("  ".join("-" * w for w in widths))
            for row in table[1:]:
                lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        lines.append(f"({len(self.rows)} row{'s' if len(self.rows) != 1 else ''})")
        return "\n".join(lines)


_KEYWORDS = {"select", "where", "filter", "not", "exists", "prefix"}


class _QueryParser:
    """Recursive-descent parser over the shared lexer's token stream.

    Reuses the Turtle lexer: SPARQL keywords arrive as 'unexpected word'
    lexer errors, so tokenization here wraps the lexer and re-tags keyword
    words, '?' variables and '*'.
    """

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.prefixes = PrefixMap()

    def _cur(self) -> Token:
        return self.tokens[self.i]

    def _take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _fail(self, tok: Token, detail: str):
        raise ParseError(tok.line, tok.col, ErrorKind.UNEXPECTED_TOKEN, detail)

    def _expect(self, kind: str) -> Token:
        tok = self._cur()
        if tok.kind != kind:
            self._fail(tok, f"expected {kind!r}, found {tok.kind!r}")
        return self._take()

    def _keyword(self, word: str) -> Token:
        tok = self._cur()
        if tok.kind != "keyword" or tok.value != word:
            self._fail(tok, f"expected {word.upper()}")
        return self._take()

    def parse(self) -> Query:
        while self._cur().kind == "keyword" and self._cur().value == "prefix":
            self._take()
            label = self._cur()
            if label.kind != "pname" or label.local:
                self._fail(label, "expected a prefix label ending in ':'")
            self._take()
            ns = self._expect("iriref")
            self.prefixes.bind(label.value, ns.value)
        self._keyword("select")
        projection = self._projection()
        self._keyword("where")
        where = self._group()
        tok = self._cur()
        if tok.kind != "eof":
            self._fail(tok, f"trailing content after WHERE group: {tok.kind!r}")
        if projection is not None:
            in_scope = set(where.variable_names())
            for name in projection:
                if name not in in_scope:
                    self._fail(tok, f"projected variable ?{name} never appears in WHERE")
        return Query(prefixes=self.prefixes, projection=projection, where=where)

    def _projection(self) -> list[str] | None:
        tok = self._cur()
        if tok.kind == "star":
            self._take()
            return None
        names = []
        while self._cur().kind == "var":
            names.append(self._take().value)
        if not names:
            self._fail(self._cur(), "expected '*' or at least one ?variable")
        return names

    def _group(self) -> GraphPattern:
        self._expect("{")
        pattern = GraphPattern()
        while True:
            tok = self._cur()
            if tok.kind == "}":
                self._take()
                return pattern
            if tok.kind == "keyword" and tok.value == "filter":
                self._take()
                negated = False
                if self._cur().kind == "keyword" and self._cur().value == "not":
                    self._take()
                    negated = True
                self._keyword("exists")
                inner = self._group()
                pattern.filters.append(
                    FilterExistence(
                        polarity=Polarity.NOT_EXISTS if negated else Polarity.EXISTS,
                        inner=inner,
                    )
                )
                continue
            pattern.triples.append(self._triple_pattern())
            if self._cur().kind == ".":
                self._take()

    def _triple_pattern(self) -> TriplePattern:
        subject = self._pattern_term(allow_literal=False, allow_a=False)
        predicate = self._pattern_term(allow_literal=False, allow_a=True)
        obj = self._pattern_term(allow_literal=True, allow_a=False)
        return TriplePattern(subject, predicate, obj)

    def _pattern_term(self, allow_literal: bool, allow_a: bool) -> PatternTerm:
        tok = self._take()
        if tok.kind == "var":
            return Var(tok.value)
        if tok.kind == "iriref":
            return Iri(tok.value)
        if tok.kind == "pname":
            try:
                return Iri(self.prefixes.namespace(tok.value) + tok.local)
            except UnknownPrefixError:
                raise ParseError(
                    tok.line, tok.col, ErrorKind.UNKNOWN_PREFIX,
                    f"prefix {tok.value!r} is not bound",
                ) from None
        if tok.kind == "a" and allow_a:
            return RDF_TYPE
        if tok.kind == "string" and allow_literal:
            return Literal(tok.value)
        self._fail(tok, f"unsupported term here: {tok.kind!r}")
        raise AssertionError("unreachable")


def _tokenize(text: str) -> list[Token]:
    """Token stream for the query grammar, built on the Turtle lexer.

    Variables, braces, '*' and keywords are not Turtle tokens, so they are
    scanned here; IRIs, prefixed names, strings and punctuation delegate to
    the shared lexer (and raise the same positioned errors).
    """
    lexer = _Lexer(text)
    out: list[Token] = []
    while True:
        while lexer.i < lexer.n:
            c = lexer.text[lexer.i]
            if c.isspace():
                lexer._advance()
            elif c == "#":
                while lexer.i < lexer.n and lexer.text[lexer.i] != "\n":
                    lexer._advance()
            else:
                break
        line, col = lexer.line, lexer.col
        if lexer.i >= lexer.n:
            out.append(Token("eof", line, col))
            return out
        c = lexer.text[lexer.i]
        if c == "{" or c == "}":
            lexer._advance()
            out.append(Token(c, line, col))
        elif c == "*":
            lexer._advance()
            out.append(Token("star", line, col))
        elif c == "?":
            lexer._advance()
            name = []
            while lexer.i < lexer.n and (lexer.text[lexer.i].isalnum() or lexer.text[lexer.i] == "_"):
                name.append(lexer._advance())
            if not name:
                raise ParseError(line, col, ErrorKind.UNEXPECTED_TOKEN, "empty variable name")
            out.append(Token("var", line, col, "".join(name)))
        elif c.isalpha() or c == "_":
            word = []
            while lexer.i < lexer.n and (lexer.text[lexer.i].isalnum() or lexer.text[lexer.i] in "_-"):
                word.append(lexer._advance())
            name = "".join(word)
            if lexer.i < lexer.n and lexer.text[lexer.i] == ":":
                lexer._advance()
                out.append(Token("pname", line, col, name, lexer._local_part()))
            elif name.lower() in _KEYWORDS:
                out.append(Token("keyword", line, col, name.lower()))
            elif name == "a":
                out.append(Token("a", line, col))
            else:
                raise ParseError(
                    line, col, ErrorKind.UNEXPECTED_TOKEN,
                    f"unsupported construct {name!r}",
                )
        else:
            out.append(lexer._next())


def parse_query(text: str) -> Query:
    """Parse a SELECT query in the supported subset; IRIs resolve at parse time."""
    return _QueryParser(text).parse()


def _eval_pattern(graph: Graph, pattern: GraphPattern, seed: dict[str, Term]) -> list[dict[str, Term]]:
    solutions = [dict(seed)]
    for tp in pattern.triples:
        extended: list[dict[str, Term]] = []
        for binding in solutions:
            concrete = tp.substitute(binding)
            for triple in graph.match(concrete):
                new = concrete.binding(triple)
                if new is None:
                    continue
                merged = dict(binding)
                merged.update(new)
                extended.append(merged)
        solutions = extended
        if not solutions:
            break
    for flt in pattern.filters:
        kept = []
        for binding in solutions:
            matched = bool(_eval_pattern(graph, flt.inner, binding))
            if matched == (flt.polarity is Polarity.EXISTS):
                kept.append(binding)
        solutions = kept
    return solutions


def evaluate(query: Query, graph: Graph) -> SolutionTable:
    """Evaluate a query against a graph (the caller picks asserted or
    materialized) and return the projected, deduplicated, sorted table.

    An empty WHERE group yields a single empty solution, so `SELECT *
    WHERE { }` has one row of no columns.
    """
    solutions = _eval_pattern(graph, query.where, {})
    if query.projection is None:
        variables = []
        for tp in query.where.triples:
            for name in tp.variables():
                if name not in variables:
                    variables.append(name)
    else:
        variables = list(query.projection)
    seen = set()
    rows: list[tuple[Term | None, ...]] = []
    for binding in solutions:
        row = tuple(binding.get(v) for v in variables)
        key = tuple("" if t is None else term_sort_key(t) for t in row)
        if key not in seen:
            seen.add(key)
            rows.append(row)
    rows.sort(key=lambda row: tuple("" if t is None else term_sort_key(t) for t in row))
    return SolutionTable(variables=variables, rows=rows)
