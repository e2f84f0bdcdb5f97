"""Concrete syntax: the ``.sbc`` model DSL and tabular relation I/O.

The DSL covers exactly what the transition tables carry, one transition
per statement::

    system OSS {
      itg ITG_1 {
        init s11;
        s11 -> s12 : CAL Customer -> :Customer_UI . Request_Order(in Info);
      }
    }

``//`` comments run to end of line, whitespace is insignificant, and the
state set of a region is inferred from its transitions (the declared
initial state must appear on at least one transition).  Objects are
written with a leading colon, actors bare; a bare callee is an error.

Relations (the system transition relation and the three projected views)
export to RFC-4180-style CSV and to JSON whose field names mirror the CSV
columns.  Both directions round-trip: ``import(export(r)) == r``.
"""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence, Union

from .core import (
    Agent,
    AgentKind,
    Direction,
    Interaction,
    Itg,
    ModelError,
    IDENT_RE,
    ParamList,
    Parameter,
    SystemItg,
    Tag,
    Transition,
)
from .diagnostics import Severity
from .project import (
    ClassRelation,
    ClassRow,
    SequenceRelationComposite,
    SequenceRow,
    StateRelationComposite,
    StateRow,
)


# ---------------------------------------------------------------------------
# Spans and parse diagnostics


@dataclass(frozen=True)
class SourceSpan:
    line: int  # 1-based
    column: int  # 1-based
    length: int = 0

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 0:
            raise ValueError(f"bad span {self!r}")


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: Severity
    message: str
    span: SourceSpan

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    def render(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.severity.value}: {self.message}"

    def to_dict(self) -> dict:
        return {
            "severity": self.severity.value,
            "message": self.message,
            "line": self.span.line,
            "column": self.span.column,
            "length": self.span.length,
        }


@dataclass(frozen=True)
class ParseResult:
    """Outcome of parse_model: a system on success (plus retained transition
    spans, keyed by (region name, 0-based transition index)), or error
    diagnostics on failure.  Never both."""

    system: SystemItg | None
    diagnostics: tuple[ParseDiagnostic, ...] = ()
    spans: Mapping[tuple[str, int], SourceSpan] | None = None

    @property
    def ok(self) -> bool:
        return self.system is not None


# ---------------------------------------------------------------------------
# Lexer

_PUNCT = {
    "{": "LBRACE",
    "}": "RBRACE",
    ";": "SEMI",
    ":": "COLON",
    ".": "DOT",
    "(": "LPAREN",
    ")": "RPAREN",
}


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT, ARROW, one of _PUNCT values, EOF
    text: str
    span: SourceSpan


class _LexError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.diagnostic = ParseDiagnostic(Severity.ERROR, message, span)


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("ARROW", "->", SourceSpan(line, col, 2)))
            i += 2
            col += 2
            continue
        if c in _PUNCT:
            tokens.append(_Token(_PUNCT[c], c, SourceSpan(line, col, 1)))
            i += 1
            col += 1
            continue
        m = re.match(r"[A-Za-z_][A-Za-z0-9_]*", text[i:])
        if m:
            word = m.group(0)
            tokens.append(_Token("IDENT", word, SourceSpan(line, col, len(word))))
            i += len(word)
            col += len(word)
            continue
        raise _LexError(f"unexpected character {c!r}", SourceSpan(line, col, 1))
    tokens.append(_Token("EOF", "", SourceSpan(line, col, 0)))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent; syntax errors abort, semantic errors collect)


class _SyntaxError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.diagnostic = ParseDiagnostic(Severity.ERROR, message, span)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.semantic: list[ParseDiagnostic] = []
        self.spans: dict[tuple[str, int], SourceSpan] = {}

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise _SyntaxError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.span)
        return self.advance()

    def expect_word(self, word: str) -> _Token:
        tok = self.peek()
        if tok.kind != "IDENT" or tok.text != word:
            raise _SyntaxError(
                f"expected {word!r}, found {tok.text or 'end of input'!r}", tok.span
            )
        return self.advance()

    def error_at(self, message: str, span: SourceSpan) -> None:
        self.semantic.append(ParseDiagnostic(Severity.ERROR, message, span))

    # model := "system" IDENT "{" itg+ "}"
    def model(self) -> SystemItg | None:
        self.expect_word("system")
        name = self.expect("IDENT", "system name")
        self.expect("LBRACE", "'{'")
        regions: list[Itg] = []
        names_seen: dict[str, SourceSpan] = {}
        while self.peek().kind != "RBRACE":
            if self.peek().kind == "EOF":
                raise _SyntaxError("expected 'itg' or '}'", self.peek().span)
            region, name_tok = self.itg()
            if name_tok.text in names_seen:
                self.error_at(f"duplicate region name {name_tok.text!r}", name_tok.span)
            else:
                names_seen[name_tok.text] = name_tok.span
                if region is not None:
                    regions.append(region)
        self.expect("RBRACE", "'}'")
        tok = self.peek()
        if tok.kind != "EOF":
            raise _SyntaxError(f"unexpected input after model: {tok.text!r}", tok.span)
        if self.semantic:
            return None
        if not regions:
            return None  # unreachable: itg+ guarantees one region or a syntax error
        return SystemItg(name.text, tuple(regions))

    # itg := "itg" IDENT "{" "init" IDENT ";" transition* "}"
    def itg(self) -> tuple[Itg | None, _Token]:
        self.expect_word("itg")
        name = self.expect("IDENT", "region name")
        self.expect("LBRACE", "'{'")
        self.expect_word("init")
        init_tok = self.expect("IDENT", "initial state name")
        self.expect("SEMI", "';'")
        transitions: list[Transition] = []
        seen: set[Transition] = set()
        index = 0
        while self.peek().kind not in ("RBRACE", "EOF"):
            first = self.peek()
            t = self.transition()
            if t in seen:
                self.error_at(
                    f"duplicate transition {t.source} -> {t.target} in region {name.text!r}",
                    first.span,
                )
            else:
                seen.add(t)
                transitions.append(t)
                self.spans[(name.text, index)] = first.span
                index += 1
        self.expect("RBRACE", "'}'")

        endpoints = {s for t in transitions for s in (t.source, t.target)}
        if init_tok.text not in endpoints:
            self.error_at(
                f"init state {init_tok.text!r} not declared by any transition",
                init_tok.span,
            )
            return None, name
        if self.semantic:
            return None, name
        return Itg(name.text, init_tok.text, tuple(transitions)), name

    # transition := IDENT "->" IDENT ":" ("CAL"|"RET") agent "->" agent
    #               "." IDENT "(" [param (";" param)*] ")" ";"
    def transition(self) -> Transition:
        source = self.expect("IDENT", "source state")
        self.expect("ARROW", "'->'")
        target = self.expect("IDENT", "target state")
        self.expect("COLON", "':'")
        tag_tok = self.expect("IDENT", "'CAL' or 'RET'")
        if tag_tok.text not in ("CAL", "RET"):
            raise _SyntaxError(f"expected 'CAL' or 'RET', found {tag_tok.text!r}", tag_tok.span)
        caller = self.agent()
        self.expect("ARROW", "'->'")
        callee_tok = self.peek()
        callee = self.agent()
        if callee.kind is not AgentKind.OBJECT:
            self.error_at(
                f"callee {callee.name!r} must be an object (write ':{callee.name}'); "
                "only objects receive operations",
                callee_tok.span,
            )
            callee = Agent.obj(callee.name)  # keep parsing with a repaired value
        self.expect("DOT", "'.'")
        op = self.expect("IDENT", "operation name")
        self.expect("LPAREN", "'('")
        params: list[Parameter] = []
        names: set[str] = set()
        if self.peek().kind != "RPAREN":
            while True:
                ptok = self.peek()
                p = self.param()
                if p.name in names:
                    self.error_at(f"duplicate parameter name {p.name!r}", ptok.span)
                else:
                    names.add(p.name)
                    params.append(p)
                if self.peek().kind == "SEMI":
                    self.advance()
                    continue
                break
        self.expect("RPAREN", "')'")
        self.expect("SEMI", "';'")
        interaction = Interaction(
            Tag[tag_tok.text], caller, op.text, ParamList(tuple(params)), callee
        )
        return Transition(source.text, interaction, target.text)

    # agent := ":" IDENT | IDENT
    def agent(self) -> Agent:
        if self.peek().kind == "COLON":
            self.advance()
            name = self.expect("IDENT", "object name")
            return Agent.obj(name.text)
        name = self.expect("IDENT", "agent name")
        return Agent.actor(name.text)

    # param := ("in"|"out"|"inout") IDENT [":" IDENT]
    def param(self) -> Parameter:
        dir_tok = self.expect("IDENT", "parameter direction (in/out/inout)")
        if dir_tok.text not in ("in", "out", "inout"):
            raise _SyntaxError(
                f"expected parameter direction in/out/inout, found {dir_tok.text!r}",
                dir_tok.span,
            )
        name = self.expect("IDENT", "parameter name")
        ptype: str | None = None
        if self.peek().kind == "COLON":
            self.advance()
            ptype = self.expect("IDENT", "parameter type").text
        return Parameter(Direction(dir_tok.text), name.text, ptype)


def parse_model(text: str) -> ParseResult:
    """Parse DSL text into a system.

    On success the result carries the system and the source span of every
    transition.  On failure it carries one or more error diagnostics and
    no model at all (never a partial one).  Arbitrary input never raises.
    """
    try:
        tokens = _lex(text)
    except _LexError as e:
        return ParseResult(None, (e.diagnostic,))
    parser = _Parser(tokens)
    try:
        system = parser.model()
    except _SyntaxError as e:
        return ParseResult(None, tuple(parser.semantic) + (e.diagnostic,))
    if system is None:
        return ParseResult(None, tuple(parser.semantic))
    return ParseResult(system, (), dict(parser.spans))


def render_model(system: SystemItg) -> str:
    """Render a system to canonical DSL text.

    Deterministic (same input, same bytes) and parse-stable: the output
    re-parses to a system structurally equal to the input whenever the
    input is expressible in the grammar (every state on a transition).
    """
    out: list[str] = [f"system {system.name} {{"]
    for region in system.regions:
        out.append(f"  itg {region.name} {{")
        out.append(f"    init {region.initial};")
        for t in region.transitions:
            ia = t.interaction
            out.append(
                f"    {t.source} -> {t.target} : {ia.tag.value} "
                f"{ia.caller.text} -> {ia.callee.text} . {ia.op_name}({ia.params.text});"
            )
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# The system transition relation as a flat, region-qualified table


@dataclass(frozen=True)
class ItgrRow:
    region: str
    source: str
    interaction: Interaction
    target: str


@dataclass(frozen=True)
class ItgrRelation:
    rows: tuple[ItgrRow, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))


def transition_relation(system: SystemItg) -> ItgrRelation:
    """Flatten a system into its transition relation (Tables 1/2 shape)."""
    return ItgrRelation(
        tuple(
            ItgrRow(r.name, t.source, t.interaction, t.target)
            for r in system.regions
            for t in r.transitions
        )
    )


# ---------------------------------------------------------------------------
# Parameter-list and agent cell syntax (shared by CSV and JSON)


class BadCellError(ModelError):
    """A relation cell failed to parse; row and column are 1-based."""

    def __init__(self, message: str, row: int, column: str):
        super().__init__(f"row {row}, column {column}: {message}")
        self.row = row
        self.column = column


class BadDirectionError(BadCellError):
    """Parameter direction was not in/out/inout."""


class HeaderMismatchError(ModelError):
    """The CSV/JSON header does not match the relation kind."""


_PARAM_ITEM_RE = re.compile(
    r"(?P<dir>[A-Za-z_][A-Za-z0-9_]*)\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"(?:\s*:\s*(?P<type>[A-Za-z_][A-Za-z0-9_]*))?\Z"
)


def parse_params_text(cell: str) -> ParamList:
    """Parse a Θ cell: ``dir name[: type]`` items joined by ``;``.

    Raises ValueError on malformed items; the importer wraps it with the
    cell position.
    """
    cell = cell.strip()
    if not cell:
        return ParamList()
    params: list[Parameter] = []
    for item in cell.split(";"):
        item = item.strip()
        m = _PARAM_ITEM_RE.match(item)
        if not m:
            raise ValueError(f"malformed parameter {item!r}")
        d = m.group("dir")
        if d not in ("in", "out", "inout"):
            raise _NotADirection(f"parameter direction must be in/out/inout, got {d!r}")
        params.append(Parameter(Direction(d), m.group("name"), m.group("type")))
    return ParamList(tuple(params))


class _NotADirection(ValueError):
    pass


def parse_agent_text(cell: str, *, require_object: bool = False) -> Agent:
    cell = cell.strip()
    if cell.startswith(":"):
        name = cell[1:]
        if not IDENT_RE.match(name):
            raise ValueError(f"malformed object name {cell!r}")
        return Agent.obj(name)
    if not IDENT_RE.match(cell):
        raise ValueError(f"malformed agent name {cell!r}")
    if require_object:
        raise ValueError(f"{cell!r} must be an object (leading ':')")
    return Agent.actor(cell)


def _parse_tag(cell: str) -> Tag:
    if cell not in ("CAL", "RET"):
        raise ValueError(f"tag must be CAL or RET, got {cell!r}")
    return Tag[cell]


def _parse_ident(cell: str, what: str) -> str:
    if not IDENT_RE.match(cell):
        raise ValueError(f"malformed {what} {cell!r}")
    return cell


def _parse_order(cell: str) -> int:
    if not re.match(r"[0-9]+\Z", cell):
        raise ValueError(f"execution order must be an unsigned integer, got {cell!r}")
    return int(cell)


# ---------------------------------------------------------------------------
# CSV and JSON relation I/O


class RelationKind(Enum):
    ITGR = "itgr"
    CLASS = "class"
    STATE = "state"
    SEQUENCE = "sequence"


HEADERS: dict[RelationKind, tuple[str, ...]] = {
    RelationKind.ITGR: ("REGION", "S1", "N", "XI", "LAMBDA", "THETA", "GAMMA", "S2"),
    RelationKind.CLASS: ("C", "LAMBDA", "THETA"),
    RelationKind.STATE: ("REGION", "S1", "N", "LAMBDA", "S2"),
    RelationKind.SEQUENCE: ("REGION", "E", "N", "XI", "LAMBDA", "THETA", "GAMMA"),
}

Relation = Union[
    ItgrRelation, ClassRelation, StateRelationComposite, SequenceRelationComposite
]


def relation_kind(relation: Relation | SystemItg) -> RelationKind:
    if isinstance(relation, (SystemItg, ItgrRelation)):
        return RelationKind.ITGR
    if isinstance(relation, ClassRelation):
        return RelationKind.CLASS
    if isinstance(relation, StateRelationComposite):
        return RelationKind.STATE
    if isinstance(relation, SequenceRelationComposite):
        return RelationKind.SEQUENCE
    raise TypeError(f"not a relation: {type(relation).__name__}")


def relation_rows(relation: Relation | SystemItg) -> list[tuple[str, ...]]:
    """Cell values for each row, in the column order of the kind's header."""
    if isinstance(relation, SystemItg):
        relation = transition_relation(relation)
    rows: list[tuple[str, ...]] = []
    if isinstance(relation, ItgrRelation):
        for r in relation.rows:
            ia = r.interaction
            rows.append(
                (r.region, r.source, ia.tag.value, ia.caller.text, ia.op_name,
                 ia.params.text, ia.callee.text, r.target)
            )
    elif isinstance(relation, ClassRelation):
        for row in relation.rows:
            rows.append((row.class_name.text, row.signature.op_name, row.signature.params.text))
    elif isinstance(relation, StateRelationComposite):
        for region, srows in relation.regions:
            for s in srows:
                rows.append((region, s.source, s.tag.value, s.op_name, s.target))
    elif isinstance(relation, SequenceRelationComposite):
        for region, qrows in relation.regions:
            for q in qrows:
                rows.append(
                    (region, str(q.order), q.tag.value, q.caller.text, q.op_name,
                     q.params.text, q.callee.text)
                )
    else:
        raise TypeError(f"not a relation: {type(relation).__name__}")
    return rows


def export_relation_csv(relation: Relation | SystemItg) -> str:
    """Serialize a relation (or a whole system's transition relation) to CSV.

    Header row first; cells quoted only where RFC 4180 requires it; LF
    line endings for golden-file stability.
    """
    kind = relation_kind(relation)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADERS[kind])
    writer.writerows(relation_rows(relation))
    return buf.getvalue()


def _cell(row: Sequence[str], header: tuple[str, ...], name: str) -> str:
    return row[header.index(name)]


def _convert_cell(fn: Callable, cell: str, rownum: int, column: str):
    try:
        return fn(cell)
    except _NotADirection as e:
        raise BadDirectionError(str(e), rownum, column) from None
    except ValueError as e:
        raise BadCellError(str(e), rownum, column) from None


def _rows_to_relation(
    kind: RelationKind, rows: list[Sequence[str]], first_rownum: int
) -> Relation:
    header = HEADERS[kind]

    def group_by_region(
        make_row: Callable[[Sequence[str], int], object]
    ) -> tuple[tuple[str, tuple], ...]:
        regions: dict[str, list] = {}
        for offset, row in enumerate(rows):
            rownum = first_rownum + offset
            region = _convert_cell(
                lambda c: _parse_ident(c, "region name"), _cell(row, header, "REGION"),
                rownum, "REGION",
            )
            regions.setdefault(region, []).append(make_row(row, rownum))
        return tuple((name, tuple(rs)) for name, rs in regions.items())

    if kind is RelationKind.ITGR:

        def itgr_row(row: Sequence[str], rownum: int) -> ItgrRow:
            region = _convert_cell(lambda c: _parse_ident(c, "region name"),
                                   _cell(row, header, "REGION"), rownum, "REGION")
            source = _convert_cell(lambda c: _parse_ident(c, "state name"),
                                   _cell(row, header, "S1"), rownum, "S1")
            tag = _convert_cell(_parse_tag, _cell(row, header, "N"), rownum, "N")
            caller = _convert_cell(parse_agent_text, _cell(row, header, "XI"), rownum, "XI")
            op = _convert_cell(lambda c: _parse_ident(c, "operation name"),
                               _cell(row, header, "LAMBDA"), rownum, "LAMBDA")
            params = _convert_cell(parse_params_text, _cell(row, header, "THETA"),
                                   rownum, "THETA")
            callee = _convert_cell(
                lambda c: parse_agent_text(c, require_object=True),
                _cell(row, header, "GAMMA"), rownum, "GAMMA",
            )
            target = _convert_cell(lambda c: _parse_ident(c, "state name"),
                                   _cell(row, header, "S2"), rownum, "S2")
            return ItgrRow(region, source, Interaction(tag, caller, op, params, callee), target)

        return ItgrRelation(tuple(itgr_row(row, first_rownum + i) for i, row in enumerate(rows)))

    if kind is RelationKind.CLASS:
        from .core import OpSignature

        class_rows: list[ClassRow] = []
        for offset, row in enumerate(rows):
            rownum = first_rownum + offset
            cls = _convert_cell(
                lambda c: parse_agent_text(c, require_object=True),
                _cell(row, header, "C"), rownum, "C",
            )
            op = _convert_cell(lambda c: _parse_ident(c, "operation name"),
                               _cell(row, header, "LAMBDA"), rownum, "LAMBDA")
            params = _convert_cell(parse_params_text, _cell(row, header, "THETA"),
                                   rownum, "THETA")
            class_rows.append(ClassRow(cls, OpSignature(op, params)))
        return ClassRelation(tuple(class_rows))

    if kind is RelationKind.STATE:

        def state_row(row: Sequence[str], rownum: int) -> StateRow:
            return StateRow(
                _convert_cell(lambda c: _parse_ident(c, "state name"),
                              _cell(row, header, "S1"), rownum, "S1"),
                _convert_cell(_parse_tag, _cell(row, header, "N"), rownum, "N"),
                _convert_cell(lambda c: _parse_ident(c, "operation name"),
                              _cell(row, header, "LAMBDA"), rownum, "LAMBDA"),
                _convert_cell(lambda c: _parse_ident(c, "state name"),
                              _cell(row, header, "S2"), rownum, "S2"),
            )

        return StateRelationComposite(group_by_region(state_row))

    def sequence_row(row: Sequence[str], rownum: int) -> SequenceRow:
        return SequenceRow(
            _convert_cell(_parse_order, _cell(row, header, "E"), rownum, "E"),
            _convert_cell(_parse_tag, _cell(row, header, "N"), rownum, "N"),
            _convert_cell(parse_agent_text, _cell(row, header, "XI"), rownum, "XI"),
            _convert_cell(lambda c: _parse_ident(c, "operation name"),
                          _cell(row, header, "LAMBDA"), rownum, "LAMBDA"),
            _convert_cell(parse_params_text, _cell(row, header, "THETA"), rownum, "THETA"),
            _convert_cell(lambda c: parse_agent_text(c, require_object=True),
                          _cell(row, header, "GAMMA"), rownum, "GAMMA"),
        )

    return SequenceRelationComposite(group_by_region(sequence_row))


def import_relation_csv(text: str, kind: RelationKind) -> Relation:
    """Parse CSV into a typed relation.

    Validates the header (HeaderMismatchError), the column count of every
    row, and every cell's syntax (BadCellError / BadDirectionError, with
    1-based row numbers counting the header as row 1).
    """
    reader = csv.reader(io.StringIO(text))
    records = [row for row in reader if row]
    if not records:
        raise HeaderMismatchError(f"empty input; expected header {','.join(HEADERS[kind])}")
    header = tuple(records[0])
    if header != HEADERS[kind]:
        raise HeaderMismatchError(
            f"expected header {','.join(HEADERS[kind])}, got {','.join(header)}"
        )
    for i, row in enumerate(records[1:], start=2):
        if len(row) != len(header):
            raise BadCellError(
                f"expected {len(header)} cells, got {len(row)}", i, header[min(len(row), len(header) - 1)]
            )
    return _rows_to_relation(kind, records[1:], first_rownum=2)


def export_relation_json(relation: Relation | SystemItg) -> str:
    """JSON mirror of the CSV form: an array of objects whose field names
    are the CSV column names."""
    kind = relation_kind(relation)
    header = HEADERS[kind]
    objs = [dict(zip(header, row)) for row in relation_rows(relation)]
    return json.dumps(objs, indent=2) + "\n"


def import_relation_json(text: str, kind: RelationKind) -> Relation:
    header = HEADERS[kind]
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise HeaderMismatchError(f"not valid JSON: {e}") from None
    if not isinstance(data, list):
        raise HeaderMismatchError("expected a JSON array of row objects")
    rows: list[Sequence[str]] = []
    for i, obj in enumerate(data, start=2):
        if not isinstance(obj, dict) or set(obj) != set(header):
            raise HeaderMismatchError(
                f"row object {i - 1} must have exactly the fields {', '.join(header)}"
            )
        values = [obj[h] for h in header]
        if not all(isinstance(v, str) for v in values):
            raise BadCellError("all cells must be strings", i, header[0])
        rows.append(values)
    return _rows_to_relation(kind, rows, first_rownum=2)


def render_relation_table(relation: Relation | SystemItg) -> str:
    """Aligned text table (the paper-style presentation of a relation)."""
    kind = relation_kind(relation)
    header = HEADERS[kind]
    rows = relation_rows(relation)
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))

    def fmt(cells: Iterable[str]) -> str:
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

    lines = [fmt(header), fmt("-" * w for w in widths)]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines) + "\n"
