"""Concrete syntax: parsing and printing of systems, formulae and terms.

Systems travel in a line-oriented format:

    mts coffee
    actions: a b
    states: p q
    init: p
    may: p a q
    must: p a q

``#`` starts a comment, blank lines are skipped, and directives may repeat
(their operands accumulate).  LTS files replace ``actions:`` by the three
signature classes ``cov:``, ``con:`` and ``bi:`` (a bare ``actions:`` line
in an LTS file is sugar for ``cov:``) and ``may:``/``must:`` by ``trans:``.
State names are single tokens; anything fancier must be double quoted, with
backslash escaping the quote and itself.  Labels are never quoted; decorated
labels are written structurally, ``cv(a)`` or ``ct(a)``.

A must transition without its may twin is repaired (the twin is added) with
a warning; under ``strict=True`` it is an error instead.

:func:`print_system` emits the canonical form: sorted directives, all may
twins explicit, quotes only where needed.  Parsing the canonical form back
yields an equal system and no warnings.

Formulae and terms have small expression grammars matching the canonical
printers :func:`~modalsim.formulas.formula_text` and
:func:`~modalsim.terms.term_text` (re-exported here): modalities bind
tighter than ``&``, which binds tighter than ``|``; prefixes bind tighter
than ``+``; ``0`` and ``w`` are reserved term atoms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .formulas import (
    And,
    Bottom,
    Box,
    Diamond,
    Formula,
    LogicKind,
    Or,
    Top,
    check_wf,
    formula_text,
)
from .systems import (
    Action,
    CCSignature,
    PointedLTS,
    PointedMTS,
    System,
    Transition,
    ct,
    cv,
    is_name_token,
    sorted_actions,
)
from .terms import MustPrefix, Omega, Prefix, Sum, Term, Zero, term_text

__all__ = [
    "ParseError",
    "ParsedSystem",
    "TERM_KINDS",
    "formula_text",
    "parse_formula",
    "parse_label",
    "parse_system",
    "parse_system_details",
    "parse_term",
    "print_system",
    "term_text",
]


class ParseError(ValueError):
    """A syntax or semantic error in parsed text, with a 1-based position."""

    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    col: int
    quoted: bool = False


def _tokenize_line(text: str, line: int) -> list[_Token]:
    out: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch == '"':
            i += 1
            parts: list[str] = []
            while True:
                if i >= n:
                    raise ParseError("unterminated quote", line, col)
                ch = text[i]
                if ch == "\\":
                    if i + 1 >= n:
                        raise ParseError("dangling backslash inside quotes", line, i + 1)
                    nxt = text[i + 1]
                    if nxt not in ('"', "\\"):
                        raise ParseError(f"unknown escape \\{nxt}", line, i + 1)
                    parts.append(nxt)
                    i += 2
                    continue
                if ch == '"':
                    i += 1
                    break
                parts.append(ch)
                i += 1
            out.append(_Token("".join(parts), line, col, quoted=True))
            continue
        j = i
        while j < n and text[j] not in ' \t\r#"':
            j += 1
        out.append(_Token(text[i:j], line, col))
        i = j
    return out


_NAME_PART = re.compile(r"[A-Za-z0-9_]+")


def parse_label(text: str, line: int = 1, col: int = 1) -> Action:
    """Parse a label written structurally, such as ``a`` or ``cv(ct(b))``."""
    label, end = _label_in_text(text, 0, line, col)
    if end != len(text):
        raise ParseError(
            f"trailing characters after label: {text[end:]!r}", line, col + end
        )
    return label


def _label_in_text(text: str, i: int, line: int, col: int) -> tuple[Action, int]:
    m = _NAME_PART.match(text, i)
    if not m:
        found = repr(text[i]) if i < len(text) else "end of input"
        raise ParseError(f"expected a label name, found {found}", line, col + i)
    name = m.group()
    j = m.end()
    if name in ("cv", "ct") and j < len(text) and text[j] == "(":
        inner, k = _label_in_text(text, j + 1, line, col)
        if k >= len(text) or text[k] != ")":
            raise ParseError("expected ')' to close the label", line, col + k)
        return (cv(inner) if name == "cv" else ct(inner)), k + 1
    return Action(name=name), j


@dataclass(frozen=True)
class ParsedSystem:
    """A parsed system together with its optional name and any warnings."""

    system: System
    name: Optional[str]
    warnings: tuple[str, ...]


_MTS_DIRECTIVES = {"actions:", "states:", "init:", "may:", "must:"}
_LTS_DIRECTIVES = {"actions:", "cov:", "con:", "bi:", "states:", "init:", "trans:"}

_RelEntry = tuple[_Token, Action, _Token, _Token]


def parse_system_details(text: str, strict: bool = False) -> ParsedSystem:
    """Parse the line format, returning the system, its name and warnings."""
    kind: Optional[str] = None
    name: Optional[str] = None
    mts_actions: dict[Action, _Token] = {}
    classes: dict[str, dict[Action, _Token]] = {"cov": {}, "con": {}, "bi": {}}
    states: dict[str, _Token] = {}
    init_tok: Optional[_Token] = None
    rels: dict[str, list[_RelEntry]] = {"may": [], "must": [], "trans": []}
    last_line = 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        tokens = _tokenize_line(raw, lineno)
        if not tokens:
            continue
        head = tokens[0]
        if kind is None:
            if head.quoted or head.text not in ("mts", "lts"):
                raise ParseError(
                    "expected an 'mts' or 'lts' header line", head.line, head.col
                )
            kind = head.text
            if len(tokens) > 2:
                extra = tokens[2]
                raise ParseError(
                    "the header line takes at most a name", extra.line, extra.col
                )
            if len(tokens) == 2:
                name = tokens[1].text
            continue
        if head.quoted or not head.text.endswith(":"):
            raise ParseError(
                f"expected a directive, found {head.text!r}", head.line, head.col
            )
        allowed = _MTS_DIRECTIVES if kind == "mts" else _LTS_DIRECTIVES
        if head.text not in allowed:
            other = _LTS_DIRECTIVES if kind == "mts" else _MTS_DIRECTIVES
            if head.text in other:
                raise ParseError(
                    f"directive {head.text!r} is not valid in a {kind} file",
                    head.line,
                    head.col,
                )
            raise ParseError(f"unknown directive {head.text!r}", head.line, head.col)
        directive = head.text[:-1]
        operands = tokens[1:]
        if directive in ("actions", "cov", "con", "bi"):
            if kind == "mts":
                target = mts_actions
            else:
                target = classes["cov" if directive == "actions" else directive]
            for tok in operands:
                if tok.quoted:
                    raise ParseError("labels cannot be quoted", tok.line, tok.col)
                target.setdefault(parse_label(tok.text, tok.line, tok.col), tok)
        elif directive == "states":
            for tok in operands:
                states.setdefault(tok.text, tok)
        elif directive == "init":
            if len(operands) != 1:
                raise ParseError("init: takes exactly one state", head.line, head.col)
            if init_tok is not None:
                raise ParseError("init: was already given", head.line, head.col)
            init_tok = operands[0]
        else:
            if len(operands) != 3:
                raise ParseError(
                    f"{head.text} takes exactly three operands: source label target",
                    head.line,
                    head.col,
                )
            src, labtok, dst = operands
            if labtok.quoted:
                raise ParseError("labels cannot be quoted", labtok.line, labtok.col)
            lab = parse_label(labtok.text, labtok.line, labtok.col)
            rels[directive].append((src, lab, labtok, dst))

    if kind is None:
        raise ParseError("expected an 'mts' or 'lts' header line", last_line, 1)
    if init_tok is None:
        raise ParseError("missing init: directive", last_line, 1)
    if init_tok.text not in states:
        raise ParseError(
            f"undeclared state {init_tok.text!r}", init_tok.line, init_tok.col
        )

    warnings: list[str] = []
    if kind == "mts":
        declared = frozenset(mts_actions)
        for rel_name in ("may", "must"):
            _check_endpoints(rels[rel_name], states, declared)
        may = {(s.text, lab, d.text) for s, lab, _lt, d in rels["may"]}
        must: set[Transition] = set()
        for s, lab, labtok, d in rels["must"]:
            triple = (s.text, lab, d.text)
            must.add(triple)
            if triple not in may:
                msg = f"must transition {s.text} {lab} {d.text} has no may twin"
                if strict:
                    raise ParseError(msg, labtok.line, labtok.col)
                warnings.append(f"line {labtok.line}: {msg}; adding it")
                may.add(triple)
        system: System = PointedMTS(
            frozenset(states), declared, frozenset(may), frozenset(must), init_tok.text
        )
    else:
        sig = CCSignature(
            covariant=frozenset(classes["cov"]),
            contravariant=frozenset(classes["con"]),
            bivariant=frozenset(classes["bi"]),
        )
        for lab in sig.overlaps():
            decls = sorted(
                (d[lab] for d in classes.values() if lab in d),
                key=lambda t: (t.line, t.col),
            )
            where = decls[-1]
            raise ParseError(
                f"label {lab} is declared in more than one signature class",
                where.line,
                where.col,
            )
        _check_endpoints(rels["trans"], states, sig.actions)
        trans = frozenset((s.text, lab, d.text) for s, lab, _lt, d in rels["trans"])
        system = PointedLTS(frozenset(states), sig, trans, init_tok.text)
    return ParsedSystem(system=system, name=name, warnings=tuple(warnings))


def _check_endpoints(
    entries: list[_RelEntry],
    states: dict[str, _Token],
    declared: frozenset[Action],
) -> None:
    for src, lab, labtok, dst in entries:
        if src.text not in states:
            raise ParseError(f"undeclared state {src.text!r}", src.line, src.col)
        if dst.text not in states:
            raise ParseError(f"undeclared state {dst.text!r}", dst.line, dst.col)
        if lab not in declared:
            raise ParseError(f"undeclared label {lab}", labtok.line, labtok.col)


def parse_system(text: str, strict: bool = False) -> System:
    """Parse the line format, returning just the system."""
    return parse_system_details(text, strict=strict).system


def _show_state(s: str) -> str:
    if is_name_token(s):
        return s
    escaped = s.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _triple_key(t: Transition) -> tuple[str, str, str]:
    return (t[0], str(t[1]), t[2])


def print_system(system: System, name: Optional[str] = None) -> str:
    """The canonical text form of a system; inverse to :func:`parse_system`."""
    header = "mts" if isinstance(system, PointedMTS) else "lts"
    if name is not None:
        header += f" {_show_state(name)}"
    lines = [header]
    if isinstance(system, PointedMTS):
        if system.actions:
            lines.append(
                "actions: " + " ".join(str(a) for a in sorted_actions(system.actions))
            )
        _append_state_lines(lines, system.states, system.init)
        for rel_name, rel in (("may", system.may), ("must", system.must)):
            for src, lab, dst in sorted(rel, key=_triple_key):
                lines.append(f"{rel_name}: {_show_state(src)} {lab} {_show_state(dst)}")
    else:
        sig = system.signature
        for directive, cls in (
            ("cov", sig.covariant),
            ("con", sig.contravariant),
            ("bi", sig.bivariant),
        ):
            if cls:
                lines.append(
                    f"{directive}: " + " ".join(str(a) for a in sorted_actions(cls))
                )
        _append_state_lines(lines, system.states, system.init)
        for src, lab, dst in sorted(system.transitions, key=_triple_key):
            lines.append(f"trans: {_show_state(src)} {lab} {_show_state(dst)}")
    return "\n".join(lines) + "\n"


def _append_state_lines(lines: list[str], states: frozenset[str], init: str) -> None:
    lines.append("states: " + " ".join(_show_state(s) for s in sorted(states)))
    lines.append(f"init: {_show_state(init)}")


class _Cursor:
    """A token stream with one-token lookahead and positioned errors."""

    def __init__(self, tokens: list[_Token]) -> None:
        self._tokens = tokens
        self._pos = 0

    def peek_text(self) -> Optional[str]:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos].text
        return None

    def next(self, wanted: str = "a token") -> _Token:
        if self._pos >= len(self._tokens):
            line, col = self._end_pos()
            raise ParseError(f"expected {wanted}, found end of input", line, col)
        tok = self._tokens[self._pos]
        self._pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next(repr(text))
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def expect_end(self) -> None:
        if self._pos < len(self._tokens):
            tok = self._tokens[self._pos]
            raise ParseError(f"unexpected trailing input: {tok.text!r}", tok.line, tok.col)

    def _end_pos(self) -> tuple[int, int]:
        if not self._tokens:
            return (1, 1)
        last = self._tokens[-1]
        return (last.line, last.col + len(last.text))


def _scan_tokens(text: str, pattern: re.Pattern) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            col += 1
            i += 1
            continue
        m = pattern.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        tokens.append(_Token(m.group(), line, col))
        col += m.end() - i
        i = m.end()
    return tokens


def _label_from_stream(cur: _Cursor) -> Action:
    tok = cur.next("a label")
    if not is_name_token(tok.text):
        raise ParseError(f"expected a label, found {tok.text!r}", tok.line, tok.col)
    if tok.text in ("cv", "ct") and cur.peek_text() == "(":
        cur.next()
        inner = _label_from_stream(cur)
        cur.expect(")")
        return cv(inner) if tok.text == "cv" else ct(inner)
    return Action(name=tok.text)


_FORMULA_TOKEN = re.compile(r"[A-Za-z0-9_]+|[<>\[\]()&|]")


def parse_formula(text: str, logic: Optional[LogicKind] = None) -> Formula:
    """Parse a formula; with a logic given, also require well-formedness.

    Syntax errors raise :class:`ParseError`; well-formedness problems raise
    a plain :class:`ValueError` listing them.
    """
    cur = _Cursor(_scan_tokens(text, _FORMULA_TOKEN))
    phi = _formula(cur)
    cur.expect_end()
    if logic is not None:
        problems = check_wf(phi, logic)
        if problems:
            raise ValueError("; ".join(problems))
    return phi


def _formula(cur: _Cursor) -> Formula:
    out = _conjunct(cur)
    while cur.peek_text() == "|":
        cur.next()
        out = Or(out, _conjunct(cur))
    return out


def _conjunct(cur: _Cursor) -> Formula:
    out = _unary(cur)
    while cur.peek_text() == "&":
        cur.next()
        out = And(out, _unary(cur))
    return out


def _unary(cur: _Cursor) -> Formula:
    tok = cur.next("a formula")
    if tok.text == "tt":
        return Top()
    if tok.text == "ff":
        return Bottom()
    if tok.text == "(":
        phi = _formula(cur)
        cur.expect(")")
        return phi
    if tok.text == "<":
        lab = _label_from_stream(cur)
        cur.expect(">")
        return Diamond(lab, _unary(cur))
    if tok.text == "[":
        lab = _label_from_stream(cur)
        cur.expect("]")
        return Box(lab, _unary(cur))
    raise ParseError(f"expected a formula, found {tok.text!r}", tok.line, tok.col)


_TERM_TOKEN = re.compile(r"[A-Za-z0-9_]+|[+.!()]")

TERM_KINDS = ("mts", "lts")


def parse_term(text: str, kind: str = "mts") -> Term:
    """Parse a process term; ``kind`` decides whether ``!`` prefixes parse.

    ``0`` and ``w`` are reserved atoms, not labels.
    """
    if kind not in TERM_KINDS:
        raise ValueError(f"unknown term kind {kind!r}; pick one of {TERM_KINDS}")
    cur = _Cursor(_scan_tokens(text, _TERM_TOKEN))
    t = _term(cur, kind)
    cur.expect_end()
    return t


def _term(cur: _Cursor, kind: str) -> Term:
    out = _prefixed(cur, kind)
    while cur.peek_text() == "+":
        cur.next()
        out = Sum(out, _prefixed(cur, kind))
    return out


def _prefixed(cur: _Cursor, kind: str) -> Term:
    tok = cur.next("a term")
    if tok.text == "(":
        t = _term(cur, kind)
        cur.expect(")")
        return t
    if not is_name_token(tok.text):
        raise ParseError(f"expected a term, found {tok.text!r}", tok.line, tok.col)
    if tok.text in ("cv", "ct") and cur.peek_text() == "(":
        cur.next()
        inner = _label_from_stream(cur)
        cur.expect(")")
        lab = cv(inner) if tok.text == "cv" else ct(inner)
        return _prefix_rest(cur, kind, lab)
    if cur.peek_text() in (".", "!"):
        if tok.text in ("0", "w"):
            raise ParseError(
                f"{tok.text!r} is a reserved atom, not a label", tok.line, tok.col
            )
        return _prefix_rest(cur, kind, Action(name=tok.text))
    if tok.text == "0":
        return Zero()
    if tok.text == "w":
        return Omega()
    raise ParseError(
        f"label {tok.text!r} needs a '.' or '!' and a body", tok.line, tok.col
    )


def _prefix_rest(cur: _Cursor, kind: str, lab: Action) -> Term:
    op = cur.next("'.' or '!'")
    if op.text == ".":
        return Prefix(lab, _prefixed(cur, kind))
    if op.text == "!":
        if kind == "lts":
            raise ParseError("'!' prefixes only exist in mts terms", op.line, op.col)
        return MustPrefix(lab, _prefixed(cur, kind))
    raise ParseError(f"expected '.' or '!', found {op.text!r}", op.line, op.col)
