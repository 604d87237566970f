"""Textual formats for automata and expressions.

One human-readable format each, with deterministic serialization (states in
id order, transitions sorted) so emitted files are byte-stable and every
emitted file re-parses to a semantically equal object.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import Automaton
from .errors import DivautParseError
from .semiring import Semiring, semiring_by_name
from .series import (
    Atom,
    Cat,
    Conjoin2,
    Conjoin3,
    Expr,
    Omega,
    Scale,
    Star,
    Sum,
    Zeta,
)
from .words import Alphabet

_PUNCT = set("[]{}:,()")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int
    is_word: bool


def tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
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
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, line, col, False))
            col += 1
            i += 1
            continue
        start = i
        start_col = col
        while i < len(text) and text[i] not in _PUNCT and not text[i].isspace() \
                and text[i] != "#":
            i += 1
            col += 1
        tokens.append(Token(text[start:i], line, start_col, True))
    return tokens


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, expect=None):
        tok = self.peek()
        if tok is None:
            raise DivautParseError("unexpected end of input")
        if expect is not None and tok.text != expect:
            raise DivautParseError(f"expected {expect!r}, found {tok.text!r}",
                                   tok.line, tok.column)
        self.pos += 1
        return tok

    def word(self, what="name"):
        tok = self.next()
        if not tok.is_word:
            raise DivautParseError(f"expected {what}, found {tok.text!r}",
                                   tok.line, tok.column)
        return tok

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise DivautParseError(f"unexpected trailing {tok.text!r}",
                                   tok.line, tok.column)


def _parse_literal(sr: Semiring, tok: Token):
    try:
        return sr.parse(tok.text)
    except DivautParseError as exc:
        raise DivautParseError(str(exc), tok.line, tok.column) from None


def _parse_name_list(stream: _Stream):
    stream.next("[")
    names = []
    while True:
        tok = stream.peek()
        if tok is not None and tok.text == "]":
            stream.next()
            return names
        names.append(stream.word("name").text)
        tok = stream.peek()
        if tok is not None and tok.text == ",":
            stream.next()
        elif tok is not None and tok.text == "]":
            stream.next()
            return names
        else:
            where = tok or Token("", 0, 0, False)
            raise DivautParseError("expected ',' or ']' in list",
                                   where.line, where.column)


def _parse_weight_map(stream: _Stream, sr: Semiring, state_index: dict):
    stream.next("{")
    out = {}
    while True:
        tok = stream.peek()
        if tok is not None and tok.text == "}":
            stream.next()
            return out
        name_tok = stream.word("state name")
        if name_tok.text not in state_index:
            raise DivautParseError(f"unknown state {name_tok.text!r}",
                                   name_tok.line, name_tok.column)
        stream.next(":")
        out[state_index[name_tok.text]] = _parse_literal(sr, stream.word("weight"))
        tok = stream.peek()
        if tok is not None and tok.text == ",":
            stream.next()


def parse_automaton(text: str) -> Automaton:
    stream = _Stream(tokenize(text))
    semiring = None
    alphabet = None
    state_names = None
    state_index = {}
    initial = {}
    final = {}
    edges = []
    seen = set()
    while stream.peek() is not None:
        key_tok = stream.word("section name")
        key = key_tok.text
        if key in seen:
            raise DivautParseError(f"duplicate section {key!r}",
                                   key_tok.line, key_tok.column)
        seen.add(key)
        stream.next(":")
        if key == "semiring":
            semiring = semiring_by_name(stream.word("semiring name").text)
        elif key == "alphabet":
            try:
                alphabet = Alphabet(tuple(_parse_name_list(stream)))
            except ValueError as exc:
                raise DivautParseError(str(exc), key_tok.line,
                                       key_tok.column) from None
        elif key == "states":
            state_names = _parse_name_list(stream)
            if len(set(state_names)) != len(state_names):
                raise DivautParseError("duplicate state names",
                                       key_tok.line, key_tok.column)
            state_index = {name: i for i, name in enumerate(state_names)}
        elif key in ("initial", "final"):
            if semiring is None or state_names is None:
                raise DivautParseError(f"{key} must follow semiring and states",
                                       key_tok.line, key_tok.column)
            target = initial if key == "initial" else final
            target.update(_parse_weight_map(stream, semiring, state_index))
        elif key == "transitions":
            if semiring is None or alphabet is None or state_names is None:
                raise DivautParseError(
                    "transitions must follow semiring, alphabet, and states",
                    key_tok.line, key_tok.column)
            stream.next("[")
            while True:
                tok = stream.peek()
                if tok is None:
                    raise DivautParseError("unterminated transitions list")
                if tok.text == "]":
                    stream.next()
                    break
                edges.append(_parse_transition(stream, semiring, alphabet,
                                               state_index))
                tok = stream.peek()
                if tok is not None and tok.text == ",":
                    stream.next()
        else:
            raise DivautParseError(f"unknown section {key!r}",
                                   key_tok.line, key_tok.column)
    stream.done()
    if semiring is None or alphabet is None or state_names is None:
        raise DivautParseError("file needs semiring, alphabet, and states sections")
    return Automaton.build(semiring, alphabet, len(state_names), initial, final,
                           edges, state_names=state_names)


def _parse_transition(stream: _Stream, sr, alphabet, state_index):
    stream.next("{")
    fields = {}
    while True:
        tok = stream.peek()
        if tok is not None and tok.text == "}":
            stream.next()
            break
        key_tok = stream.word("transition field")
        if key_tok.text not in ("from", "to", "symbol", "weight"):
            raise DivautParseError(f"unknown transition field {key_tok.text!r}",
                                   key_tok.line, key_tok.column)
        stream.next(":")
        fields[key_tok.text] = stream.word("value")
        tok = stream.peek()
        if tok is not None and tok.text == ",":
            stream.next()
    for need in ("from", "to", "symbol"):
        if need not in fields:
            raise DivautParseError(f"transition is missing {need!r}")
    for endpoint in ("from", "to"):
        tok = fields[endpoint]
        if tok.text not in state_index:
            raise DivautParseError(f"unknown state {tok.text!r}",
                                   tok.line, tok.column)
    sym_tok = fields["symbol"]
    if sym_tok.text not in alphabet:
        raise DivautParseError(f"symbol {sym_tok.text!r} not in alphabet",
                               sym_tok.line, sym_tok.column)
    weight = _parse_literal(sr, fields["weight"]) if "weight" in fields else sr.one
    return (state_index[fields["from"].text], state_index[fields["to"].text],
            sym_tok.text, weight)


def format_automaton(aut: Automaton) -> str:
    sr = aut.semiring
    names = [aut.name_of(i) for i in range(aut.num_states)]
    lines = [
        f"semiring: {sr.name}",
        f"alphabet: [{', '.join(aut.alphabet.symbols)}]",
        f"states: [{', '.join(names)}]",
    ]

    def weight_map(vec):
        entries = [f"{names[i]}: {sr.format(w)}" for i, w in enumerate(vec)
                   if not sr.is_zero(w)]
        return "{" + ", ".join(entries) + "}"

    lines.append(f"initial: {weight_map(aut.initial)}")
    lines.append(f"final: {weight_map(aut.final)}")
    edges = sorted(aut.edges(), key=lambda e: (names[e[0]], e[2], names[e[1]]))
    if not edges:
        lines.append("transitions: []")
    else:
        lines.append("transitions: [")
        for src, dst, symbol, weight in edges:
            lines.append(f"  {{from: {names[src]}, to: {names[dst]}, "
                         f"symbol: {symbol}, weight: {sr.format(weight)}}},")
        lines.append("]")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# expression files

_NULLARY = ()
_EXPR_HEADS = {"sym", "sum", "cat", "star", "omega", "zeta", "conjoin",
               "conjoin3", "scale"}


def _parse_expr(stream: _Stream, sr: Semiring, alphabet: Alphabet) -> Expr:
    head_tok = stream.word("expression")
    head = head_tok.text
    if head not in _EXPR_HEADS:
        raise DivautParseError(f"unknown expression head {head!r}",
                               head_tok.line, head_tok.column)
    stream.next("(")

    def args_done():
        tok = stream.peek()
        return tok is not None and tok.text == ")"

    def comma():
        stream.next(",")

    if head == "sym":
        sym_tok = stream.word("symbol")
        if sym_tok.text not in alphabet:
            raise DivautParseError(f"symbol {sym_tok.text!r} not in alphabet",
                                   sym_tok.line, sym_tok.column)
        comma()
        coeff = _parse_literal(sr, stream.word("coefficient"))
        stream.next(")")
        return Atom(sym_tok.text, coeff)
    if head == "sum":
        terms = []
        if not args_done():
            terms.append(_parse_expr(stream, sr, alphabet))
            while not args_done():
                comma()
                terms.append(_parse_expr(stream, sr, alphabet))
        stream.next(")")
        return Sum(tuple(terms))
    if head == "scale":
        left = _parse_literal(sr, stream.word("coefficient"))
        comma()
        inner = _parse_expr(stream, sr, alphabet)
        comma()
        right = _parse_literal(sr, stream.word("coefficient"))
        stream.next(")")
        return Scale(left, inner, right)

    first = _parse_expr(stream, sr, alphabet)
    if head == "star":
        stream.next(")")
        return Star(first)
    if head == "omega":
        stream.next(")")
        return Omega(first)
    if head == "zeta":
        stream.next(")")
        return Zeta(first)
    comma()
    second = _parse_expr(stream, sr, alphabet)
    if head == "cat":
        stream.next(")")
        return Cat(first, second)
    if head == "conjoin":
        stream.next(")")
        return Conjoin2(first, second)
    comma()
    third = _parse_expr(stream, sr, alphabet)
    stream.next(")")
    return Conjoin3(first, second, third)


@dataclass(frozen=True)
class ExpressionFile:
    semiring: Semiring
    alphabet: Alphabet
    expr: Expr


def parse_expression_file(text: str) -> ExpressionFile:
    stream = _Stream(tokenize(text))
    semiring = None
    alphabet = None
    expr = None
    while stream.peek() is not None:
        key_tok = stream.word("section name")
        stream.next(":")
        if key_tok.text == "semiring":
            semiring = semiring_by_name(stream.word("semiring name").text)
        elif key_tok.text == "alphabet":
            try:
                alphabet = Alphabet(tuple(_parse_name_list(stream)))
            except ValueError as exc:
                raise DivautParseError(str(exc), key_tok.line,
                                       key_tok.column) from None
        elif key_tok.text == "expr":
            if semiring is None or alphabet is None:
                raise DivautParseError("expr must follow semiring and alphabet",
                                       key_tok.line, key_tok.column)
            expr = _parse_expr(stream, semiring, alphabet)
        else:
            raise DivautParseError(f"unknown section {key_tok.text!r}",
                                   key_tok.line, key_tok.column)
    stream.done()
    if semiring is None or alphabet is None or expr is None:
        raise DivautParseError("file needs semiring, alphabet, and expr sections")
    return ExpressionFile(semiring, alphabet, expr)


def format_expr(sr: Semiring, e: Expr) -> str:
    if isinstance(e, Atom):
        return f"sym({e.symbol}, {sr.format(sr.check(e.coeff))})"
    if isinstance(e, Sum):
        return f"sum({', '.join(format_expr(sr, t) for t in e.terms)})"
    if isinstance(e, Cat):
        return f"cat({format_expr(sr, e.left)}, {format_expr(sr, e.right)})"
    if isinstance(e, Star):
        return f"star({format_expr(sr, e.inner)})"
    if isinstance(e, Scale):
        return (f"scale({sr.format(sr.check(e.left_coeff))}, "
                f"{format_expr(sr, e.inner)}, "
                f"{sr.format(sr.check(e.right_coeff))})")
    if isinstance(e, Omega):
        return f"omega({format_expr(sr, e.inner)})"
    if isinstance(e, Zeta):
        return f"zeta({format_expr(sr, e.inner)})"
    if isinstance(e, Conjoin2):
        return f"conjoin({format_expr(sr, e.first)}, {format_expr(sr, e.second)})"
    if isinstance(e, Conjoin3):
        return (f"conjoin3({format_expr(sr, e.first)}, "
                f"{format_expr(sr, e.middle)}, {format_expr(sr, e.second)})")
    raise TypeError(f"not a series expression: {e!r}")


def format_expression_file(sr: Semiring, alphabet: Alphabet, e: Expr) -> str:
    return (f"semiring: {sr.name}\n"
            f"alphabet: [{', '.join(alphabet.symbols)}]\n"
            f"expr: {format_expr(sr, e)}\n")


def detect_kind(text: str) -> str:
    """'automaton' or 'expression', by which sections appear."""
    for tok in tokenize(text):
        if tok.is_word and tok.text == "states":
            return "automaton"
        if tok.is_word and tok.text == "expr":
            return "expression"
    raise DivautParseError("file has neither a states nor an expr section")
