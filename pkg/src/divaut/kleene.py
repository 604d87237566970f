"""Constructive translations between rational expressions and automata.

Expression-to-automaton goes through the characteristic form: conjoin terms
become glued normalized automata, iteration terms become rolled loopback
automata, and the pieces are combined with scaling and disjoint union.  The
reverse direction decomposes an automaton into loopback/bridge parts and
reads each part back through state elimination.
"""
from __future__ import annotations

from .automaton import (
    Automaton,
    conjoin2 as conjoin2_automata,
    conjoin3 as conjoin3_automata,
    decompose_bidiverging,
    decompose_diverging,
    disjoin2,
    disjoin3,
    dot,
    normalize,
    roll,
    sum_automata,
    scale_automaton,
    trim,
    unroll,
    zero_automaton,
)
from .semiring import Semiring
from .series import (
    Atom,
    Cat,
    Conjoin2,
    Conjoin3,
    EPSILON,
    Expr,
    Omega,
    Scale,
    Star,
    Sum,
    ZERO,
    Zeta,
    make_cat,
    make_scale,
    make_star,
    make_sum,
    push_scalars,
    to_characteristic,
    validate,
)
from .words import Alphabet


# ---------------------------------------------------------------------------
# converging: expressions -> automata

def compile_conv(sr: Semiring, alphabet: Alphabet, e: Expr) -> Automaton:
    """Automaton whose finite-word weights equal the expression's
    coefficients.  No epsilon transitions are ever introduced; empty-word
    weights ride on the initial/final vectors instead."""
    validate(e)
    return _compile(sr, alphabet, push_scalars(sr, e))


def _compile(sr, alphabet, e):
    if isinstance(e, Atom):
        alphabet.require(e.symbol)
        coeff = sr.check(e.coeff)
        return Automaton.build(sr, alphabet, 2, {0: sr.one}, {1: sr.one},
                               [(0, 1, e.symbol, coeff)])
    if isinstance(e, Sum):
        if not e.terms:
            return zero_automaton(sr, alphabet)
        if all(isinstance(t, Atom) for t in e.terms):
            # one shared pair of states; parallel edges add up
            for t in e.terms:
                alphabet.require(t.symbol)
            edges = [(0, 1, t.symbol, sr.check(t.coeff)) for t in e.terms]
            return Automaton.build(sr, alphabet, 2, {0: sr.one}, {1: sr.one},
                                   edges)
        out = zero_automaton(sr, alphabet)
        for t in e.terms:
            out = sum_automata(out, _compile(sr, alphabet, t))
        return out
    if isinstance(e, Scale):
        return scale_automaton(sr.check(e.left_coeff),
                               _compile(sr, alphabet, e.inner),
                               sr.check(e.right_coeff))
    if isinstance(e, Cat):
        return _compile_cat(sr, alphabet,
                            _compile(sr, alphabet, e.left),
                            _compile(sr, alphabet, e.right))
    if isinstance(e, Star):
        inner = _compile(sr, alphabet, e.inner)
        assert sr.is_zero(dot(sr, inner.initial, inner.final)), \
            "proper operand compiled to an empty-word acceptor"
        return roll(normalize(inner))
    raise TypeError(f"not a converging expression: {e!r}")


def _compile_cat(sr, alphabet, a: Automaton, b: Automaton) -> Automaton:
    """Product construction: a path runs through ``a``, hops to ``b`` exactly
    once (folding a's exit weight and b's entry weight into the hop edge),
    so the left block carries no final weight; splits with an empty left
    part ride on the seeded right initial vector instead."""
    na, nb = a.num_states, b.num_states
    a_eps = dot(sr, a.initial, a.final)
    initial = list(a.initial) + [sr.mul(a_eps, w) for w in b.initial]
    final = [sr.zero] * na + list(b.final)
    edges = list(a.edges())
    edges += [(i + na, j + na, s, w) for i, j, s, w in b.edges()]
    for symbol in alphabet:
        if a.transitions.get(symbol) is None:
            continue
        rows = a.sparse_rows(symbol)
        for i in range(na):
            exit_w = sr.sum(sr.mul(w, a.final[j]) for j, w in rows[i])
            if sr.is_zero(exit_w):
                continue
            for j in range(nb):
                w = sr.mul(exit_w, b.initial[j])
                if not sr.is_zero(w):
                    edges.append((i, j + na, symbol, w))
    return Automaton.build(sr, alphabet, na + nb, initial, final, edges)


# ---------------------------------------------------------------------------
# converging: automata -> expressions

def extract_conv(aut: Automaton) -> Expr:
    """State elimination in ascending state order.

    The automaton is trimmed first; dead states only pad the elimination.
    R[i][j] accumulates the series of non-empty paths i -> j whose
    intermediate states have already been eliminated; the empty-word weight
    is re-added at the end from the initial/final overlap.  Star only ever
    applies to diagonal entries, which stay proper throughout.
    """
    aut = trim(aut)
    sr = aut.semiring
    n = aut.num_states
    table = [[ZERO] * n for _ in range(n)]
    for i, j, symbol, w in aut.edges():
        table[i][j] = make_sum([table[i][j], Atom(symbol, w)])

    for k in range(n):
        through = make_star(table[k][k])
        row_k = list(table[k])
        col_k = [table[i][k] for i in range(n)]
        for i in range(n):
            if col_k[i] == ZERO:
                continue
            via = make_cat(col_k[i], through)
            for j in range(n):
                if row_k[j] == ZERO:
                    continue
                table[i][j] = make_sum([table[i][j], make_cat(via, row_k[j])])

    terms = []
    for i in range(n):
        if sr.is_zero(aut.initial[i]):
            continue
        for j in range(n):
            if sr.is_zero(aut.final[j]):
                continue
            terms.append(make_scale(sr, aut.initial[i], table[i][j], aut.final[j]))
    empty_weight = dot(sr, aut.initial, aut.final)
    if not sr.is_zero(empty_weight):
        terms.append(make_scale(sr, empty_weight, EPSILON, sr.one))
    return make_sum(terms)


# ---------------------------------------------------------------------------
# diverging level

def compile_div(sr: Semiring, alphabet: Alphabet, e: Expr) -> Automaton:
    form = to_characteristic(sr, e, "div")
    out = zero_automaton(sr, alphabet)
    for left, first, second, right in form.conjoin_terms:
        glued = conjoin2_automata(_normalized(sr, alphabet, first),
                                  _normalized(sr, alphabet, second))
        out = sum_automata(out, scale_automaton(left, glued, right))
    for left, inner, right in form.iteration_terms:
        looped = roll(_normalized(sr, alphabet, inner))
        out = sum_automata(out, scale_automaton(left, looped, right))
    return out


def extract_div(aut: Automaton) -> Expr:
    sr = aut.semiring
    terms = []
    for left, part, right in decompose_diverging(aut).parts:
        if part.initial_states() == part.final_states():
            body = Omega(extract_conv(unroll(part)))
        else:
            prelude, cycle = disjoin2(part)
            body = Conjoin2(extract_conv(prelude), extract_conv(cycle))
        terms.append(_scale_expr(sr, left, body, right))
    return make_sum(terms)


# ---------------------------------------------------------------------------
# bidiverging level

def compile_bidiv(sr: Semiring, alphabet: Alphabet, e: Expr) -> Automaton:
    form = to_characteristic(sr, e, "bidiv")
    out = zero_automaton(sr, alphabet)
    for left, first, middle, second, right in form.conjoin_terms:
        glued = conjoin3_automata(_normalized(sr, alphabet, first),
                                  _normalized(sr, alphabet, middle),
                                  _normalized(sr, alphabet, second))
        out = sum_automata(out, scale_automaton(left, glued, right))
    for left, inner, right in form.iteration_terms:
        looped = roll(_normalized(sr, alphabet, inner))
        out = sum_automata(out, scale_automaton(left, looped, right))
    return out


def extract_bidiv(aut: Automaton) -> Expr:
    sr = aut.semiring
    terms = []
    for left, part, right in decompose_bidiverging(aut).parts:
        if part.initial_states() == part.final_states():
            body = Zeta(extract_conv(unroll(part)))
        else:
            head, middle, tail = disjoin3(part)
            body = Conjoin3(extract_conv(head), extract_conv(middle),
                            extract_conv(tail))
        terms.append(_scale_expr(sr, left, body, right))
    return make_sum(terms)


# ---------------------------------------------------------------------------
# helpers

def _normalized(sr, alphabet, e) -> Automaton:
    compiled = _compile(sr, alphabet, push_scalars(sr, e))
    # characteristic-form operands are proper, so the empty word is rejected
    assert sr.is_zero(dot(sr, compiled.initial, compiled.final)), \
        "proper operand compiled to an empty-word acceptor"
    return normalize(compiled)


def _scale_expr(sr, left, e, right) -> Expr:
    if sr.is_zero(left) or sr.is_zero(right):
        return ZERO
    if sr.eq(left, sr.one) and sr.eq(right, sr.one):
        return e
    return Scale(left, e, right)
