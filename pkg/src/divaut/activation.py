"""Activation decisions and masked behavior evaluation.

A pair of states (i, f) is *activated* by an infinite word when arbitrarily
long prefixes have a non-zero i-to-f path sum, and by a biinfinite word when
every window admits an enclosing window with a non-zero path sum.  Behavior
values sum only over activated pairs; everything else is masked to zero.

Deciding activation exactly depends on the semiring:

* Boolean: the matrix monoid is finite, so the powers of the cycle matrix
  are eventually periodic; scan one full period past the preperiod.
* Natural: no cancellation, so a path sum is non-zero exactly when some
  path is, which reduces the question to the Boolean projection.
* Rational / Gaussian rational (fields): along each residue of the cycle
  length the prefix sums form a linear recurrence s_k = u . C^k . v of order
  at most d = |Q|.  Such a sequence that is eventually zero is zero from
  index d on (its generating function is a polynomial of degree < d), and by
  the Cayley-Hamilton recurrence it is eventually zero iff s_d .. s_{2d-1}
  all vanish.  So one exact window of length d decides the tail.

No general exact two-sided decision is implemented for fields; biinfinite
activation over a field falls back to a bounded horizon scan unless the
caller insists on exactness, in which case it refuses.  The one exception
is a singleton alphabet (constant word), where a window's sum depends only
on its length and the recurrence argument applies unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import (
    Automaton,
    advance_row,
    identity_matrix,
    mat_mul,
    mat_vec,
    dot,
    vec_mat,
)
from .errors import UnsupportedExactDecision
from .semiring import BOOLEAN, WeightSequence, BiWeightGrid
from .words import BiInfiniteWord, UPInfiniteWord, require_same_alphabet

_MONOID_CAP = 8192


@dataclass(frozen=True)
class ActivationPolicy:
    """auto: exact where available, bounded horizon otherwise.
    exact: refuse when no exact method exists.
    horizon: always scan up to the given bound."""

    kind: str  # "auto" | "exact" | "horizon"
    horizon: int = 0

    @classmethod
    def parse(cls, text: str) -> "ActivationPolicy":
        if text == "auto":
            return AUTO
        if text == "exact":
            return EXACT
        if text.startswith("horizon:"):
            bound = int(text.split(":", 1)[1])
            if bound < 2:
                raise ValueError("horizon bound must be at least 2")
            return cls("horizon", bound)
        raise ValueError(f"bad activation policy {text!r}")


AUTO = ActivationPolicy("auto")
EXACT = ActivationPolicy("exact")


def horizon(bound: int) -> ActivationPolicy:
    return ActivationPolicy("horizon", bound)


@dataclass(frozen=True)
class ActivationVerdict:
    """Per-pair activation outcomes plus the method that produced them."""

    pairs: dict  # (initial_state, final_state) -> bool
    method: str


# ---------------------------------------------------------------------------
# shared machinery
#
# Boolean matrices are packed into integer bitmasks (one int per row) so the
# finite-monoid searches stay cheap on the large automata the translations
# produce.

def _bits_of_rows(sparse_rows):
    return tuple(sum(1 << j for j, _ in row) for row in sparse_rows)


def _bits_of_vector(sr, vec):
    return sum(1 << j for j, w in enumerate(vec) if not sr.is_zero(w))


def _bit_identity(n):
    return tuple(1 << i for i in range(n))


def _bit_vec_mat(row_bits: int, mat_bits) -> int:
    acc = 0
    remaining = row_bits
    while remaining:
        low = remaining & -remaining
        acc |= mat_bits[low.bit_length() - 1]
        remaining ^= low
    return acc


def _bit_mat_mul(a_bits, b_bits):
    return tuple(_bit_vec_mat(row, b_bits) for row in a_bits)


def _bit_mat_vec(mat_bits, col_bits: int) -> int:
    out = 0
    for i, row in enumerate(mat_bits):
        if row & col_bits:
            out |= 1 << i
    return out


def _monoid_powers(mat_bits):
    """Bit-packed Boolean powers C^0, C^1, ... up to one full period past
    the preperiod; returns (powers, preperiod, period)."""
    powers = [_bit_identity(len(mat_bits))]
    seen = {powers[0]: 0}
    while True:
        nxt = _bit_mat_mul(powers[-1], mat_bits)
        if nxt in seen:
            start = seen[nxt]
            return powers, start, len(powers) - start
        seen[nxt] = len(powers)
        powers.append(nxt)
        if len(powers) > _MONOID_CAP:
            raise RuntimeError("boolean matrix monoid exceeded the iteration cap")


def _exact_method_onesided(aut):
    sr = aut.semiring
    if sr is BOOLEAN:
        return "ExactBooleanMonoid"
    if not sr.has_cancellation:
        return "ExactNaturalReduction"
    if sr.is_field:
        return "ExactFieldLRS"
    raise UnsupportedExactDecision(
        f"no exact activation decision for semiring {sr.name}")


def _onesided_monoid(aut, word, row, col) -> bool:
    """Exact decision over Boolean/Natural: is row . M(w[0..n]) . col non-zero
    for infinitely many n?  Works on the Boolean projection."""
    sr = aut.semiring
    brow = _bits_of_vector(sr, row)
    bcol = _bits_of_vector(sr, col)
    bmats = {s: _bits_of_rows(aut.sparse_rows(s)) for s in aut.alphabet}

    prefix = brow
    for symbol in word.prefix:
        prefix = _bit_vec_mat(prefix, bmats[symbol])
    cycle = _bit_identity(aut.num_states)
    partial_cols = []
    for symbol in word.cycle:
        partial_cols.append(_bit_mat_vec(cycle, bcol))
        cycle = _bit_mat_mul(cycle, bmats[symbol])
    # partial_cols[r] covers the first r cycle symbols; r = 0 is the bare col
    powers, start, period = _monoid_powers(cycle)
    for k in range(start, start + period):
        head = _bit_vec_mat(prefix, powers[k])
        for partial in partial_cols:
            if head & partial:
                return True
    return False


def _onesided_lrs(aut, word, row, col) -> bool:
    """Exact decision over a field.

    For each residue of the cycle length, the prefix sums form a linear
    recurrence of order at most d = |Q|, and such a sequence is eventually
    zero iff its entries at indices [d, 2d) all vanish.  Across residues
    those indices tile the positions [|u| + d|v|, |u| + 2d|v|), so one pass
    over the raw value sequence decides every residue at once.
    """
    sr = aut.semiring
    d = aut.num_states
    if d == 0:
        return False
    start = len(word.prefix) + d * len(word.cycle)
    stop = len(word.prefix) + 2 * d * len(word.cycle)
    current = row
    for n in range(stop):
        if n >= start and not sr.is_zero(dot(sr, current, col)):
            return True
        current = advance_row(aut, current, word.char_at(n))
    return False


def _onesided_horizon(aut, word, row, col, bound: int) -> bool:
    """Approximate decision: non-zero value for some n in (bound/2, bound]."""
    sr = aut.semiring
    current = row
    for n in range(bound + 1):
        if n > bound // 2 and not sr.is_zero(dot(sr, current, col)):
            return True
        current = advance_row(aut, current, word.char_at(n))
    return False


def _decide_onesided(aut, word, row, col, policy) -> tuple:
    if policy.kind == "horizon":
        return _onesided_horizon(aut, word, row, col, policy.horizon), \
            f"BoundedHorizon({policy.horizon})"
    method = _exact_method_onesided(aut)
    if method == "ExactFieldLRS":
        return _onesided_lrs(aut, word, row, col), method
    return _onesided_monoid(aut, word, row, col), method


def _unit_row(aut, state):
    sr = aut.semiring
    return tuple(sr.one if s == state else sr.zero for s in range(aut.num_states))


def activates_diverging(aut: Automaton, word: UPInfiniteWord, i: int, f: int,
                        policy: ActivationPolicy = AUTO) -> bool:
    require_same_alphabet(aut.alphabet, word.alphabet)
    got, _ = _decide_onesided(aut, word, _unit_row(aut, i), _unit_row(aut, f), policy)
    return got


# ---------------------------------------------------------------------------
# two-sided (biinfinite) decisions

def _canonical_layout(word: BiInfiniteWord):
    """(left cycle, center, right cycle) ignoring the origin; activation is
    shift-invariant so the layout alone matters."""
    return word.left, word.center, word.right


def _twosided_monoid(aut, word, row, col) -> bool:
    """Exact two-sided decision on the Boolean projection.

    Enclosing windows factor as  suffix(l) . L^a . M(m) . R^b . prefix(r);
    both exponents must be simultaneously large, and past the preperiods the
    power matrices repeat, so scanning one period on each side decides it.
    """
    sr = aut.semiring
    left, center, right = _canonical_layout(word)
    brow = _bits_of_vector(sr, row)
    bcol = _bits_of_vector(sr, col)
    bmats = {s: _bits_of_rows(aut.sparse_rows(s)) for s in aut.alphabet}
    n = aut.num_states

    def product(symbols):
        out = _bit_identity(n)
        for s in symbols:
            out = _bit_mat_mul(out, bmats[s])
        return out

    left_mat = product(left)
    mid_mat = product(center)
    right_mat = product(right)
    left_suffixes = [product(left[len(left) - s:]) for s in range(len(left))]
    right_prefixes = [product(right[:t]) for t in range(len(right))]

    lpowers, lstart, lperiod = _monoid_powers(left_mat)
    rpowers, rstart, rperiod = _monoid_powers(right_mat)

    for a in range(lstart, lstart + lperiod):
        for suffix in left_suffixes:
            head = _bit_vec_mat(_bit_vec_mat(brow, suffix), lpowers[a])
            head = _bit_vec_mat(head, mid_mat)
            for b in range(rstart, rstart + rperiod):
                body = _bit_vec_mat(head, rpowers[b])
                for prefix in right_prefixes:
                    if _bit_vec_mat(body, prefix) & bcol:
                        return True
    return False


def _twosided_horizon(aut, word, row, col, bound: int) -> bool:
    """Approximate two-sided decision: the window reaching ``bound/2`` on each
    side of the center must admit an enclosing non-zero sum within ``bound``.

    Larger windows only need enclosures of their own, so checking the widest
    reachable base window covers every smaller one.
    """
    sr = aut.semiring
    left, center, right = _canonical_layout(word)
    half = max(1, bound // 2)
    lo0, hi0 = -half, len(center) + half
    lo_min, hi_max = -bound, len(center) + bound

    def char(i):
        if i < 0:
            return left[i % len(left)]
        if i < len(center):
            return center[i]
        return right[(i - len(center)) % len(right)]

    mid = identity_matrix(sr, aut.num_states)
    for i in range(lo0, hi0):
        mid = mat_mul(sr, mid, aut.matrix(char(i)))

    heads = []  # row . M(w[i..lo0]) . mid for i = lo0 down to lo_min
    mat = mid
    heads.append(vec_mat(sr, row, mat))
    for i in range(lo0 - 1, lo_min - 1, -1):
        mat = mat_mul(sr, aut.matrix(char(i)), mat)
        heads.append(vec_mat(sr, row, mat))
    tails = [col]  # M(w[hi0..j]) . col for j = hi0 up to hi_max
    mat = identity_matrix(sr, aut.num_states)
    for j in range(hi0, hi_max):
        mat = mat_mul(sr, mat, aut.matrix(char(j)))
        tails.append(mat_vec(sr, mat, col))

    for head in heads:
        for tail in tails:
            if not sr.is_zero(dot(sr, head, tail)):
                return True
    return False


def default_twosided_bound(aut: Automaton, word: BiInfiniteWord) -> int:
    return 4 * max(aut.num_states ** 2, len(word.left) * len(word.right), 1)


def _decide_twosided(aut, word, row, col, policy) -> tuple:
    sr = aut.semiring
    if policy.kind == "horizon":
        return _twosided_horizon(aut, word, row, col, policy.horizon), \
            f"BoundedHorizon({policy.horizon})"
    if sr is BOOLEAN:
        return _twosided_monoid(aut, word, row, col), "ExactBooleanMonoid"
    if not sr.has_cancellation:
        return _twosided_monoid(aut, word, row, col), "ExactNaturalReduction"
    if sr.is_field and len(aut.alphabet.symbols) == 1:
        # constant word: a window's sum depends on its length alone, so the
        # two-sided condition collapses to the one-sided tail question
        symbol = aut.alphabet.symbols[0]
        ray = UPInfiniteWord(aut.alphabet, (), (symbol,))
        return _onesided_lrs(aut, ray, row, col), "ExactFieldLRS"
    if policy.kind == "exact":
        raise UnsupportedExactDecision(
            f"no exact two-sided activation decision for semiring {sr.name}; "
            "use --activation horizon:<K>")
    bound = default_twosided_bound(aut, word)
    return _twosided_horizon(aut, word, row, col, bound), f"BoundedHorizon({bound})"


def activates_bidiverging(aut: Automaton, word: BiInfiniteWord, i: int, f: int,
                          policy: ActivationPolicy = AUTO) -> bool:
    require_same_alphabet(aut.alphabet, word.alphabet)
    got, _ = _decide_twosided(aut, word, _unit_row(aut, i), _unit_row(aut, f), policy)
    return got


def activation_verdicts(aut: Automaton, word, policy: ActivationPolicy = AUTO,
                        pairs=None) -> ActivationVerdict:
    """Decide every requested (initial, final) pair; defaults to the pairs
    with non-zero initial and final weight, the only ones behavior can see."""
    require_same_alphabet(aut.alphabet, word.alphabet)
    if pairs is None:
        pairs = [(i, f) for i in aut.initial_states() for f in aut.final_states()]
    verdicts = {}
    method = "Exact"
    for i, f in pairs:
        row, col = _unit_row(aut, i), _unit_row(aut, f)
        if isinstance(word, BiInfiniteWord):
            got, method = _decide_twosided(aut, word, row, col, policy)
        else:
            got, method = _decide_onesided(aut, word, row, col, policy)
        verdicts[(i, f)] = got
    return ActivationVerdict(verdicts, method)


# ---------------------------------------------------------------------------
# masked behavior evaluation

class DivergingBehavior:
    """Evaluation context for one (automaton, infinite word) pair.

    Activation verdicts are decided once and reused for every n.  Values are
    read off one row vector per live initial state, grown incrementally, so
    no full matrix product is ever formed.
    """

    def __init__(self, aut: Automaton, word: UPInfiniteWord,
                 policy: ActivationPolicy = AUTO):
        require_same_alphabet(aut.alphabet, word.alphabet)
        self.automaton = aut
        self.word = word
        self.policy = policy
        self._verdict = activation_verdicts(aut, word, policy)
        self._live = [pair for pair, ok in self._verdict.pairs.items() if ok]
        self._rows = {}

    @property
    def verdict(self) -> ActivationVerdict:
        return self._verdict

    def _row(self, state: int, n: int):
        chain = self._rows.setdefault(state, [_unit_row(self.automaton, state)])
        while len(chain) <= n:
            k = len(chain) - 1
            chain.append(advance_row(self.automaton, chain[-1],
                                     self.word.char_at(k)))
        return chain[n]

    def at(self, n: int):
        sr = self.automaton.semiring
        total = sr.zero
        for i, f in self._live:
            total = sr.add(total, sr.mul(sr.mul(self.automaton.initial[i],
                                                self._row(i, n)[f]),
                                         self.automaton.final[f]))
        return total

    def sequence(self) -> WeightSequence:
        return WeightSequence(self.automaton.semiring, self.at)


class BidivergingBehavior:
    """Evaluation context for one (automaton, biinfinite word) pair."""

    def __init__(self, aut: Automaton, word: BiInfiniteWord,
                 policy: ActivationPolicy = AUTO):
        require_same_alphabet(aut.alphabet, word.alphabet)
        self.automaton = aut
        self.word = word
        self.policy = policy
        self._verdict = activation_verdicts(aut, word, policy)
        self._live = [pair for pair, ok in self._verdict.pairs.items() if ok]
        self._rows = {}

    @property
    def verdict(self) -> ActivationVerdict:
        return self._verdict

    def _row(self, state: int, i: int, n: int):
        chain = self._rows.setdefault((state, i),
                                      [_unit_row(self.automaton, state)])
        while len(chain) <= n:
            k = len(chain) - 1
            chain.append(advance_row(self.automaton, chain[-1],
                                     self.word.char_at(i + k)))
        return chain[n]

    def at(self, i: int, n: int):
        sr = self.automaton.semiring
        total = sr.zero
        for p, q in self._live:
            total = sr.add(total, sr.mul(sr.mul(self.automaton.initial[p],
                                                self._row(p, i, n)[q]),
                                         self.automaton.final[q]))
        return total

    def grid(self) -> BiWeightGrid:
        return BiWeightGrid(self.automaton.semiring, self.at)


def diverging_behavior(aut: Automaton, word: UPInfiniteWord, n: int,
                       policy: ActivationPolicy = AUTO):
    """One-shot masked value; build a DivergingBehavior for whole tables."""
    return DivergingBehavior(aut, word, policy).at(n)


def bidiverging_behavior(aut: Automaton, word: BiInfiniteWord, i: int, n: int,
                         policy: ActivationPolicy = AUTO):
    return BidivergingBehavior(aut, word, policy).at(i, n)
