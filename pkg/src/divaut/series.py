"""Rational-expression ASTs for converging, diverging, and bidiverging power
series, plus a direct coefficient oracle that never builds an automaton for
the weight part (only the acceptance indicators reuse the activation
machinery, with an optional fully independent horizon scan).
"""
from __future__ import annotations

from dataclasses import dataclass

from .activation import AUTO, ActivationPolicy, _decide_onesided, _decide_twosided
from .errors import ImproperStar
from .semiring import Semiring
from .words import BiInfiniteWord, FiniteWord, UPInfiniteWord


class Expr:
    """Base class for all series expressions."""


# converging layer -----------------------------------------------------------

@dataclass(frozen=True)
class Atom(Expr):
    symbol: str
    coeff: object


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class Cat(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Star(Expr):
    inner: Expr


@dataclass(frozen=True)
class Scale(Expr):
    left_coeff: object
    inner: Expr
    right_coeff: object


# diverging layer ------------------------------------------------------------

@dataclass(frozen=True)
class Omega(Expr):
    inner: Expr  # proper converging


@dataclass(frozen=True)
class Conjoin2(Expr):
    first: Expr  # proper converging
    second: Expr


# bidiverging layer ----------------------------------------------------------

@dataclass(frozen=True)
class Zeta(Expr):
    inner: Expr


@dataclass(frozen=True)
class Conjoin3(Expr):
    first: Expr
    middle: Expr
    second: Expr


ZERO = Sum(())
EPSILON = Star(ZERO)  # coefficient 1 on the empty word, 0 elsewhere


def is_proper(e: Expr) -> bool:
    """A converging expression is proper when its empty-word coefficient is
    zero; decidable syntactically."""
    if isinstance(e, Atom):
        return True
    if isinstance(e, Sum):
        return all(is_proper(t) for t in e.terms)
    if isinstance(e, Cat):
        return is_proper(e.left) or is_proper(e.right)
    if isinstance(e, Star):
        return False
    if isinstance(e, Scale):
        return is_proper(e.inner)
    raise TypeError(f"not a converging expression: {e!r}")


def expr_level(e: Expr) -> str:
    """'conv', 'div', or 'bidiv'; sums and scales take their operands' level."""
    if isinstance(e, (Atom, Cat, Star)):
        return "conv"
    if isinstance(e, (Omega, Conjoin2)):
        return "div"
    if isinstance(e, (Zeta, Conjoin3)):
        return "bidiv"
    if isinstance(e, Scale):
        return expr_level(e.inner)
    if isinstance(e, Sum):
        levels = {expr_level(t) for t in e.terms}
        if not levels:
            return "conv"
        if len(levels) > 1:
            raise TypeError(f"sum mixes series levels {sorted(levels)}")
        return levels.pop()
    raise TypeError(f"not a series expression: {e!r}")


def validate(e: Expr):
    """Check the properness side conditions of star/omega/zeta/conjoin."""
    if isinstance(e, Atom):
        return
    if isinstance(e, Sum):
        for t in e.terms:
            validate(t)
        return
    if isinstance(e, Cat):
        validate(e.left)
        validate(e.right)
        return
    if isinstance(e, Star):
        validate(e.inner)
        if not is_proper(e.inner):
            raise ImproperStar("star needs a proper operand")
        return
    if isinstance(e, Scale):
        validate(e.inner)
        return
    if isinstance(e, Omega):
        validate(e.inner)
        if not is_proper(e.inner):
            raise ImproperStar("omega needs a proper operand")
        return
    if isinstance(e, Zeta):
        validate(e.inner)
        if not is_proper(e.inner):
            raise ImproperStar("zeta needs a proper operand")
        return
    if isinstance(e, Conjoin2):
        for part in (e.first, e.second):
            validate(part)
            if not is_proper(part):
                raise ImproperStar("conjoin needs proper operands")
        return
    if isinstance(e, Conjoin3):
        for part in (e.first, e.middle, e.second):
            validate(part)
            if not is_proper(part):
                raise ImproperStar("conjoin3 needs proper operands")
        return
    raise TypeError(f"not a series expression: {e!r}")


# ---------------------------------------------------------------------------
# converging coefficients

def conv_coeff(sr: Semiring, e: Expr, word: FiniteWord):
    """Coefficient of a finite word, by structural recursion with
    memoization over (node, slice)."""
    symbols = word.symbols
    memo = {}

    def go(node, lo, hi):
        key = (id(node), lo, hi)
        if key in memo:
            return memo[key]
        if isinstance(node, Atom):
            if hi - lo == 1 and symbols[lo] == node.symbol:
                out = sr.check(node.coeff)
            else:
                out = sr.zero
        elif isinstance(node, Sum):
            out = sr.sum(go(t, lo, hi) for t in node.terms)
        elif isinstance(node, Cat):
            out = sr.sum(sr.mul(go(node.left, lo, k), go(node.right, k, hi))
                         for k in range(lo, hi + 1))
        elif isinstance(node, Star):
            if not is_proper(node.inner):
                raise ImproperStar("star needs a proper operand")
            if lo == hi:
                out = sr.one
            else:
                # first block non-empty, so the recursion shrinks
                out = sr.sum(sr.mul(go(node.inner, lo, k), go(node, k, hi))
                             for k in range(lo + 1, hi + 1))
        elif isinstance(node, Scale):
            out = sr.mul(sr.mul(sr.check(node.left_coeff), go(node.inner, lo, hi)),
                         sr.check(node.right_coeff))
        else:
            raise TypeError(f"not a converging expression: {node!r}")
        memo[key] = out
        return out

    return go(e, 0, len(symbols))


# ---------------------------------------------------------------------------
# acceptance indicators

def chi_forward(sr: Semiring, tester: Expr, word: UPInfiniteWord,
                policy: ActivationPolicy = AUTO) -> bool:
    """Is tester(w[0..n]) non-zero for arbitrarily large n?

    With an exact/auto policy the tester is compiled to an automaton and the
    activation machinery decides; with a horizon policy the expression is
    evaluated directly, which keeps the two routes independent.
    """
    if policy.kind == "horizon":
        bound = policy.horizon
        for n in range(bound // 2 + 1, bound + 1):
            if not sr.is_zero(conv_coeff(sr, tester, word.slice(0, n))):
                return True
        return False
    from .kleene import compile_conv

    aut = compile_conv(sr, word.alphabet, tester)
    got, _ = _decide_onesided(aut, word, aut.initial, aut.final, policy)
    return got


def chi_twoway(sr: Semiring, tester: Expr, word: BiInfiniteWord,
               policy: ActivationPolicy = AUTO) -> bool:
    """Does every window extend to one where the tester is non-zero?"""
    if policy.kind == "horizon":
        bound = policy.horizon
        half = max(1, bound // 2)
        lo0, hi0 = -half, len(word.center) + half
        for lo in range(lo0, -bound - 1, -1):
            for hi in range(hi0, len(word.center) + bound + 1):
                value = conv_coeff(sr, tester, word.slice(lo + word.origin,
                                                          hi + word.origin))
                if not sr.is_zero(value):
                    return True
        return False
    from .kleene import compile_conv

    aut = compile_conv(sr, word.alphabet, tester)
    got, _ = _decide_twosided(aut, word, aut.initial, aut.final, policy)
    return got


# ---------------------------------------------------------------------------
# diverging / bidiverging coefficients

class DivSeries:
    """Evaluation context caching acceptance indicators per leaf."""

    def __init__(self, sr: Semiring, e: Expr, word: UPInfiniteWord,
                 chi: ActivationPolicy = AUTO):
        validate(e)
        self.semiring = sr
        self.expr = e
        self.word = word
        self.chi_policy = chi
        self._chi_cache = {}

    def _chi(self, tester: Expr) -> bool:
        if tester not in self._chi_cache:
            self._chi_cache[tester] = chi_forward(self.semiring, tester,
                                                  self.word, self.chi_policy)
        return self._chi_cache[tester]

    def at(self, n: int):
        return self._eval(self.expr, n)

    def _eval(self, node, n):
        sr = self.semiring
        if isinstance(node, Sum):
            return sr.sum(self._eval(t, n) for t in node.terms)
        if isinstance(node, Scale):
            return sr.mul(sr.mul(sr.check(node.left_coeff),
                                 self._eval(node.inner, n)),
                          sr.check(node.right_coeff))
        if isinstance(node, Omega):
            tester = Star(node.inner)
        elif isinstance(node, Conjoin2):
            tester = Cat(node.first, Star(node.second))
        else:
            raise TypeError(f"not a diverging expression: {node!r}")
        if not self._chi(tester):
            return sr.zero
        return conv_coeff(sr, tester, self.word.slice(0, n))


class BidivSeries:
    def __init__(self, sr: Semiring, e: Expr, word: BiInfiniteWord,
                 chi: ActivationPolicy = AUTO):
        validate(e)
        self.semiring = sr
        self.expr = e
        self.word = word
        self.chi_policy = chi
        self._chi_cache = {}

    def _chi(self, tester: Expr) -> bool:
        if tester not in self._chi_cache:
            self._chi_cache[tester] = chi_twoway(self.semiring, tester,
                                                 self.word, self.chi_policy)
        return self._chi_cache[tester]

    def at(self, i: int, n: int):
        return self._eval(self.expr, i, n)

    def _eval(self, node, i, n):
        sr = self.semiring
        if isinstance(node, Sum):
            return sr.sum(self._eval(t, i, n) for t in node.terms)
        if isinstance(node, Scale):
            return sr.mul(sr.mul(sr.check(node.left_coeff),
                                 self._eval(node.inner, i, n)),
                          sr.check(node.right_coeff))
        if isinstance(node, Zeta):
            tester = Star(node.inner)
        elif isinstance(node, Conjoin3):
            tester = Cat(Star(node.first), Cat(node.middle, Star(node.second)))
        else:
            raise TypeError(f"not a bidiverging expression: {node!r}")
        if not self._chi(tester):
            return sr.zero
        return conv_coeff(sr, tester, self.word.slice(i, i + n))


def div_coeff(sr: Semiring, e: Expr, word: UPInfiniteWord, n: int,
              chi: ActivationPolicy = AUTO):
    return DivSeries(sr, e, word, chi).at(n)


def bidiv_coeff(sr: Semiring, e: Expr, word: BiInfiniteWord, i: int, n: int,
                chi: ActivationPolicy = AUTO):
    return BidivSeries(sr, e, word, chi).at(i, n)


# ---------------------------------------------------------------------------
# characteristic form

@dataclass(frozen=True)
class CharacteristicForm:
    """Any rational diverging series is a finite sum of scaled conjoins plus
    scaled omega terms (likewise with 3-way conjoins and zeta terms for the
    bidiverging level); this is the flattened two-list shape."""

    level: str  # "div" | "bidiv"
    conjoin_terms: tuple  # div: (a, x, y, b);  bidiv: (a, x, m, y, b)
    iteration_terms: tuple  # (c, z, d)


def to_characteristic(sr: Semiring, e: Expr, level: str = None) -> CharacteristicForm:
    validate(e)
    declared = expr_level(e)
    if declared == "conv" and level is None:
        raise TypeError("characteristic form applies to diverging or "
                        "bidiverging expressions")
    if declared != "conv":
        if level is not None and declared != level:
            raise TypeError(f"expected a {level}-level expression, got {declared}")
        level = declared
    # a conv-level tree can only be the zero series here; the walk below
    # rejects any real converging leaf
    conjoins = []
    iterations = []

    def walk(node, left, right):
        if isinstance(node, Sum):
            for t in node.terms:
                walk(t, left, right)
        elif isinstance(node, Scale):
            walk(node.inner, sr.mul(left, sr.check(node.left_coeff)),
                 sr.mul(sr.check(node.right_coeff), right))
        elif isinstance(node, Omega):
            iterations.append((left, node.inner, right))
        elif isinstance(node, Zeta):
            iterations.append((left, node.inner, right))
        elif isinstance(node, Conjoin2):
            conjoins.append((left, node.first, node.second, right))
        elif isinstance(node, Conjoin3):
            conjoins.append((left, node.first, node.middle, node.second, right))
        else:
            raise TypeError(f"unexpected node in characteristic flattening: {node!r}")

    walk(e, sr.one, sr.one)
    return CharacteristicForm(level, tuple(conjoins), tuple(iterations))


# ---------------------------------------------------------------------------
# smart constructors (used by the automaton-to-expression direction, where
# unsimplified output would blow up fast)

def make_sum(terms) -> Expr:
    flat = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    flat = [t for t in flat if t != ZERO]
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def make_cat(a: Expr, b: Expr) -> Expr:
    if a == ZERO or b == ZERO:
        return ZERO
    if a == EPSILON:
        return b
    if b == EPSILON:
        return a
    return Cat(a, b)


def make_scale(sr: Semiring, left, e: Expr, right) -> Expr:
    if sr.is_zero(left) or sr.is_zero(right) or e == ZERO:
        return ZERO
    if sr.eq(left, sr.one) and sr.eq(right, sr.one):
        return e
    if isinstance(e, Atom):
        return Atom(e.symbol, sr.mul(sr.mul(left, sr.check(e.coeff)), right))
    return Scale(left, e, right)


def make_star(e: Expr) -> Expr:
    if e == ZERO:
        return EPSILON
    return Star(e)


def push_scalars(sr: Semiring, e: Expr, left=None, right=None) -> Expr:
    """Distribute scalar factors down to atoms where the semibimodule laws
    allow (through sums, and onto the outer ends of products); scalars stuck
    outside a star stay as Scale nodes.  Semantics-preserving; used before
    compilation to keep the constructed automata small."""
    if left is None:
        left = sr.one
    if right is None:
        right = sr.one
    if isinstance(e, Atom):
        return Atom(e.symbol, sr.mul(sr.mul(left, sr.check(e.coeff)), right))
    if isinstance(e, Sum):
        return Sum(tuple(push_scalars(sr, t, left, right) for t in e.terms))
    if isinstance(e, Cat):
        return Cat(push_scalars(sr, e.left, left, sr.one),
                   push_scalars(sr, e.right, sr.one, right))
    if isinstance(e, Scale):
        return push_scalars(sr, e.inner,
                            sr.mul(left, sr.check(e.left_coeff)),
                            sr.mul(sr.check(e.right_coeff), right))
    if isinstance(e, Star):
        inner = push_scalars(sr, e.inner)
        if sr.eq(left, sr.one) and sr.eq(right, sr.one):
            return Star(inner)
        return Scale(left, Star(inner), right)
    raise TypeError(f"not a converging expression: {e!r}")
