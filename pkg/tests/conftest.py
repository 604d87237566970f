from fractions import Fraction

import pytest

from divaut.automaton import Automaton
from divaut.semiring import BOOLEAN, NATURAL, RATIONAL
from divaut.series import Atom, Cat, Conjoin2, Conjoin3, Omega, Scale, Star, Sum, Zeta
from divaut.words import Alphabet, BiInfiniteWord, FiniteWord, UPInfiniteWord

AB = Alphabet(("a", "b"))


@pytest.fixture
def ab():
    return AB


@pytest.fixture
def figure_one():
    """Boolean two-state acceptor for words with exactly one b."""
    return Automaton.build(
        BOOLEAN, AB, 2, {0: True}, {1: True},
        [(0, 0, "a", True), (0, 1, "b", True), (1, 1, "a", True)],
        state_names=("q1", "q2"))


@pytest.fixture
def figure_two():
    """Natural three-state automaton with exponential alternating weights."""
    return Automaton.build(
        NATURAL, AB, 3, {0: 1, 1: 2}, {2: 2},
        [(0, 1, "a", 2), (0, 2, "a", 1), (1, 0, "b", 1), (2, 0, "b", 2)],
        state_names=("q1", "q2", "q3"))


@pytest.fixture
def figure_three():
    """Natural three-state automaton: counts a-jumps, powers of 3 on b-runs."""
    return Automaton.build(
        NATURAL, AB, 3, {1: 1, 2: 3}, {0: 1},
        [(0, 0, "a", 1), (1, 0, "a", 1), (1, 1, "a", 1),
         (2, 0, "b", 1), (2, 2, "b", 3)],
        state_names=("q1", "q2", "q3"))


def finite(symbols, alphabet=AB):
    return FiniteWord(alphabet, tuple(symbols))


def up_word(prefix, cycle, alphabet=AB):
    return UPInfiniteWord(alphabet, tuple(prefix), tuple(cycle))


def bi_word(left, center, right, alphabet=AB):
    return BiInfiniteWord(alphabet, tuple(left), tuple(center), tuple(right))


# ---------------------------------------------------------------------------
# random generators (deterministic seeds; tests pass their own Random)

def random_fraction(rng, allow_zero=True):
    num = rng.randint(-3, 3)
    if not allow_zero and num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 3))


def random_rational_automaton(rng, max_states=4, alphabet=AB, density=0.4):
    n = rng.randint(1, max_states)
    edges = []
    for symbol in alphabet.symbols:
        for i in range(n):
            for j in range(n):
                if rng.random() < density:
                    edges.append((i, j, symbol, random_fraction(rng)))
    initial = {i: random_fraction(rng) for i in range(n) if rng.random() < 0.7}
    final = {i: random_fraction(rng) for i in range(n) if rng.random() < 0.7}
    return Automaton.build(RATIONAL, alphabet, n, initial, final, edges)


def random_natural_automaton(rng, max_states=4, alphabet=AB, density=0.4):
    n = rng.randint(1, max_states)
    edges = []
    for symbol in alphabet.symbols:
        for i in range(n):
            for j in range(n):
                if rng.random() < density:
                    edges.append((i, j, symbol, rng.randint(1, 3)))
    initial = {i: rng.randint(1, 2) for i in range(n) if rng.random() < 0.7}
    final = {i: rng.randint(1, 2) for i in range(n) if rng.random() < 0.7}
    return Automaton.build(NATURAL, alphabet, n, initial, final, edges)


def random_finite_word(rng, max_len=8, alphabet=AB):
    return finite([rng.choice(alphabet.symbols)
                   for _ in range(rng.randint(0, max_len))], alphabet)


def random_up_word(rng, alphabet=AB, max_prefix=3, max_cycle=3):
    prefix = [rng.choice(alphabet.symbols) for _ in range(rng.randint(0, max_prefix))]
    cycle = [rng.choice(alphabet.symbols) for _ in range(rng.randint(1, max_cycle))]
    return up_word(prefix, cycle, alphabet)


def random_bi_word(rng, alphabet=AB, max_center=2, max_cycle=3):
    left = [rng.choice(alphabet.symbols) for _ in range(rng.randint(1, max_cycle))]
    center = [rng.choice(alphabet.symbols) for _ in range(rng.randint(0, max_center))]
    right = [rng.choice(alphabet.symbols) for _ in range(rng.randint(1, max_cycle))]
    return bi_word(left, center, right, alphabet)


def random_conv_expr(rng, sr, depth, alphabet=AB, proper=True):
    """Random converging expression; with proper=True the result is proper."""
    def coeff():
        if sr is NATURAL:
            return rng.randint(0, 3)
        if sr is BOOLEAN:
            return rng.random() < 0.8
        return random_fraction(rng)

    def atom():
        return Atom(rng.choice(alphabet.symbols), coeff())

    if depth <= 0:
        return atom()
    roll = rng.random()
    if roll < 0.3:
        return Sum(tuple(random_conv_expr(rng, sr, depth - 1, alphabet, proper)
                         for _ in range(rng.randint(1, 2))))
    if roll < 0.6:
        left_proper = rng.random() < 0.5 if not proper else True
        return Cat(random_conv_expr(rng, sr, depth - 1, alphabet, left_proper),
                   random_conv_expr(rng, sr, depth - 1, alphabet,
                                    proper and not left_proper))
    if roll < 0.75 and not proper:
        return Star(random_conv_expr(rng, sr, depth - 1, alphabet, True))
    if roll < 0.9:
        return Scale(coeff(), random_conv_expr(rng, sr, depth - 1, alphabet, proper),
                     coeff())
    return atom()


def random_div_expr(rng, sr, depth, alphabet=AB):
    if depth <= 0 or rng.random() < 0.4:
        inner_depth = max(0, depth - 1)
        if rng.random() < 0.5:
            return Omega(random_conv_expr(rng, sr, inner_depth, alphabet, True))
        return Conjoin2(random_conv_expr(rng, sr, inner_depth, alphabet, True),
                        random_conv_expr(rng, sr, inner_depth, alphabet, True))
    if rng.random() < 0.5:
        return Sum(tuple(random_div_expr(rng, sr, depth - 1, alphabet)
                         for _ in range(rng.randint(1, 2))))
    if sr is NATURAL:
        left, right = rng.randint(0, 2), rng.randint(0, 2)
    elif sr is BOOLEAN:
        left, right = True, rng.random() < 0.9
    else:
        left, right = random_fraction(rng), random_fraction(rng)
    return Scale(left, random_div_expr(rng, sr, depth - 1, alphabet), right)


def random_bidiv_expr(rng, sr, depth, alphabet=AB):
    if depth <= 0 or rng.random() < 0.4:
        inner_depth = max(0, depth - 1)
        if rng.random() < 0.5:
            return Zeta(random_conv_expr(rng, sr, inner_depth, alphabet, True))
        return Conjoin3(random_conv_expr(rng, sr, inner_depth, alphabet, True),
                        random_conv_expr(rng, sr, inner_depth, alphabet, True),
                        random_conv_expr(rng, sr, inner_depth, alphabet, True))
    if rng.random() < 0.5:
        return Sum(tuple(random_bidiv_expr(rng, sr, depth - 1, alphabet)
                         for _ in range(rng.randint(1, 2))))
    if sr is NATURAL:
        left, right = rng.randint(0, 2), rng.randint(0, 2)
    elif sr is BOOLEAN:
        left, right = True, rng.random() < 0.9
    else:
        left, right = random_fraction(rng), random_fraction(rng)
    return Scale(left, random_bidiv_expr(rng, sr, depth - 1, alphabet), right)
