"""Command-line surface.

Exit codes: 0 on success, 1 on semantic errors (wrong class, mismatched
semirings, unsupported activation, ...), 2 on parse errors.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import kleene, quantum
from .activation import (
    ActivationPolicy,
    BidivergingBehavior,
    DivergingBehavior,
)
from .automaton import (
    Automaton,
    classify,
    conjoin2,
    conjoin3,
    converging_weight,
    decompose_bidiverging,
    decompose_diverging,
    disjoin2,
    disjoin3,
    normalize,
    roll,
    unroll,
)
from .errors import DivautError, DivautParseError
from .fileformat import (
    ExpressionFile,
    detect_kind,
    format_automaton,
    format_expression_file,
    parse_automaton,
    parse_expression_file,
)
from .semiring import require_same_semiring
from .series import BidivSeries, DivSeries, expr_level
from .words import (
    Alphabet,
    BiInfiniteWord,
    FiniteWord,
    UPInfiniteWord,
    format_word,
    parse_word,
    require_same_alphabet,
)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DivautError(f"cannot read {path}: {exc}") from None


def _write_output(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        _write_file(out, text)


def _write_file(path: str, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise DivautError(f"cannot write {path}: {exc}") from None


def _load_any(path: str):
    text = _read(path)
    if detect_kind(text) == "automaton":
        return parse_automaton(text)
    return parse_expression_file(text)


def _load_automaton(path: str) -> Automaton:
    text = _read(path)
    if detect_kind(text) != "automaton":
        raise DivautError(f"{path} is not an automaton file")
    return parse_automaton(text)


def _policy(text: str) -> ActivationPolicy:
    try:
        return ActivationPolicy.parse(text)
    except ValueError as exc:
        raise DivautError(str(exc)) from None


def _print_rows(rows):
    for row in rows:
        print("\t".join(row))


# ---------------------------------------------------------------------------
# eval

def cmd_eval(args):
    obj = _load_any(args.file)
    policy = _policy(args.activation)
    chi = _policy(args.chi)
    if isinstance(obj, Automaton):
        word = parse_word(args.word, obj.alphabet)
        if isinstance(word, FiniteWord):
            print(obj.semiring.format(converging_weight(obj, word)))
            return
        if isinstance(word, UPInfiniteWord):
            behavior = DivergingBehavior(obj, word, policy)
            _print_rows((str(n), obj.semiring.format(behavior.at(n)))
                        for n in range(args.n_max + 1))
            return
        behavior = BidivergingBehavior(obj, word, policy)
        _print_rows((str(n), obj.semiring.format(behavior.at(args.i, n)))
                    for n in range(args.n_max + 1))
        return

    sr, alphabet, expr = obj.semiring, obj.alphabet, obj.expr
    level = expr_level(expr)
    word = parse_word(args.word, alphabet)
    if level == "conv":
        if not isinstance(word, FiniteWord):
            raise DivautError("a converging expression needs a finite word")
        from .series import conv_coeff

        print(sr.format(conv_coeff(sr, expr, word)))
        return
    if level == "div":
        if not isinstance(word, UPInfiniteWord):
            raise DivautError("a diverging expression needs an infinite word")
        series = DivSeries(sr, expr, word, chi)
        _print_rows((str(n), sr.format(series.at(n)))
                    for n in range(args.n_max + 1))
        return
    if not isinstance(word, BiInfiniteWord):
        raise DivautError("a bidiverging expression needs a biinfinite word")
    series = BidivSeries(sr, expr, word, chi)
    _print_rows((str(n), sr.format(series.at(args.i, n)))
                for n in range(args.n_max + 1))


# ---------------------------------------------------------------------------
# structural transforms

def cmd_transform(args):
    aut = _load_automaton(args.file)
    out = {"normalize": normalize, "roll": roll, "unroll": unroll}[args.command](aut)
    _write_output(format_automaton(out), args.out)


def cmd_conjoin(args):
    left = _load_automaton(args.x)
    right = _load_automaton(args.y)
    _write_output(format_automaton(conjoin2(left, right)), args.out)


def cmd_conjoin3(args):
    first = _load_automaton(args.x)
    middle = _load_automaton(args.m)
    second = _load_automaton(args.y)
    _write_output(format_automaton(conjoin3(first, middle, second)), args.out)


def cmd_disjoin(args):
    prelude, cycle = disjoin2(_load_automaton(args.file))
    _write_file(args.out_x, format_automaton(prelude))
    _write_file(args.out_y, format_automaton(cycle))


def cmd_disjoin3(args):
    head, middle, tail = disjoin3(_load_automaton(args.file))
    _write_file(args.out_x, format_automaton(head))
    _write_file(args.out_m, format_automaton(middle))
    _write_file(args.out_y, format_automaton(tail))


def cmd_decompose(args):
    aut = _load_automaton(args.file)
    decompose = decompose_diverging if args.level == "div" else decompose_bidiverging
    parts = decompose(aut).parts
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sr = aut.semiring
    manifest = []
    for idx, (left, part, right) in enumerate(parts):
        name = f"part_{idx:03d}.aut"
        _write_file(out_dir / name, format_automaton(part))
        manifest.append((name, sr.format(left), sr.format(right),
                         classify(part).value))
    lines = ["\t".join(("file", "left", "right", "class"))]
    lines += ["\t".join(entry) for entry in manifest]
    _write_file(out_dir / "manifest.tsv", "\n".join(lines) + "\n")
    print(f"wrote {len(parts)} parts to {out_dir}")


# ---------------------------------------------------------------------------
# rational translations

def cmd_from_rational(args):
    obj = _load_any(args.file)
    if not isinstance(obj, ExpressionFile):
        raise DivautError("from-rational needs an expression file")
    level = args.level or expr_level(obj.expr)
    compilers = {"conv": kleene.compile_conv, "div": kleene.compile_div,
                 "bidiv": kleene.compile_bidiv}
    if expr_level(obj.expr) != level:
        raise DivautError(f"expression is {expr_level(obj.expr)}-level, "
                          f"not {level}")
    aut = compilers[level](obj.semiring, obj.alphabet, obj.expr)
    _write_output(format_automaton(aut), args.out)


def cmd_to_rational(args):
    aut = _load_automaton(args.file)
    extractors = {"conv": kleene.extract_conv, "div": kleene.extract_div,
                  "bidiv": kleene.extract_bidiv}
    expr = extractors[args.level](aut)
    _write_output(format_expression_file(aut.semiring, aut.alphabet, expr),
                  args.out)


# ---------------------------------------------------------------------------
# equivalence sampling

def _sample_words(alphabet: Alphabet, level: str, count: int, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        def chunk(lo, hi):
            return tuple(rng.choice(alphabet.symbols)
                         for _ in range(rng.randint(lo, hi)))
        if level == "conv":
            out.append(FiniteWord(alphabet, chunk(0, 6)))
        elif level == "div":
            out.append(UPInfiniteWord(alphabet, chunk(0, 3), chunk(1, 3)))
        else:
            out.append(BiInfiniteWord(alphabet, chunk(1, 3), chunk(0, 2),
                                      chunk(1, 3)))
    return out


def _evaluator(obj, level, policy, chi):
    """Returns (semiring, alphabet, f) where f(word, i, n) yields one value."""
    if isinstance(obj, Automaton):
        if level == "conv":
            return obj.semiring, obj.alphabet, \
                lambda word, i, n: converging_weight(obj, word)
        if level == "div":
            contexts = {}

            def f(word, i, n):
                if word not in contexts:
                    contexts[word] = DivergingBehavior(obj, word, policy)
                return contexts[word].at(n)
            return obj.semiring, obj.alphabet, f
        contexts = {}

        def f(word, i, n):
            if word not in contexts:
                contexts[word] = BidivergingBehavior(obj, word, policy)
            return contexts[word].at(i, n)
        return obj.semiring, obj.alphabet, f

    sr, alphabet, expr = obj.semiring, obj.alphabet, obj.expr
    if expr_level(expr) != level:
        raise DivautError(f"expression is {expr_level(expr)}-level, not {level}")
    if level == "conv":
        from .series import conv_coeff

        return sr, alphabet, lambda word, i, n: conv_coeff(sr, expr, word)
    if level == "div":
        contexts = {}

        def f(word, i, n):
            if word not in contexts:
                contexts[word] = DivSeries(sr, expr, word, chi)
            return contexts[word].at(n)
        return sr, alphabet, f
    contexts = {}

    def f(word, i, n):
        if word not in contexts:
            contexts[word] = BidivSeries(sr, expr, word, chi)
        return contexts[word].at(i, n)
    return sr, alphabet, f


def cmd_equiv(args):
    first = _load_any(args.a)
    second = _load_any(args.b)
    policy = _policy(args.activation)
    chi = _policy(args.chi)
    level = args.level
    sr_a, alpha_a, eval_a = _evaluator(first, level, policy, chi)
    sr_b, alpha_b, eval_b = _evaluator(second, level, policy, chi)
    require_same_semiring(sr_a, sr_b)
    require_same_alphabet(alpha_a, alpha_b)

    if args.word:
        words = [parse_word(text, alpha_a) for text in args.word]
    else:
        words = _sample_words(alpha_a, level, args.samples, args.seed)
    expected_kind = {"conv": FiniteWord, "div": UPInfiniteWord,
                     "bidiv": BiInfiniteWord}[level]
    for word in words:
        if not isinstance(word, expected_kind):
            raise DivautError(f"word {format_word(word)!r} does not match "
                              f"level {level}")

    starts = range(-args.i_range, args.i_range + 1) if level == "bidiv" else (0,)
    lengths = range(args.n_max + 1) if level != "conv" else (0,)
    for word in words:
        for i in starts:
            for n in lengths:
                got_a = eval_a(word, i, n)
                got_b = eval_b(word, i, n)
                if not sr_a.eq(got_a, got_b):
                    where = f"word={format_word(word)!r}"
                    if level == "bidiv":
                        where += f" i={i}"
                    if level != "conv":
                        where += f" n={n}"
                    print(f"disagree: {where}: "
                          f"{sr_a.format(got_a)} vs {sr_a.format(got_b)}")
                    return
    print(f"agree on all samples ({len(words)} words; semi-decision only)")


# ---------------------------------------------------------------------------
# quantum

def cmd_quantum(args):
    policy = _policy(args.activation)
    if args.quantum_command == "magnetization":
        _write_output(format_automaton(quantum.build_magnetization()), args.out)
        return
    if args.quantum_command == "correlator":
        _write_output(format_automaton(quantum.build_correlator(args.k)), args.out)
        return
    if args.quantum_command == "expect":
        state = _load_automaton(args.state)
        operator = _load_automaton(args.operator)
        ev = quantum.expected_value(state, operator, policy)
        _print_expect_table(ev, args.n, args.rate_at)
        return
    terms = _parse_hs_terms(args.terms)
    operator = quantum.build_hs_hamiltonian(terms)
    ev = quantum.expected_value(quantum.up_state(), operator, policy)
    _print_expect_table(ev, args.n, args.rate_at)


def _parse_hs_terms(text: str):
    from .semiring import GAUSSIAN

    terms = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        pieces = part.split(",")
        if len(pieces) != 2:
            raise DivautError(f"bad term {part!r}; expected amplitude,decay")
        terms.append((GAUSSIAN.parse(pieces[0].strip()),
                      GAUSSIAN.parse(pieces[1].strip())))
    if not terms:
        raise DivautError("need at least one amplitude,decay term")
    return terms


def _print_expect_table(ev, n_max: int, rate_at):
    from .semiring import GAUSSIAN

    rows = []
    for n in range(n_max + 1):
        numerator, denominator, ratio = ev.row(n)
        rows.append((str(n), GAUSSIAN.format(numerator),
                     GAUSSIAN.format(denominator),
                     "undef" if ratio is None else GAUSSIAN.format(ratio)))
    _print_rows(rows)
    if rate_at is not None:
        ratio_prev = ev.ratio_at(rate_at - 1)
        ratio_here = ev.ratio_at(rate_at)
        if ratio_prev is None or ratio_here is None:
            raise DivautError(f"ratio undefined near probe point {rate_at}")
        print(f"rate\t{GAUSSIAN.format(ratio_here - ratio_prev)}")


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divaut",
        description="Weighted automata and rational series over infinite and "
                    "biinfinite words, with divergence-profile semantics.")
    parser.add_argument("--activation", default="auto",
                        help="activation decision: auto, exact, or horizon:<K>")
    parser.add_argument("--chi", default="auto",
                        help="acceptance-indicator decision for expression "
                             "evaluation: auto, exact, or horizon:<K>")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an automaton or expression on a word")
    p.add_argument("file")
    p.add_argument("--word", required=True,
                   help="finite 'a b', infinite 'a . ( b )^w', or biinfinite "
                        "'( a )^~w . b . ( c )^w'")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--i", type=int, default=0,
                   help="window start for biinfinite words")
    p.set_defaults(func=cmd_eval)

    for name, help_text in (("normalize", "fresh weight-1 endpoints"),
                            ("roll", "normalized -> loopback"),
                            ("unroll", "loopback -> normalized")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--out")
        p.set_defaults(func=cmd_transform)

    p = sub.add_parser("conjoin", help="glue two normalized automata")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--out")
    p.set_defaults(func=cmd_conjoin)

    p = sub.add_parser("conjoin3", help="glue three normalized automata")
    p.add_argument("x")
    p.add_argument("m")
    p.add_argument("y")
    p.add_argument("--out")
    p.set_defaults(func=cmd_conjoin3)

    p = sub.add_parser("disjoin", help="split a loopback-with-prelude automaton")
    p.add_argument("file")
    p.add_argument("--out-x", required=True)
    p.add_argument("--out-y", required=True)
    p.set_defaults(func=cmd_disjoin)

    p = sub.add_parser("disjoin3", help="split a bridge automaton")
    p.add_argument("file")
    p.add_argument("--out-x", required=True)
    p.add_argument("--out-m", required=True)
    p.add_argument("--out-y", required=True)
    p.set_defaults(func=cmd_disjoin3)

    p = sub.add_parser("decompose",
                       help="weighted sum of loopback/prelude/bridge parts")
    p.add_argument("file")
    p.add_argument("--level", choices=("div", "bidiv"), required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("from-rational", help="compile an expression file")
    p.add_argument("file")
    p.add_argument("--level", choices=("conv", "div", "bidiv"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_from_rational)

    p = sub.add_parser("to-rational", help="extract an expression")
    p.add_argument("file")
    p.add_argument("--level", choices=("conv", "div", "bidiv"), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_to_rational)

    p = sub.add_parser("equiv", help="sampled behavioral equality (semi-decision)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--level", choices=("conv", "div", "bidiv"), required=True)
    p.add_argument("--word", action="append",
                   help="explicit sample word (repeatable)")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--i-range", type=int, default=3)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("quantum", help="spin-chain pipeline")
    qsub = p.add_subparsers(dest="quantum_command", required=True)

    q = qsub.add_parser("magnetization", help="emit the magnetization operator")
    q.add_argument("--out")
    q.set_defaults(func=cmd_quantum)

    q = qsub.add_parser("correlator", help="emit a two-point ZZ correlator")
    q.add_argument("--k", type=int, required=True,
                   help="identity sites between the two Z sites")
    q.add_argument("--out")
    q.set_defaults(func=cmd_quantum)

    q = qsub.add_parser("expect", help="expected-value table for a state/operator")
    q.add_argument("--state", required=True)
    q.add_argument("--operator", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--rate-at", type=int)
    q.set_defaults(func=cmd_quantum)

    q = qsub.add_parser("hs", help="decaying-exponential spin-coupling "
                                   "hamiltonian on the all-up state")
    q.add_argument("--terms", required=True,
                   help="semicolon-separated amplitude,decay pairs")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--rate-at", type=int)
    q.set_defaults(func=cmd_quantum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DivautParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except DivautError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
