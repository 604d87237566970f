"""Semiring-weighted automata and rational power series over finite,
infinite, and biinfinite words, with divergence-profile semantics."""

from .semiring import (
    BOOLEAN,
    GAUSSIAN,
    NATURAL,
    RATIONAL,
    BiWeightGrid,
    GaussianRational,
    Semiring,
    WeightSequence,
    gaussian,
    semiring_by_name,
)
from .words import (
    Alphabet,
    BiInfiniteWord,
    FiniteWord,
    UPInfiniteWord,
    concat,
    format_word,
    parse_word,
    slice_word,
    words_equal,
)
from .automaton import (
    Automaton,
    AutomatonClass,
    WeightedSumDecomposition,
    classify,
    conjoin2,
    conjoin3,
    converging_weight,
    decompose_bidiverging,
    decompose_diverging,
    disjoin2,
    disjoin3,
    isomorphic,
    normalize,
    roll,
    scale_automaton,
    sum_automata,
    trim,
    unroll,
    zero_automaton,
)
from .activation import (
    AUTO,
    EXACT,
    ActivationPolicy,
    ActivationVerdict,
    BidivergingBehavior,
    DivergingBehavior,
    activates_bidiverging,
    activates_diverging,
    activation_verdicts,
    bidiverging_behavior,
    diverging_behavior,
    horizon,
)
from .series import (
    Atom,
    Cat,
    CharacteristicForm,
    Conjoin2,
    Conjoin3,
    Omega,
    Scale,
    Star,
    Sum,
    Zeta,
    bidiv_coeff,
    conv_coeff,
    div_coeff,
    expr_level,
    is_proper,
    to_characteristic,
)
from .kleene import (
    compile_bidiv,
    compile_conv,
    compile_div,
    extract_bidiv,
    extract_conv,
    extract_div,
)

__version__ = "0.1.0"
