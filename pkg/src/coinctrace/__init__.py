"""Coincidence Reidemeister traces and Nielsen numbers for selfmaps of
bouquets of circles, computed from free-group endomorphisms via Fox
calculus, with twisted-conjugacy class merging and an exact geometric
cross-check."""

from .words import (
    Alphabet,
    AlphabetMismatch,
    Endomorphism,
    GroupRingElement,
    Letter,
    Word,
    WordSyntaxError,
    endo_apply,
    parse_word,
    ring_add,
    ring_involution,
    ring_left_mul,
    ring_right_mul,
    ring_scale,
    word_invert,
    word_multiply,
    word_reduce,
)
from .fox import delta_derivative, fox_derivative
from .conjugacy import (
    AbelianizedEndo,
    DecideConfig,
    DecisionOutcome,
    Nil2Element,
    abelianize_endo,
    decide,
    decide_abelian,
    decide_nilpotent2,
    find_witness,
    nil2_embed,
    nil2_endo,
    nil2_multiply,
    smith_normal_form,
    solve_linear_system,
    verify_witness,
)
from .trace import (
    ReidemeisterTrace,
    fixed_point_raw,
    fixed_point_trace,
    match_traces,
    nielsen_bound,
    raw_trace,
    raw_trace_delta,
    reduce_trace,
)
from .oracle import (
    CoincidencePoint,
    LabeledInterval,
    RegularMap,
    RegularPair,
    build_regular_pair,
    default_epsilon,
    dump_intervals,
    enumerate_coincidences,
    geometric_trace,
    interval_contribution,
    lemma_predictions,
)

__version__ = "0.1.0"
