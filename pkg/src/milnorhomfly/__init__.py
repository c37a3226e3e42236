"""Exact HOMFLYPT polynomials and Milnor invariants of string links.

The package computes the HOMFLYPT polynomial of oriented diagrams, Milnor
mu-invariants of pure string links, and checks the formulas expressing
Milnor invariants of length 2k+2 through derivatives of the HOMFLYPT
polynomials of fusion knots.
"""

from .laurent import Laurent1, Laurent2, LogUndefined, deriv_at_one, log_deriv_at_one
from .magnus import MagnusSeries, NotInvertible, magnus_generator, magnus_inverse, magnus_mul
from .words import (
    IndexSequence,
    InvalidSubsequence,
    ParseError,
    StrandIndexError,
    StringLinkWord,
    parse_sequence,
    parse_word,
    relabel,
    subsequences,
)
from .diagram import (
    InvalidDiagram,
    NotAKnot,
    PlanarDiagram,
    TangleBuilder,
    braid_closure,
    connected_sum,
    fusion_braid,
    fusion_closure,
    trace_closure,
    unknot,
    unlink,
    word_to_diagram,
)
from .homfly import (
    BudgetExceeded,
    SkeinMemo,
    coeff_poly,
    homflypt,
    homflypt_braid,
    lowest_coeff_identity_check,
)
from .milnor import (
    MilnorResult,
    NotPure,
    RepeatedIndex,
    artin_longitudes,
    delta,
    linking_matrix,
    milnor_result,
    mu,
    mu_table,
    standard_form,
)
from .models import (
    build_V,
    enumerate_Mk,
    model_K_M,
    model_K_MM,
    model_K_mn,
    model_L_n,
    random_link,
)
from .theorem import (
    HypothesisViolated,
    VerificationReport,
    closed_form_correction,
    congruent_mod,
    delta_correction,
    enumerate_S,
    enumerate_S0,
    fusion_P0,
    rhs_main,
    rhs_main2,
    subseq_sum,
    verify_batch,
)

__version__ = "0.1.0"
