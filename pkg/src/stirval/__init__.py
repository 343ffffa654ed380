"""Exact 2-adic valuations of Stirling numbers of the second kind.

The package computes nu_2(S(n,k)) two independent ways (an exact
big-integer triangle and an adaptive modular engine), partitions indices
into residue classes mod 2**m and tracks which classes carry a constant
valuation, and mechanically re-checks the identities and conjectures that
describe this structure, at desk scale, with certificates.
"""

from .padic import (
    INFINITE,
    Valuation,
    digit_sum,
    is_prime,
    kummer_binomial_val,
    legendre_factorial_val,
    nu_int,
    nu_rat,
    pochhammer,
    power_lemma_report,
)
from .reports import CONSISTENT, COUNTEREXAMPLE, INCONCLUSIVE, ConjectureReport
from .stirling import (
    ModStirlingEngine,
    PrecisionExceeded,
    StirlingTriangle,
    de_wannemacker_gap,
    get_engine,
    identity_battery,
    ksf_mod,
    special_values_check,
    stirling_closed_small,
    stirling_exact,
    val2_closed_small,
    val2_stirling,
)
from .levels import (
    ChainLink,
    ClassStatus,
    ExceptionalScan,
    LevelTree,
    ResidueClass,
    build_level_tree,
    c_set_sequence,
    class_members,
    classify_class,
    exceptional_indices,
    k5_structure_report,
    k5_surviving_chain,
    m0_of,
    verify_main_conjecture,
)
from .sequences import (
    ClarkeForm,
    K5_FORM,
    K6_FORM,
    K7_FORM,
    NoRootError,
    NonUniqueRootError,
    PadicResidueZero,
    a_lm,
    a_lm_val_check,
    b_lm,
    clarke_battery,
    clarke_conjecture_check,
    clarke_val_check,
    clarke_zero,
    cohen_check,
    cohen_sum,
    t_sum,
)
from .approx import (
    approx_report,
    aux_indicators,
    err1,
    err2,
    f1,
    f2,
    f3,
    in_I1,
    in_I2,
    i1_elements,
    lambda_p,
    x1,
    x2,
)

__version__ = "0.1.0"
