"""Combinatorial spin and spin-c decision procedures for Hantzsche-Wendt manifolds.

The library works with matrices over the four-symbol alphabet {0, 1, 2, 3}
that encode flat manifolds with diagonal holonomy.  It decides spin and
spin-c existence by two independent criteria, enumerates HW-matrices up
to affine equivalence, and machine-verifies the supporting impossibility
lemmas by exhaustive or randomized search.

All indices (rows, columns, set elements) are 0-based; index sets are
plain int bitmasks.
"""

from .salgebra import add, alpha, alpha_plus_beta, beta, conj
from .smatrix import (
    CompletionError,
    MatrixParseError,
    PreconditionError,
    SMatrix,
    complete_to_hw,
    format_matrix,
    indices_to_mask,
    mask_to_indices,
    parse_blocks,
    parse_matrix,
)
from .quadforms import (
    QuadForm,
    format_quadform,
    in_span,
    kappa_eval,
    sigma2,
    strip_squares,
    sw2,
    theta,
)
from .spinc import (
    SpincReport,
    analyze,
    binom2_parity,
    find_spinc_set,
    has_spin,
    has_spinc_linear,
    is_spinc_set,
)
from .action import (
    GroupElement,
    act,
    act_pair,
    are_equivalent,
    canonical_form,
    canonical_form_bruteforce,
    compose,
    identity,
    inverse,
    random_element,
)
from .enumeration import EnumerationResult, HWCount, classify_hw, count_hw, enumerate_hw
from .verification import (
    LEMMA_IDS,
    StandardFormCert,
    VerificationResult,
    forced_row_form,
    to_standard_form,
    verify_lemma,
)

__version__ = "0.1.0"

__all__ = [
    "add", "alpha", "alpha_plus_beta", "beta", "conj",
    "SMatrix", "MatrixParseError", "PreconditionError", "CompletionError",
    "complete_to_hw", "parse_matrix", "parse_blocks", "format_matrix",
    "mask_to_indices", "indices_to_mask",
    "QuadForm", "theta", "sw2", "sigma2", "strip_squares", "in_span",
    "kappa_eval", "format_quadform",
    "SpincReport", "analyze", "binom2_parity", "find_spinc_set",
    "has_spin", "has_spinc_linear", "is_spinc_set",
    "GroupElement", "identity", "compose", "inverse", "random_element",
    "act", "act_pair", "canonical_form", "canonical_form_bruteforce",
    "are_equivalent",
    "EnumerationResult", "HWCount", "enumerate_hw", "classify_hw", "count_hw",
    "LEMMA_IDS", "VerificationResult", "verify_lemma",
    "StandardFormCert", "to_standard_form", "forced_row_form",
    "__version__",
]
