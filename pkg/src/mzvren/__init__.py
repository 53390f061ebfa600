"""Exact shuffle-type renormalized multiple zeta values at non-positive integers.

Three routes compute zeta_EMS(-k1, ..., -kr): the Birkhoff decomposition of the
character phi on the word Hopf algebra, the closed-form generating function,
and the binomial recurrence.  The quasi-shuffle machinery expresses the
generating function through any harmonic-type renormalization via sums over
surjections.
"""
from .birkhoff import CharacterTable, bogoliubov, convolve, phi, phi_minus, phi_plus, x_series, zeta_ems
from .genfun import (
    bernoulli,
    riemann_zeta_negative,
    theorem_rhs_symbolic,
    verify_theorem,
    z_ems_closed,
    zeta_ems_closed,
    zeta_ems_recurrence,
)
from .quasishuffle import (
    ElementQS,
    Letter,
    Surjection,
    is_nonsingular,
    lemma_permutation_check,
    qsh_coefficients,
    qsh_product,
    stuffle_identity_check,
    stuffle_rhs,
    surjections,
    verify_lemma_g,
)
from .series import LaurentSeries, MultiSeries, constant_term, exp_truncated, pi_minus
from .words import HWord, TensorSum, WordSum, admissible_subsets, coproduct0, reduced_coproduct0, shuffle0

__version__ = "0.1.0"

__all__ = [
    "CharacterTable", "ElementQS", "HWord", "LaurentSeries", "Letter", "MultiSeries", "Surjection",
    "TensorSum", "WordSum", "admissible_subsets", "bernoulli", "bogoliubov", "constant_term", "convolve",
    "coproduct0", "exp_truncated", "is_nonsingular", "lemma_permutation_check", "phi", "phi_minus",
    "phi_plus", "pi_minus", "qsh_coefficients", "qsh_product", "reduced_coproduct0",
    "riemann_zeta_negative", "shuffle0", "stuffle_identity_check", "stuffle_rhs", "surjections",
    "theorem_rhs_symbolic", "verify_lemma_g", "verify_theorem", "x_series", "z_ems_closed", "zeta_ems",
    "zeta_ems_closed", "zeta_ems_recurrence",
]
