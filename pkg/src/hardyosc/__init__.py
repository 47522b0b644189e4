"""Exact oscillation theory for ``y'' + q y = 0`` over the iterated-logarithm
tower, with floating-point cross-checks."""
from .errors import *  # noqa: F401,F403
from .tower import (
    ONE, X, ZERO, Monomial, TowerElem, compare, derive, log_derivative, log_of,
    render, shift_down, shift_up, sign_at_infinity,
)
from .sequences import (
    ell, gamma, integral_diverges, lambda_, omega_map, omega_seq, riccati_check,
    sequence_table, sigma_gamma, sigma_map,
)
from .oscillation import (
    FLWResult, Verdict, Witness, WitnessKind, classify, classify_general,
    classify_selfadjoint, phi_down, phi_down_times, verify_witness,
)

__version__ = "0.1.0"
