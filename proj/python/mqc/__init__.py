"""Python bindings for the mqc calculators."""
from ._mqc import (
    PreconditionError,
    attack1_guess_coherent,
    attack2_chernoff,
    attack2_setup2_guess,
    bound_B_II,
    bound_B_III,
    classify,
    coinflip_attack_success,
    coinflip_failure_term,
    det_probs,
    double_photon_attack,
    estimate_event_probs,
    mpaii_guess,
    overlap_q,
    report_prob,
)

__all__ = [
    "PreconditionError",
    "attack1_guess_coherent",
    "attack2_chernoff",
    "attack2_setup2_guess",
    "bound_B_II",
    "bound_B_III",
    "classify",
    "coinflip_attack_success",
    "coinflip_failure_term",
    "det_probs",
    "double_photon_attack",
    "estimate_event_probs",
    "mpaii_guess",
    "overlap_q",
    "report_prob",
]
