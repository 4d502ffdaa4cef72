"""Hybrid entangled state generation: closed forms and exact Fock-space oracle."""

from ._core import (
    HeraldResult,
    SchemeConfig,
    balanced_config_a,
    balanced_probability_a,
    balanced_probability_b,
    coherent_row,
    displaced_single_row,
    envelope,
    fidelity_a_analytic,
    fidelity_b_analytic,
    fidelity_balanced,
    fidelity_first_order,
    fig4_total_probability,
    figures_csv,
    matrix_element,
    matrix_elements_csv,
    run_scheme_a_exact,
    run_scheme_b_exact,
    run_validation,
    success_prob_a,
    success_prob_b,
)

__all__ = [name for name in dir() if not name.startswith("_")]
