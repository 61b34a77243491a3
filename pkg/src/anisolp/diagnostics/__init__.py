"""Trajectory diagnostics: balances, records and criterion monitors."""

from anisolp.diagnostics.balance import (
    divfree_identity,
    e1_identity_residual,
    energy_balance,
    grad_h_balance_residuals,
    grad_h_balance_terms,
)
from anisolp.diagnostics.config import DiagnosticsConfig
from anisolp.diagnostics.criteria import (
    criterion_p_integral,
    leray_lower_bounds,
    log_norm_monitor,
    one_component_lower_bound,
    smallness_functional,
)
from anisolp.diagnostics.record import DiagnosticsRecord, make_record

__all__ = [
    "DiagnosticsConfig",
    "DiagnosticsRecord",
    "criterion_p_integral",
    "divfree_identity",
    "e1_identity_residual",
    "energy_balance",
    "grad_h_balance_residuals",
    "grad_h_balance_terms",
    "leray_lower_bounds",
    "log_norm_monitor",
    "make_record",
    "one_component_lower_bound",
    "smallness_functional",
]
