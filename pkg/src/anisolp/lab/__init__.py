"""Numerical checks of the band, lemma and harmonic-analysis inequalities."""

from anisolp.lab.bands import J_il, check_band_estimates, choose_cutoffs, j_band_components, j_sharp_bony
from anisolp.lab.corpus import CorpusSpec
from anisolp.lab.harmonic import check_bernstein, check_norm_equivalence, check_product, check_trace
from anisolp.lab.lemmas import (
    check_j_epsilon_bound,
    check_j_horizontal_log_bound,
    check_j_log_bound,
    check_trilinear_bounds,
)
from anisolp.lab.report import CheckReport
from anisolp.lab.suites import SuiteResult, run_suite

__all__ = [
    "CheckReport",
    "CorpusSpec",
    "J_il",
    "SuiteResult",
    "check_band_estimates",
    "check_bernstein",
    "check_j_epsilon_bound",
    "check_j_horizontal_log_bound",
    "check_j_log_bound",
    "check_norm_equivalence",
    "check_product",
    "check_trace",
    "check_trilinear_bounds",
    "choose_cutoffs",
    "j_band_components",
    "j_sharp_bony",
    "run_suite",
]
