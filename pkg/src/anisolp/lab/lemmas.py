"""Implied constants of the J_il bounds and of the trilinear-term bounds.

Each check evaluates the left side and every named ingredient of the right
side, then reports the smallest constant making the inequality hold for
this field. Absorbed fractions of ||grad_h v||^2_{H^1} are subtracted first.
"""

from __future__ import annotations

from dataclasses import dataclass
import itertools
import logging
import math

import numpy as np

from anisolp.diagnostics.balance import GradientSamples, grad_h_norms
from anisolp.errors import CriterionError
from anisolp.lab.bands import max_abs_J
from anisolp.lab.report import CheckReport, implied_constant
from anisolp.norms.sobolev import hs_norm_3d, log_weighted_norm, sobolev_weight, weighted_sum
from anisolp.spectral.field import SpectralVectorField
from anisolp.spectral.grid import BOX_VOLUME


logger = logging.getLogger(__name__)

ABSORBED_SHARE = 1.0 / 10.0
TRILINEAR_ABSORBED_SHARE = 1.0 / 100.0
EPSILON_VALUES = (0.1, 0.25)


@dataclass(frozen=True)
class LemmaIngredients:
    """Every quantity the J_il bounds are built from, for one field."""

    lhs: float
    gh_l2: float
    gh_h1: float
    gh_h1_horizontal: float
    v3_h12: float
    v3_h32: float
    grad_l2: float
    d3_l2: float
    d3h_l2: float

    @property
    def atol(self) -> float:
        return 1e-12 * max(self.gh_h1, 1e-300)


def _d3_norms(v: SpectralVectorField) -> tuple[float, float]:
    k3_sq = v.grid.k3**2
    power = np.abs(v.stacked) ** 2
    d3h = BOX_VOLUME * float(np.sum(k3_sq * (power[0] + power[1])))
    d3v = BOX_VOLUME * float(np.sum(k3_sq * power[2]))
    return d3h + d3v, d3h


def lemma_ingredients(v: SpectralVectorField) -> LemmaIngredients:
    grid = v.grid
    gh_l2, gh_h1 = grad_h_norms(v)
    power_h = np.abs(v.stacked[0]) ** 2 + np.abs(v.stacked[1]) ** 2
    gh_h1_horizontal = BOX_VOLUME * float(np.sum(grid.kh_sq * grid.k_sq * power_h))
    d3_l2, d3h_l2 = _d3_norms(v)
    logger.debug("lemma ingredients on grid %s", grid.shape)
    return LemmaIngredients(
        lhs=max_abs_J(v),
        gh_l2=gh_l2,
        gh_h1=gh_h1,
        gh_h1_horizontal=gh_h1_horizontal,
        v3_h12=hs_norm_3d(v[2], 0.5),
        v3_h32=hs_norm_3d(v[2], 1.5),
        grad_l2=weighted_sum(v, sobolev_weight(grid, 1.0)),
        d3_l2=d3_l2,
        d3h_l2=d3h_l2,
    )


def check_j_log_bound(
    v: SpectralVectorField, E: float, ingredients: LemmaIngredients | None = None
) -> CheckReport:
    """max|J_il| <= gh_h1/10 + C (log(gh_l2 E + e) ||v^3||^2_{H^3/2} + ||grad v||^2/E) gh_l2."""
    if not E > 0.0:
        raise CriterionError(f"E must be positive. Got: {E}")
    ing = ingredients or lemma_ingredients(v)
    log_term = math.log(ing.gh_l2 * E + math.e) * ing.v3_h32**2
    energy_term = ing.grad_l2 / E
    structure = (log_term + energy_term) * ing.gh_l2
    absorbed = ABSORBED_SHARE * ing.gh_h1
    return CheckReport(
        name="j_log_bound",
        lhs=ing.lhs,
        rhs_terms={
            "gh_h1/10": absorbed,
            "log*v3_h32^2*gh_l2": log_term * ing.gh_l2,
            "grad_l2/E*gh_l2": energy_term * ing.gh_l2,
        },
        ratio=implied_constant(ing.lhs - absorbed, structure, atol=ing.atol),
        params={"E": E},
    )


def check_j_epsilon_bound(
    v: SpectralVectorField,
    E: float,
    epsilon: float,
    ingredients: LemmaIngredients | None = None,
) -> CheckReport:
    """max|J_il| <= (eps + C ||v^3||_{H^1/2} sqrt(log(e + E gh_l2))) gh_h1 + C ||v^3||^2_{H^1/2} ||d_3 v||^2 / E^2."""
    if not E > 0.0:
        raise CriterionError(f"E must be positive. Got: {E}")
    if not epsilon > 0.0:
        raise CriterionError(f"epsilon must be positive. Got: {epsilon}")
    ing = ingredients or lemma_ingredients(v)
    first = ing.v3_h12 * math.sqrt(math.log(math.e + E * ing.gh_l2)) * ing.gh_h1
    second = ing.v3_h12**2 * ing.d3_l2 / E**2
    absorbed = epsilon * ing.gh_h1
    return CheckReport(
        name="j_epsilon_bound",
        lhs=ing.lhs,
        rhs_terms={"eps*gh_h1": absorbed, "v3_h12*sqrt(log)*gh_h1": first, "v3_h12^2*d3_l2/E^2": second},
        ratio=implied_constant(ing.lhs - absorbed, first + second, atol=ing.atol),
        params={"E": E, "epsilon": epsilon},
    )


def check_j_horizontal_log_bound(
    v: SpectralVectorField, E: float, ingredients: LemmaIngredients | None = None
) -> CheckReport:
    """max|J_il| <= (1/10 + C ||v^3||_{log_h,E}) ||grad_h v^h||^2_{H^1} + C ||v^3||^2_{H^1/2} ||d_3 v^h||^2 / E^2.

    E = 0 is accepted: the second term is then infinite and the implied
    constant is 0.
    """
    if E < 0.0:
        raise CriterionError(f"E must be >= 0. Got: {E}")
    ing = ingredients or lemma_ingredients(v)
    log_norm = log_weighted_norm(v[2], E)
    first = log_norm * ing.gh_h1_horizontal
    second = math.inf if E == 0.0 else ing.v3_h12**2 * ing.d3h_l2 / E**2
    absorbed = ABSORBED_SHARE * ing.gh_h1_horizontal
    if E == 0.0:
        ratio = 0.0
    else:
        ratio = implied_constant(ing.lhs - absorbed, first + second, atol=ing.atol)
    return CheckReport(
        name="j_horizontal_log_bound",
        lhs=ing.lhs,
        rhs_terms={"gh_h1_hh/10": absorbed, "log_norm*gh_h1_hh": first, "v3_h12^2*d3h_l2/E^2": second},
        ratio=ratio,
        params={"E": E},
    )


def trilinear_terms(v: SpectralVectorField) -> np.ndarray:
    """All int d_i v^3 d_j v^k d_l v^m with j, l horizontal and i, k, m arbitrary."""
    g = GradientSamples(v)
    values = [
        g.integral((i, 2), (j, k), (l, m))
        for i, k, m in itertools.product(range(3), repeat=3)
        for j, l in itertools.product(range(2), repeat=2)
    ]
    return np.asarray(values)


def check_trilinear_bounds(v: SpectralVectorField) -> list[CheckReport]:
    terms = trilinear_terms(v)
    lhs = float(np.max(np.abs(terms)))
    gh_l2, gh_h1 = grad_h_norms(v)
    v3_h12 = hs_norm_3d(v[2], 0.5)
    v3_h32 = hs_norm_3d(v[2], 1.5)
    atol = 1e-12 * max(gh_h1, 1e-300)
    absorbed = TRILINEAR_ABSORBED_SHARE * gh_h1
    convexity = v3_h32**2 * gh_l2
    critical = v3_h12 * gh_h1
    interpolation = v3_h32 * math.sqrt(gh_l2 * gh_h1)
    return [
        CheckReport(
            name="trilinear_convexity",
            lhs=lhs,
            rhs_terms={"gh_h1/100": absorbed, "v3_h32^2*gh_l2": convexity},
            ratio=implied_constant(lhs - absorbed, convexity, atol=atol),
        ),
        CheckReport(
            name="trilinear_h12",
            lhs=lhs,
            rhs_terms={"v3_h12*gh_h1": critical},
            ratio=implied_constant(lhs, critical, atol=atol),
        ),
        CheckReport(
            name="trilinear_interpolation",
            lhs=lhs,
            rhs_terms={"v3_h32*|grad_h v|*|grad_h v|_H1": interpolation},
            ratio=implied_constant(lhs, interpolation, atol=atol),
        ),
    ]
