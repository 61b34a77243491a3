"""The vertical-stretching integral J_il and its horizontal frequency bands."""

from __future__ import annotations

from dataclasses import dataclass
import logging
import math

from anisolp.diagnostics.balance import grad_h_norms
from anisolp.errors import CutoffError
from anisolp.lab.report import CheckReport, implied_constant
from anisolp.littlewood_paley.blocks import band_split
from anisolp.littlewood_paley.paraproduct import bony_split
from anisolp.norms.mixed import mixed_norm
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField
from anisolp.spectral.ops import derivative, inner, l2_norm_sq, trilinear_integral, truncate


logger = logging.getLogger(__name__)

HORIZONTAL_INDICES = (1, 2)
LOW_BAND_SHARE = 1.0 / 100.0


def _check_indices(i: int, l: int) -> None:
    if i not in HORIZONTAL_INDICES or l not in HORIZONTAL_INDICES:
        raise ValueError(f"i and l must lie in {{1, 2}}. Got: i={i}, l={l}")


def _factors(v: SpectralVectorField, i: int, l: int) -> tuple[SpectralScalarField, ...]:
    """(d_i v^3, d_3 v^l, d_i v^l), 1-based indices."""
    return derivative(v[2], i), derivative(v[l - 1], 3), derivative(v[l - 1], i)


def J_il(v: SpectralVectorField, i: int, l: int) -> float:
    """int d_i v^3 d_3 v^l d_i v^l over the box."""
    _check_indices(i, l)
    return trilinear_integral(*_factors(v, i, l))


def max_abs_J(v: SpectralVectorField) -> float:
    return max(abs(J_il(v, i, l)) for i in HORIZONTAL_INDICES for l in HORIZONTAL_INDICES)


@dataclass(frozen=True)
class BandComponents:
    flat: float
    natural: float
    sharp: float
    total: float

    @property
    def residual(self) -> float:
        return abs(self.flat + self.natural + self.sharp - self.total)


def j_band_components(
    v: SpectralVectorField, i: int, l: int, lam: float, Lam: float
) -> BandComponents:
    """Signed J_il with d_3 v^l restricted to |xi_h| < lam, [lam, Lam) and >= Lam."""
    _check_indices(i, l)
    d_i_v3, d3_vl, d_i_vl = _factors(v, i, l)
    bands = band_split(d3_vl, lam, Lam)
    return BandComponents(
        flat=trilinear_integral(d_i_v3, bands.flat, d_i_vl),
        natural=trilinear_integral(d_i_v3, bands.natural, d_i_vl),
        sharp=trilinear_integral(d_i_v3, bands.sharp, d_i_vl),
        total=trilinear_integral(d_i_v3, d3_vl, d_i_vl),
    )


@dataclass(frozen=True)
class SharpBonyPieces:
    first: float
    second: float
    unresolved: float
    direct: float

    @property
    def residual(self) -> float:
        return abs(self.first + self.second + self.unresolved - self.direct)


def j_sharp_bony(v: SpectralVectorField, i: int, l: int, E: float) -> SharpBonyPieces:
    """Paraproduct pieces of int d_i v^3 d_3 v^l_sharp d_i v^l with sharp cutoff 1/E.

    ``first`` pairs d_i v^3 with T~ (high d_3 v^l_sharp, low d_i v^l) and
    ``second`` with T (low d_3 v^l_sharp, high d_i v^l). The sharp part has
    no horizontal-mean modes, so ``unresolved`` vanishes.
    """
    _check_indices(i, l)
    if not E > 0.0:
        raise CutoffError(f"E must be positive. Got: {E}")
    d_i_v3, d3_vl, d_i_vl = _factors(v, i, l)
    cutoff = 1.0 / E
    sharp = band_split(d3_vl, cutoff, cutoff).sharp
    split = bony_split(sharp, d_i_vl)
    test = truncate(d_i_v3)
    return SharpBonyPieces(
        first=inner(test, split.high_low),
        second=inner(test, split.low_high),
        unresolved=inner(test, split.residual),
        direct=trilinear_integral(d_i_v3, sharp, d_i_vl),
    )


def choose_cutoffs(v: SpectralVectorField, E: float, C: float) -> tuple[float, float]:
    """lambda = 1/E and Lambda = (50 C)^2 ||grad_h v||^2 + e/E."""
    if not E > 0.0 or not C > 0.0:
        raise CutoffError(f"E and C must be positive. Got: E={E}, C={C}")
    gh_l2, _ = grad_h_norms(v)
    lam = 1.0 / E
    Lam = (50.0 * C) ** 2 * gh_l2 + math.e / E
    if lam > Lam:
        raise CutoffError(f"lambda={lam} exceeds Lambda={Lam}")
    return lam, Lam


def check_band_estimates(
    v: SpectralVectorField, i: int, l: int, lam: float, Lam: float
) -> list[CheckReport]:
    """Implied constants of the low, high and middle band estimates of J_il."""
    _check_indices(i, l)
    d_i_v3, d3_vl, d_i_vl = _factors(v, i, l)
    bands = band_split(d3_vl, lam, Lam)
    parts = j_band_components(v, i, l, lam, Lam)
    gh_l2, gh_h1 = grad_h_norms(v)
    d3_l2 = l2_norm_sq(d3_vl)
    atol = 1e-12 * max(gh_h1, 1e-300)
    params = {"i": i, "l": l, "lambda": lam, "Lambda": Lam}

    low_structure = lam * d3_l2 * gh_l2
    low = CheckReport(
        name="band_low",
        lhs=abs(parts.flat),
        rhs_terms={"gh_h1/100": LOW_BAND_SHARE * gh_h1, "lambda*d3_l2*gh_l2": low_structure},
        ratio=implied_constant(abs(parts.flat) - LOW_BAND_SHARE * gh_h1, low_structure, atol=atol),
        params=params,
    )

    high_structure = Lam**-0.5 * math.sqrt(gh_l2) * gh_h1
    high = CheckReport(
        name="band_high",
        lhs=abs(parts.sharp),
        rhs_terms={"Lambda^-1/2*|grad_h v|*gh_h1": high_structure},
        ratio=implied_constant(abs(parts.sharp), high_structure, atol=atol),
        params=params,
    )

    mid_sup = mixed_norm(bands.natural, 2, "inf", oversample=2)
    log_ratio = math.log(Lam / lam)
    mid_structure = math.sqrt(log_ratio) * math.sqrt(gh_h1)
    middle = CheckReport(
        name="band_middle_sup",
        lhs=mid_sup,
        rhs_terms={"sqrt(log(Lambda/lambda))*|grad_h v|_H1": mid_structure},
        ratio=implied_constant(mid_sup, mid_structure, atol=1e-12 * max(mid_sup, 1e-300)),
        params=params,
    )

    slice_l2 = mixed_norm(d_i_v3, "inf", 2)
    holder_structure = mid_sup * slice_l2 * math.sqrt(l2_norm_sq(d_i_vl))
    holder = CheckReport(
        name="band_middle_holder",
        lhs=abs(parts.natural),
        rhs_terms={
            "d3_vl_natural L2v(Linf_h)": mid_sup,
            "d_i v3 Linf_v(L2_h)": slice_l2,
        },
        ratio=implied_constant(abs(parts.natural), holder_structure, atol=atol),
        params=params,
    )
    logger.debug("band estimates i=%d l=%d: %s", i, l, [r.ratio for r in (low, high, middle, holder)])
    return [low, high, middle, holder]
