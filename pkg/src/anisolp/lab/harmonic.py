"""Horizontal Bernstein, trace, product and norm-equivalence checks."""

from __future__ import annotations

import logging
import math
from typing import Literal

import numpy as np

from anisolp.errors import NormSpecError, SupportError
from anisolp.lab.report import CheckReport
from anisolp.littlewood_paley.paraproduct import bony_split
from anisolp.littlewood_paley.partition import CHI_SUPPORT, PHI_SUPPORT
from anisolp.norms.besov import besov_h_norm, besov_h_slice_norms, norm_equivalence_bounds
from anisolp.norms.sobolev import hs_h_norm, hs_norm_3d, hs_slice_norm, hs_slice_norms
from anisolp.spectral.field import SpectralScalarField
from anisolp.spectral.grid import BOX_PERIOD
from anisolp.spectral.ops import dealiased_product, derivative, padded_physical


logger = logging.getLogger(__name__)

Direction = Literal["low", "ring"]
ProductVariant = Literal["bony_paraproducts", "b21_law", "full_law"]

BERNSTEIN_PAIRS = ((2.0, 2.0), (4.0, 2.0), (math.inf, 2.0), (math.inf, math.inf))
RING_INVERSE_CONSTANT = 1.0 / PHI_SUPPORT[0]
TRACE_CONSTANT = math.sqrt(2.0)
HARD_TOL = 1e-9
OVERSAMPLE = 2


def _exponent(value: float | str) -> float:
    return math.inf if value == "inf" else float(value)


def check_support(a: SpectralScalarField, k: int, direction: Direction) -> None:
    """Raise SupportError unless every nonzero mode lies in 2^k B_h or 2^k C_h."""
    present = np.abs(a.coeffs) > 1e-14 * max(a.amplitude(), 1e-300)
    if a.mean and direction == "ring":
        raise SupportError("a ring support excludes a nonzero mean")
    if not present.any():
        return
    kh = a.grid.kh[present]
    scale = 2.0**k
    if direction == "low":
        bad = kh > CHI_SUPPORT * scale * (1.0 + 1e-12)
    elif direction == "ring":
        lo, hi = PHI_SUPPORT
        bad = (kh < lo * scale * (1.0 - 1e-12)) | (kh > hi * scale * (1.0 + 1e-12))
    else:
        raise ValueError(f"direction must be 'low' or 'ring'. Got: {direction!r}")
    if bad.any():
        raise SupportError(
            f"{int(bad.sum())} modes fall outside the declared {direction} support at k={k}"
        )


def _slice_lebesgue(f: SpectralScalarField, p: float) -> np.ndarray:
    """L^p_h of each x3 slice of the oversampled field; exact for p in {2, 4}."""
    samples = np.abs(padded_physical(f, OVERSAMPLE))
    if math.isinf(p):
        return np.max(samples, axis=(0, 1))
    n1, n2, _ = samples.shape
    cell = (BOX_PERIOD / n1) * (BOX_PERIOD / n2)
    return (np.sum(samples**p, axis=(0, 1)) * cell) ** (1.0 / p)


def _worst_ratio(lhs: np.ndarray, rhs: np.ndarray) -> tuple[float, int]:
    """Largest lhs/rhs over slices with rhs > 0, and its slice index."""
    scale = max(float(np.max(rhs, initial=0.0)), 1e-300)
    ok = rhs > 1e-14 * scale
    if not ok.any():
        return 0.0, 0
    ratios = np.where(ok, lhs / np.where(ok, rhs, 1.0), 0.0)
    index = int(np.argmax(ratios))
    return float(ratios[index]), index


def check_bernstein(
    a: SpectralScalarField,
    k: int,
    direction: Direction = "low",
    p1: float | str = 2,
    p2: float | str = 2,
    alpha: tuple[int, int] = (0, 0),
) -> CheckReport:
    """||d^alpha_h a||_{L^p1_h} against 2^{k(|alpha| + 2(1/p2 - 1/p1))} ||a||_{L^p2_h}, worst slice."""
    lo, hi = _exponent(p1), _exponent(p2)
    if (lo, hi) not in BERNSTEIN_PAIRS:
        raise NormSpecError(f"(p1, p2) = ({p1}, {p2}) is not supported")
    if len(alpha) != 2 or min(alpha) < 0:
        raise ValueError(f"alpha must be a horizontal multi-index. Got: {alpha}")
    check_support(a, k, direction)
    da = a
    for axis, order in zip((1, 2), alpha):
        for _ in range(order):
            da = derivative(da, axis)
    exponent = sum(alpha) + 2.0 * (1.0 / hi - 1.0 / lo)
    lhs = _slice_lebesgue(da, lo)
    rhs = 2.0 ** (k * exponent) * _slice_lebesgue(a, hi)
    ratio, index = _worst_ratio(lhs, rhs)
    return CheckReport(
        name=f"bernstein_{direction}",
        lhs=float(lhs[index]),
        rhs_terms={"scaled_norm": float(rhs[index])},
        ratio=ratio,
        params={"k": k, "p1": str(p1), "p2": str(p2), "alpha": list(alpha)},
    )


def check_ring_inverse(a: SpectralScalarField, k: int) -> CheckReport:
    """||a||_{L^2_h} <= (4/3) 2^-k ||grad_h a||_{L^2_h} on a ring; hard lattice bound."""
    check_support(a, k, "ring")
    lhs = hs_slice_norms(a, 0.0)
    rhs = 2.0**-k * hs_slice_norms(a, 1.0)
    ratio, index = _worst_ratio(lhs, rhs)
    return CheckReport(
        name="bernstein_ring_inverse",
        lhs=float(lhs[index]),
        rhs_terms={"2^-k*|grad_h a|": float(rhs[index])},
        ratio=ratio,
        passed=ratio <= RING_INVERSE_CONSTANT + HARD_TOL,
        params={"k": k},
    )


def check_trace(a: SpectralScalarField, s: float) -> CheckReport:
    """sup over slices of ||a||_{H^s_h} against sqrt(2) ||a||_{H^{s+1/2}}."""
    if not 0.5 <= s < 1.0:
        raise NormSpecError(f"s must lie in [1/2, 1). Got: {s}")
    lhs = hs_slice_norm(a, s)
    rhs = hs_norm_3d(a, s + 0.5)
    if rhs > 0.0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0.0 else math.inf
    return CheckReport(
        name="trace",
        lhs=lhs,
        rhs_terms={"H^{s+1/2}": rhs},
        ratio=ratio,
        passed=ratio <= TRACE_CONSTANT + HARD_TOL,
        params={"s": s},
    )


def check_product(
    a: SpectralScalarField, b: SpectralScalarField, variant: ProductVariant = "full_law"
) -> CheckReport:
    """Horizontal product laws in H^{1/2}_h, evaluated slice by slice; worst slice reported.

    ``bony_paraproducts`` takes the larger of ||T_a b|| / (||a||_inf ||b||)
    and ||T~_b a|| / (||a||_{H^1} ||b||); ``b21_law`` divides ||ab|| by the
    (B^1_{2,1})_h norm of a; ``full_law`` by ||a||_inf + ||a||_{H^1}.
    """
    a.grid.require_same(b.grid)
    b_half = hs_slice_norms(b, 0.5)
    a_sup = _slice_lebesgue(a, math.inf)[::OVERSAMPLE]
    a_h1 = hs_slice_norms(a, 1.0)
    if variant == "bony_paraproducts":
        split = bony_split(a, b)
        low_high = hs_slice_norms(split.low_high, 0.5)
        high_low = hs_slice_norms(split.high_low, 0.5)
        r1, i1 = _worst_ratio(low_high, a_sup * b_half)
        r2, i2 = _worst_ratio(high_low, a_h1 * b_half)
        return CheckReport(
            name="product_bony_paraproducts",
            lhs=float(max(low_high[i1], high_low[i2])),
            rhs_terms={"low_high_ratio": r1, "high_low_ratio": r2},
            ratio=max(r1, r2),
            params={"variant": variant},
        )
    product = hs_slice_norms(dealiased_product(a, b), 0.5)
    if variant == "b21_law":
        a_norm = besov_h_slice_norms(a, 1.0, 2, 1)
    elif variant == "full_law":
        a_norm = a_sup + a_h1
    else:
        raise ValueError(f"unknown product variant {variant!r}")
    ratio, index = _worst_ratio(product, a_norm * b_half)
    return CheckReport(
        name=f"product_{variant}",
        lhs=float(product[index]),
        rhs_terms={"a_norm": float(a_norm[index]), "b_H1/2": float(b_half[index])},
        ratio=ratio,
        params={"variant": variant},
    )


def check_norm_equivalence(a: SpectralScalarField, s: float) -> CheckReport:
    """Dyadic L^2_v(H^s_h) norm over the Fourier-side norm, within the exact lattice range."""
    c_low, c_high = norm_equivalence_bounds(a.grid, s)
    dyadic = besov_h_norm(a, s, 2, 2, vertical=2)
    direct = hs_h_norm(a, s)
    ratio = dyadic / direct if direct > 0.0 else 0.0
    passed = direct == 0.0 or (c_low - HARD_TOL <= ratio <= c_high + HARD_TOL)
    logger.debug("norm equivalence s=%g: ratio %.12f in [%.12f, %.12f]", s, ratio, c_low, c_high)
    return CheckReport(
        name="norm_equivalence",
        lhs=dyadic,
        rhs_terms={"direct": direct, "lower": c_low, "upper": c_high},
        ratio=ratio,
        passed=passed,
        params={"s": s},
    )
