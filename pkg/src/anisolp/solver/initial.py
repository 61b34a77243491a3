"""Initial-data generators; every generator returns a certified divergence-free field."""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from anisolp.errors import FieldError, GridError
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField, reflect
from anisolp.spectral.grid import Grid
from anisolp.spectral.ops import leray_project


logger = logging.getLogger(__name__)

Factor = tuple[str, int]


def _factor_coeffs(kind: str, m: int) -> dict[int, complex]:
    if kind == "one":
        return {0: 1.0}
    if kind == "cos":
        return {m: 0.5, -m: 0.5}
    if kind == "sin":
        return {m: -0.5j, -m: 0.5j}
    raise ValueError(f"unknown trig factor {kind!r}")


def separable_mode(grid: Grid, amplitude: float, factors: Sequence[Factor]) -> np.ndarray:
    """Exact coefficients of amplitude * f1(m1 x1) f2(m2 x2) f3(m3 x3)."""
    out = np.zeros(grid.shape, dtype=np.complex128)
    per_axis = [_factor_coeffs(kind, m) for kind, m in factors]
    for k1, c1 in per_axis[0].items():
        for k2, c2 in per_axis[1].items():
            for k3, c3 in per_axis[2].items():
                out[grid.index_of((k1, k2, k3))] += amplitude * c1 * c2 * c3
    return out


def init_taylor_green(grid: Grid, amplitude: float = 1.0) -> SpectralVectorField:
    """(cos x1 sin x2, -sin x1 cos x2, 0); x3-independent with exact solution e^{-2t} v0."""
    one = ("one", 0)
    arrays = [
        separable_mode(grid, amplitude, [("cos", 1), ("sin", 1), one]),
        separable_mode(grid, -amplitude, [("sin", 1), ("cos", 1), one]),
        np.zeros(grid.shape, dtype=np.complex128),
    ]
    return SpectralVectorField.from_arrays(grid, arrays, divfree=True)


def init_taylor_green_3d(grid: Grid, amplitude: float = 1.0) -> SpectralVectorField:
    """(sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0)."""
    arrays = [
        separable_mode(grid, amplitude, [("sin", 1), ("cos", 1), ("cos", 1)]),
        separable_mode(grid, -amplitude, [("cos", 1), ("sin", 1), ("cos", 1)]),
        np.zeros(grid.shape, dtype=np.complex128),
    ]
    return SpectralVectorField.from_arrays(grid, arrays, divfree=True)


def init_abc(grid: Grid, A: float = 1.0, B: float = 1.0, C: float = 1.0) -> SpectralVectorField:
    """Arnold-Beltrami-Childress flow; curl v = v."""
    one = ("one", 0)
    arrays = [
        separable_mode(grid, A, [one, one, ("sin", 1)]) + separable_mode(grid, C, [one, ("cos", 1), one]),
        separable_mode(grid, B, [("sin", 1), one, one]) + separable_mode(grid, A, [one, one, ("cos", 1)]),
        separable_mode(grid, C, [one, ("sin", 1), one]) + separable_mode(grid, B, [("cos", 1), one, one]),
    ]
    return SpectralVectorField.from_arrays(grid, arrays, divfree=True)


def _embed_block(grid: Grid, block: np.ndarray, K: int) -> np.ndarray:
    out = np.zeros(grid.shape, dtype=np.complex128)
    axis = np.arange(-K, K + 1)
    index = [axis % n for n in grid.shape]
    out[np.ix_(*index)] = block
    return out


def init_random_divfree(
    grid: Grid,
    spectrum_slope: float = -5.0 / 3.0,
    seed: int = 0,
    amplitude: float = 1.0,
    k_lo: float = 1.0,
    k_hi: float = 6.0,
) -> SpectralVectorField:
    """Seeded divergence-free field with |v(k)| ~ |k|^slope on k_lo <= |k| <= k_hi.

    Draws are made on the fixed block [-K, K]^3, K = floor(k_hi), so the same
    seed yields the same lattice content on every grid that resolves it.
    """
    if k_hi < k_lo or k_lo < 1.0:
        raise FieldError(f"invalid shell [{k_lo}, {k_hi}]")
    K = int(math.floor(k_hi))
    if 3 * K >= min(grid.shape):
        raise GridError(f"shell radius {k_hi} exceeds the retained band of grid {grid.shape}")
    rng = np.random.default_rng(seed)
    size = (3, 2 * K + 1, 2 * K + 1, 2 * K + 1)
    draws = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    arrays = np.stack([_embed_block(grid, draws[i], K) for i in range(3)])
    arrays = 0.5 * (arrays + np.conj(np.stack([reflect(a) for a in arrays])))
    k_abs = grid.k_abs
    shell = (k_abs >= k_lo) & (k_abs <= k_hi)
    weight = np.where(shell, np.power(np.where(shell, k_abs, 1.0), spectrum_slope), 0.0)
    arrays = arrays * weight
    projected = leray_project(SpectralVectorField.from_arrays(grid, arrays, check=False))
    rms = math.sqrt(float(np.sum(np.abs(projected.stacked) ** 2)))
    if rms == 0.0:
        raise FieldError("random shell is empty on this grid")
    scaled = projected.stacked * (amplitude / rms)
    logger.debug("random divfree field: seed=%s slope=%s shell=[%s, %s]", seed, spectrum_slope, k_lo, k_hi)
    return SpectralVectorField.from_arrays(grid, scaled, divfree=True)


def lift_vertical(g: SpectralScalarField) -> SpectralVectorField:
    """Divergence-free v with v3 = g: v^h = -grad_h d3 inv(Laplacian_h) g.

    Modes of g with xi_h = 0 and k3 != 0 cannot be lifted and are dropped.
    """
    grid = g.grid
    kh_sq = grid.kh_sq
    liftable = kh_sq > 0.0
    safe = np.where(liftable, kh_sq, 1.0)
    c3 = np.where(liftable, g.coeffs, 0.0)
    c1 = -grid.k1 * grid.k3 * c3 / safe
    c2 = -grid.k2 * grid.k3 * c3 / safe
    return SpectralVectorField.from_arrays(grid, [c1, c2, c3], divfree=True)


SELF_SIMILAR_WIDTH = 0.75


def self_similar_profile(
    grid: Grid, scale: float, amplitude: float = 1.0, width: float = SELF_SIMILAR_WIDTH
) -> SpectralScalarField:
    """Lattice samples of scale^-2 G(k/scale), G(eta) = A |eta_h|^2 exp(-|eta|^2 / (2 width^2))."""
    coeffs = amplitude * scale**-2 * (grid.kh_sq / scale**2) * np.exp(-grid.k_sq / (2.0 * scale**2 * width**2))
    return SpectralScalarField(grid, coeffs.astype(np.complex128))


def self_similar_field(
    grid: Grid,
    t_star: float,
    t: float,
    amplitude: float = 1.0,
    width: float = SELF_SIMILAR_WIDTH,
) -> SpectralVectorField:
    """v(t, x) = L V(L x) with L = (t_star - t)^{-1/2}, sampled on the lattice."""
    if t >= t_star:
        raise FieldError(f"self-similar family needs t < t_star. Got: t={t}, t_star={t_star}")
    scale = (t_star - t) ** -0.5
    return lift_vertical(self_similar_profile(grid, scale, amplitude, width))
