"""Lattice Sobolev norms, full and per horizontal slice, and the log-weighted norm."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from anisolp.errors import NormSpecError
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField
from anisolp.spectral.grid import BOX_VOLUME, SLICE_AREA, Grid
from anisolp.spectral.ops import horizontal_slices


E3 = (0.0, 0.0, 1.0)
UNIT_TOL = 1e-12

AnyField = SpectralScalarField | SpectralVectorField


def _components(a: AnyField) -> Sequence[SpectralScalarField]:
    if isinstance(a, SpectralVectorField):
        return a.components
    return (a,)


def sobolev_weight(grid: Grid, s: float) -> np.ndarray:
    """|k|^{2s} with the k = 0 entry set to zero."""
    weight = np.power(grid.k_sq_safe, float(s))
    weight[0, 0, 0] = 0.0
    return weight


def horizontal_weight(kh_sq: np.ndarray, s: float) -> np.ndarray:
    """|xi_h|^{2s}; xi_h = 0 counts only for s = 0."""
    positive = kh_sq > 0.0
    weight = np.power(np.where(positive, kh_sq, 1.0), float(s))
    return np.where(positive, weight, 1.0 if s == 0 else 0.0)


def weighted_sum(a: AnyField, weight: np.ndarray) -> float:
    """Box-volume-normalized sum of weight*|coeff|^2 over all components."""
    total = 0.0
    for comp in _components(a):
        total += float(np.sum(weight * (comp.coeffs.real**2 + comp.coeffs.imag**2)))
    return BOX_VOLUME * total


def hs_norm_3d(a: AnyField, s: float) -> float:
    return math.sqrt(weighted_sum(a, sobolev_weight(a.grid, s)))


def hs_h_norm(a: AnyField, s: float) -> float:
    """L^2_v(H^s_h) norm, the direct Fourier side of the dyadic equivalence."""
    return math.sqrt(weighted_sum(a, horizontal_weight(a.grid.kh_sq, s)))


def hs_slice_norms(a: AnyField, s: float) -> np.ndarray:
    """Horizontal H^s norm of every x3 slice, shape (n3,)."""
    grid = a.grid
    weight = horizontal_weight(grid.kh_sq[:, :, :1], s)
    total = np.zeros(grid.n3)
    for comp in _components(a):
        slices = horizontal_slices(comp)
        total += np.sum(weight * np.abs(slices) ** 2, axis=(0, 1))
    return np.sqrt(SLICE_AREA * total)


def hs_slice_norm(a: AnyField, s: float, index: int | None = None) -> float:
    """One slice's norm, or the sup over slices when ``index`` is None."""
    norms = hs_slice_norms(a, s)
    if index is None:
        return float(np.max(norms))
    return float(norms[index])


def check_sigma(sigma: Sequence[float]) -> np.ndarray:
    vector = np.asarray(sigma, dtype=np.float64)
    if vector.shape != (3,):
        raise NormSpecError(f"sigma must have 3 entries. Got: {vector.shape}")
    if abs(float(np.linalg.norm(vector)) - 1.0) > UNIT_TOL:
        raise NormSpecError(f"sigma must be a unit vector. Got: {tuple(vector)}")
    return vector


def transverse_modulus(grid: Grid, sigma: Sequence[float] = E3) -> np.ndarray:
    """|k - (k.sigma) sigma| on the lattice."""
    vector = check_sigma(sigma)
    if tuple(vector) == E3:
        return grid.kh
    along = grid.k1 * vector[0] + grid.k2 * vector[1] + grid.k3 * vector[2]
    return np.sqrt(np.clip(grid.k_sq - along**2, 0.0, None))


def log_weight(grid: Grid, E: float, sigma: Sequence[float] = E3) -> np.ndarray:
    """log(|k_sigma| E + e), exactly 1 where |k_sigma| E vanishes."""
    if E < 0:
        raise NormSpecError(f"E must be >= 0. Got: {E}")
    scaled = transverse_modulus(grid, sigma) * float(E)
    return np.where(scaled == 0.0, 1.0, np.log(scaled + math.e))


def log_weighted_norm(a: AnyField, E: float, sigma: Sequence[float] = E3) -> float:
    weight = sobolev_weight(a.grid, 0.5) * log_weight(a.grid, E, sigma)
    return math.sqrt(weighted_sum(a, weight))
