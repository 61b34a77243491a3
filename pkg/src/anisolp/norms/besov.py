"""Horizontal Besov norms built from the dyadic blocks."""

from __future__ import annotations

import math
from typing import Literal, Sequence

import numpy as np

from anisolp.errors import NormSpecError
from anisolp.littlewood_paley.blocks import band_range, delta_h
from anisolp.littlewood_paley.partition import DyadicPartition, make_partition
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField
from anisolp.spectral.grid import BOX_PERIOD, SLICE_AREA, Grid
from anisolp.spectral.ops import horizontal_slices, to_physical


Index = float | Literal["inf"]
SUPPORTED_P = (2, "inf")
SUPPORTED_Q = (1, 2, "inf")

AnyField = SpectralScalarField | SpectralVectorField


def _as_exponent(value: Index) -> float:
    if value == "inf":
        return math.inf
    return float(value)


def _check_index(value: Index, allowed: Sequence[Index], label: str) -> float:
    exponent = _as_exponent(value)
    if exponent not in {_as_exponent(item) for item in allowed}:
        raise NormSpecError(f"{label}={value} is not supported. Allowed: {list(allowed)}")
    return exponent


def _components(a: AnyField) -> Sequence[SpectralScalarField]:
    if isinstance(a, SpectralVectorField):
        return a.components
    return (a,)


def slice_lp_norms(a: AnyField, p: Index) -> np.ndarray:
    """L^p_h norm of every x3 slice; vectors use the pointwise Euclidean magnitude."""
    exponent = _check_index(p, SUPPORTED_P, "p")
    comps = _components(a)
    if exponent == 2.0:
        total = sum(np.sum(np.abs(horizontal_slices(c)) ** 2, axis=(0, 1)) for c in comps)
        return np.sqrt(SLICE_AREA * np.asarray(total))
    magnitude = np.sqrt(sum(to_physical(c) ** 2 for c in comps))
    return np.max(magnitude, axis=(0, 1))


def lq_sum(values: np.ndarray, q: float) -> np.ndarray:
    """l^q over the leading axis."""
    if math.isinf(q):
        return np.max(np.abs(values), axis=0, initial=0.0)
    return np.sum(np.abs(values) ** q, axis=0) ** (1.0 / q)


def vertical_norm(profile: np.ndarray, vertical: Index) -> float:
    """L^2 or L^inf over x3 of a per-slice profile."""
    exponent = _check_index(vertical, SUPPORTED_P, "vertical")
    if math.isinf(exponent):
        return float(np.max(profile, initial=0.0))
    dx3 = BOX_PERIOD / profile.shape[0]
    return math.sqrt(float(np.sum(profile**2)) * dx3)


def besov_h_slice_norms(
    a: AnyField,
    s: float,
    p: Index = 2,
    q: Index = 2,
    partition: DyadicPartition | None = None,
) -> np.ndarray:
    """Per-slice l^q_k(2^{ks} ||Delta_k^h a||_{L^p_h}), shape (n3,)."""
    _check_index(p, SUPPORTED_P, "p")
    q_exp = _check_index(q, SUPPORTED_Q, "q")
    partition = partition or make_partition()
    rows = []
    for k in band_range(a.grid, partition):
        if isinstance(a, SpectralVectorField):
            block: AnyField = SpectralVectorField(
                tuple(delta_h(c, k, partition) for c in a), check=False  # type: ignore[arg-type]
            )
        else:
            block = delta_h(a, k, partition)
        rows.append(2.0 ** (k * s) * slice_lp_norms(block, p))
    if not rows:
        return np.zeros(a.grid.n3)
    return lq_sum(np.stack(rows), q_exp)


def besov_h_norm(
    a: AnyField,
    s: float,
    p: Index = 2,
    q: Index = 2,
    vertical: Index = 2,
    partition: DyadicPartition | None = None,
) -> float:
    """L^vertical_v of the per-slice horizontal Besov norm (B^s_{p,q})_h."""
    return vertical_norm(besov_h_slice_norms(a, s, p, q, partition), vertical)


def dyadic_multiplier(tau: np.ndarray, s: float, partition: DyadicPartition | None = None) -> np.ndarray:
    """sum_k 2^{2ks} phi(2^-k tau)^2 / tau^{2s} for tau >= 1."""
    partition = partition or make_partition()
    tau = np.asarray(tau, dtype=np.float64)
    k_hi = int(math.ceil(math.log2(float(np.max(tau)) / partition.phi_support[0]))) + 1
    total = np.zeros_like(tau)
    for k in range(-1, k_hi + 1):
        total += 2.0 ** (2 * k * s) * partition.phi_k(tau, k) ** 2
    return total / tau ** (2 * s)


def norm_equivalence_bounds(
    grid: Grid, s: float, partition: DyadicPartition | None = None
) -> tuple[float, float]:
    """Exact range of ||a||_dyadic / ||a||_{H^s_h} over all fields on the grid."""
    radii = np.unique(grid.kh[~grid.nyquist_mask])
    radii = radii[radii > 0.0]
    ratio_sq = dyadic_multiplier(radii, s, partition)
    return math.sqrt(float(np.min(ratio_sq))), math.sqrt(float(np.max(ratio_sq)))
