"""Horizontal Bony decomposition ab = T_a b + T~_b a + a0 b0."""

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np

from anisolp.littlewood_paley.blocks import band_range, delta_h, horizontal_mean_part, s_h
from anisolp.littlewood_paley.partition import DyadicPartition, make_partition
from anisolp.spectral.field import SpectralScalarField
from anisolp.spectral.ops import (
    dealiased_product,
    inner,
    project_samples,
    to_physical,
    truncate,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BonySplit:
    """T_a b (low a times high b), T~_b a, and the horizontal-mean product a0 b0.

    The horizontal multipliers act on xi_h only, so every piece is computed
    slice by slice in x3. ``residual`` is the part no dyadic block resolves.
    """

    low_high: SpectralScalarField
    high_low: SpectralScalarField
    residual: SpectralScalarField

    def total(self) -> SpectralScalarField:
        return self.low_high + self.high_low + self.residual

    def residual_norm(self) -> float:
        return float(np.sqrt(max(inner(self.residual, self.residual), 0.0)))


def paraproduct_samples(
    a: SpectralScalarField,
    b: SpectralScalarField,
    *,
    low_shift: int,
    partition: DyadicPartition,
) -> np.ndarray:
    """Physical samples of sum_k S_{k+low_shift}^h a * Delta_k^h b."""
    total = np.zeros(a.grid.shape)
    for k in band_range(a.grid, partition):
        block = delta_h(b, k, partition)
        if block.is_zero():
            continue
        total += to_physical(s_h(a, k + low_shift, partition)) * to_physical(block)
    return total


def paraproduct(
    a: SpectralScalarField,
    b: SpectralScalarField,
    partition: DyadicPartition | None = None,
) -> SpectralScalarField:
    """T_a^h b = sum_k S_{k-1}^h a Delta_k^h b on the retained band."""
    partition = partition or make_partition()
    a, b = truncate(a), truncate(b)
    samples = paraproduct_samples(a, b, low_shift=-1, partition=partition)
    return project_samples(a.grid, samples)


def bony_split(
    a: SpectralScalarField,
    b: SpectralScalarField,
    partition: DyadicPartition | None = None,
) -> BonySplit:
    a.grid.require_same(b.grid)
    partition = partition or make_partition()
    a, b = truncate(a), truncate(b)
    low_high = paraproduct_samples(a, b, low_shift=-1, partition=partition)
    high_low = paraproduct_samples(b, a, low_shift=2, partition=partition)
    residual = dealiased_product(horizontal_mean_part(a), horizontal_mean_part(b))
    split = BonySplit(
        low_high=project_samples(a.grid, low_high),
        high_low=project_samples(a.grid, high_low),
        residual=residual,
    )
    logger.debug("bony split on %s: residual norm %.3e", a.grid.shape, split.residual_norm())
    return split
