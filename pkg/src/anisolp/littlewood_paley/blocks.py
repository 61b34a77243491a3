"""Horizontal blocks Delta_k^h, S_k^h and the sharp three-band split."""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from anisolp.errors import CutoffError
from anisolp.littlewood_paley.partition import DyadicPartition, make_partition
from anisolp.spectral.field import SpectralScalarField
from anisolp.spectral.grid import Grid


def band_range(grid: Grid, partition: DyadicPartition | None = None) -> range:
    """Every k for which phi(2^-k |xi_h|) can be nonzero at some lattice |xi_h| >= 1."""
    partition = partition or make_partition()
    lo_edge, hi_edge = partition.phi_support
    k_lo = math.floor(math.log2(1.0 / hi_edge)) + 1
    k_hi = math.ceil(math.log2(grid.kh_max / lo_edge))
    return range(k_lo, k_hi + 1)


def delta_h(
    a: SpectralScalarField, k: int, partition: DyadicPartition | None = None
) -> SpectralScalarField:
    partition = partition or make_partition()
    weight = partition.phi_k(a.grid.kh, k)
    return a.replace(weight * a.coeffs, 0.0)


def s_h(
    a: SpectralScalarField, k: int, partition: DyadicPartition | None = None
) -> SpectralScalarField:
    """Low-pass chi(2^-k |xi_h|); keeps the horizontal mean and the recorded mean."""
    partition = partition or make_partition()
    weight = partition.chi_k(a.grid.kh, k)
    return a.replace(weight * a.coeffs)


def horizontal_mean_part(a: SpectralScalarField) -> SpectralScalarField:
    """Modes with xi_h = 0, i.e. the x3-profile of the horizontal average."""
    return a.replace(np.where(a.grid.kh_sq == 0.0, a.coeffs, 0.0))


def dyadic_blocks(
    a: SpectralScalarField, partition: DyadicPartition | None = None
) -> dict[int, SpectralScalarField]:
    partition = partition or make_partition()
    return {k: delta_h(a, k, partition) for k in band_range(a.grid, partition)}


def reconstruct(a: SpectralScalarField, partition: DyadicPartition | None = None) -> SpectralScalarField:
    """Sum of all horizontal blocks plus the horizontal-mean part."""
    total = horizontal_mean_part(a)
    for block in dyadic_blocks(a, partition).values():
        total = total + block
    return total


@dataclass(frozen=True, eq=False)
class BandTriple:
    flat: SpectralScalarField
    natural: SpectralScalarField
    sharp: SpectralScalarField
    lam: float
    Lam: float

    def __post_init__(self) -> None:
        if self.lam > self.Lam:
            raise CutoffError(f"lambda={self.lam} exceeds Lambda={self.Lam}")

    def reconstruct(self) -> SpectralScalarField:
        return self.flat + self.natural + self.sharp

    def parts(self) -> dict[str, SpectralScalarField]:
        return {"flat": self.flat, "natural": self.natural, "sharp": self.sharp}


def band_masks(grid: Grid, lam: float, Lam: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    kh = grid.kh
    flat = kh < lam
    sharp = kh >= Lam
    natural = ~(flat | sharp)
    return flat, natural, sharp


def band_split(a: SpectralScalarField, lam: float, Lam: float) -> BandTriple:
    """Indicator split on |xi_h|: below lam, in [lam, Lam), at or above Lam."""
    lam = float(lam)
    Lam = float(Lam)
    if not lam > 0.0 or not Lam > 0.0:
        raise CutoffError(f"cutoffs must be positive. Got: lambda={lam}, Lambda={Lam}")
    if lam > Lam:
        raise CutoffError(f"lambda={lam} exceeds Lambda={Lam}")
    flat, natural, sharp = band_masks(a.grid, lam, Lam)
    # The recorded mean sits at xi_h = 0 and therefore belongs to the flat band.
    return BandTriple(
        flat=a.replace(np.where(flat, a.coeffs, 0.0)),
        natural=a.replace(np.where(natural, a.coeffs, 0.0), 0.0),
        sharp=a.replace(np.where(sharp, a.coeffs, 0.0), 0.0),
        lam=lam,
        Lam=Lam,
    )
