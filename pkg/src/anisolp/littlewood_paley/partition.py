"""Smooth dyadic partition of unity on the horizontal frequency radius."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

import numpy as np


CHI_PLATEAU = 0.75
CHI_SUPPORT = 4.0 / 3.0
PHI_SUPPORT = (0.75, 8.0 / 3.0)


def _smooth_step(x: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.asarray(x, dtype=np.float64)
    inside = (x > 0.0) & (x < 1.0)
    safe = np.where(inside, x, 0.5)
    with np.errstate(over="ignore", under="ignore"):
        left = np.exp(-1.0 / safe)
        right = np.exp(-1.0 / (1.0 - safe))
    ramp = left / (left + right)
    return np.where(x >= 1.0, 1.0, np.where(inside, ramp, 0.0))


@dataclass(frozen=True)
class DyadicPartition:
    """Profiles chi and phi = chi(./2) - chi with their support radii."""

    chi_plateau: float = CHI_PLATEAU
    chi_support: float = CHI_SUPPORT
    phi_support: tuple[float, float] = PHI_SUPPORT

    def chi(self, tau: np.ndarray | float) -> np.ndarray:
        tau = np.abs(np.asarray(tau, dtype=np.float64))
        width = self.chi_support - self.chi_plateau
        return _smooth_step((self.chi_support - tau) / width)

    def phi(self, tau: np.ndarray | float) -> np.ndarray:
        tau = np.asarray(tau, dtype=np.float64)
        return self.chi(tau / 2.0) - self.chi(tau)

    def phi_k(self, tau: np.ndarray, k: int) -> np.ndarray:
        return self.phi(np.ldexp(np.asarray(tau, dtype=np.float64), -k))

    def chi_k(self, tau: np.ndarray, k: int) -> np.ndarray:
        return self.chi(np.ldexp(np.asarray(tau, dtype=np.float64), -k))

    def partition_defect(self, tau: np.ndarray, k_lo: int = -60, k_hi: int = 60) -> float:
        """Max of |sum_j phi(2^-j tau) - 1| over the samples (tau > 0)."""
        total = np.zeros_like(np.asarray(tau, dtype=np.float64))
        for j in range(k_lo, k_hi + 1):
            total = total + self.phi_k(tau, j)
        return float(np.max(np.abs(total - 1.0), initial=0.0))

    def inhomogeneous_defect(self, tau: np.ndarray, k_hi: int = 60) -> float:
        """Max of |chi(tau) + sum_{j>=0} phi(2^-j tau) - 1|."""
        total = self.chi(tau)
        for j in range(0, k_hi + 1):
            total = total + self.phi_k(tau, j)
        return float(np.max(np.abs(total - 1.0), initial=0.0))


@lru_cache(maxsize=1)
def make_partition() -> DyadicPartition:
    return DyadicPartition()


def export_partition_csv(path: Path, samples: Iterable[float] | None = None) -> Path:
    partition = make_partition()
    taus = np.linspace(0.0, 4.0, 401) if samples is None else np.asarray(list(samples))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["tau", "chi", "phi"])
        for tau, chi, phi in zip(taus, partition.chi(taus), partition.phi(taus)):
            writer.writerow([repr(float(tau)), repr(float(chi)), repr(float(phi))])
    return path
