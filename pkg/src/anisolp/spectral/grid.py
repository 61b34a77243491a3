"""Uniform Fourier grid on the 2π-periodic box."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np
from scipy import fft as sfft

from anisolp.errors import GridError


BOX_PERIOD = 2.0 * math.pi
BOX_VOLUME = BOX_PERIOD**3
SLICE_AREA = BOX_PERIOD**2
MIN_MODES = 8


@dataclass(frozen=True)
class Grid:
    """Mode counts per axis; wavevectors are integer triples in FFT order."""

    n1: int
    n2: int
    n3: int

    def __post_init__(self) -> None:
        for label, value in (("n1", self.n1), ("n2", self.n2), ("n3", self.n3)):
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"Grid.{label} must be int")
            if value < MIN_MODES or value % 2:
                raise GridError(f"Grid.{label} must be even and >= {MIN_MODES}. Got: {value}")
            object.__setattr__(self, label, int(value))

    @classmethod
    def cube(cls, n: int) -> "Grid":
        return cls(n, n, n)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)

    @property
    def size(self) -> int:
        return self.n1 * self.n2 * self.n3

    def to_dict(self) -> dict[str, int]:
        return {"n1": self.n1, "n2": self.n2, "n3": self.n3}

    @staticmethod
    def from_dict(data: dict[str, object]) -> "Grid":
        try:
            return Grid(data["n1"], data["n2"], data["n3"])  # type: ignore[arg-type]
        except KeyError as exc:
            raise GridError(f"Grid is missing {exc.args[0]}") from exc

    def require_same(self, other: "Grid") -> None:
        if self != other:
            raise GridError(f"Grid mismatch: {self.shape} vs {other.shape}")

    # Integer wavenumbers broadcast along their own axis.

    @cached_property
    def k1(self) -> np.ndarray:
        return sfft.fftfreq(self.n1, 1.0 / self.n1).reshape(-1, 1, 1)

    @cached_property
    def k2(self) -> np.ndarray:
        return sfft.fftfreq(self.n2, 1.0 / self.n2).reshape(1, -1, 1)

    @cached_property
    def k3(self) -> np.ndarray:
        return sfft.fftfreq(self.n3, 1.0 / self.n3).reshape(1, 1, -1)

    def k_axis(self, axis: int) -> np.ndarray:
        if axis == 1:
            return self.k1
        if axis == 2:
            return self.k2
        if axis == 3:
            return self.k3
        raise GridError(f"axis must be 1, 2 or 3. Got: {axis}")

    @cached_property
    def kh_sq(self) -> np.ndarray:
        return np.broadcast_to(self.k1**2 + self.k2**2 + 0.0 * self.k3, self.shape)

    @cached_property
    def kh(self) -> np.ndarray:
        return np.sqrt(self.kh_sq)

    @cached_property
    def k_sq(self) -> np.ndarray:
        return self.kh_sq + self.k3**2

    @cached_property
    def k_abs(self) -> np.ndarray:
        return np.sqrt(self.k_sq)

    @cached_property
    def k_sq_safe(self) -> np.ndarray:
        safe = self.k_sq.copy()
        safe[0, 0, 0] = 1.0
        return safe

    @cached_property
    def nyquist_mask(self) -> np.ndarray:
        """True on the planes |k_i| = n_i/2, which are always kept at zero."""
        mask = (
            (np.abs(self.k1) == self.n1 // 2)
            | (np.abs(self.k2) == self.n2 // 2)
            | (np.abs(self.k3) == self.n3 // 2)
        )
        return np.broadcast_to(mask, self.shape)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        """Retained band 3|k_i| < n_i on every axis."""
        mask = (
            (3 * np.abs(self.k1) < self.n1)
            & (3 * np.abs(self.k2) < self.n2)
            & (3 * np.abs(self.k3) < self.n3)
        )
        return np.broadcast_to(mask, self.shape)

    @cached_property
    def k_max(self) -> float:
        active = ~self.nyquist_mask
        return float(np.max(self.k_abs[active]))

    @cached_property
    def kh_max(self) -> float:
        active = ~self.nyquist_mask
        return float(np.max(self.kh[active]))

    def coordinates(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x1 = BOX_PERIOD * np.arange(self.n1).reshape(-1, 1, 1) / self.n1
        x2 = BOX_PERIOD * np.arange(self.n2).reshape(1, -1, 1) / self.n2
        x3 = BOX_PERIOD * np.arange(self.n3).reshape(1, 1, -1) / self.n3
        return x1, x2, x3

    def index_of(self, k: tuple[int, int, int]) -> tuple[int, int, int]:
        """Array index of wavevector k in FFT order."""
        out = []
        for value, n in zip(k, self.shape):
            if abs(value) >= n // 2:
                raise GridError(f"Wavevector {k} is not resolved on grid {self.shape}")
            out.append(int(value) % n)
        return out[0], out[1], out[2]
