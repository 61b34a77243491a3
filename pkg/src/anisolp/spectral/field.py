"""Immutable spectral field carriers."""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from typing import Iterator

import numpy as np

from anisolp.errors import FieldError
from anisolp.spectral.grid import Grid


HERMITIAN_RTOL = 1e-12
MEAN_RTOL = 1e-12
DIVFREE_RTOL = 1e-12


def reflect(coeffs: np.ndarray) -> np.ndarray:
    """Array whose entry at k holds coeffs[-k]."""
    return np.roll(np.flip(coeffs, axis=(0, 1, 2)), 1, axis=(0, 1, 2))


def hermitian_defect(coeffs: np.ndarray) -> float:
    return float(np.max(np.abs(coeffs - np.conj(reflect(coeffs))), initial=0.0))


def _frozen_copy(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SpectralScalarField:
    """Fourier-series coefficients of a real field with its mean stored apart.

    ``coeffs[k]`` is the amplitude of exp(i k.x); ``coeffs[0,0,0]`` is always 0
    and the spatial mean lives in ``mean``. Nyquist planes are zeroed on entry.
    """

    grid: Grid
    coeffs: np.ndarray
    mean: float = 0.0
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        if not isinstance(self.grid, Grid):
            raise TypeError("SpectralScalarField.grid must be Grid")
        values = np.asarray(self.coeffs)
        if values.shape != self.grid.shape:
            raise FieldError(
                f"coefficient shape {values.shape} does not match grid {self.grid.shape}"
            )
        values = np.array(values, dtype=np.complex128, copy=True)
        values[self.grid.nyquist_mask] = 0.0
        if check:
            scale = float(np.max(np.abs(values), initial=0.0))
            if abs(values[0, 0, 0]) > MEAN_RTOL * max(scale, 1.0):
                raise FieldError("coefficient at k=0 must be zero; pass the mean separately")
            if hermitian_defect(values) > HERMITIAN_RTOL * max(scale, 1e-300):
                raise FieldError("coefficients are not Hermitian; field would not be real")
        values[0, 0, 0] = 0.0
        values.setflags(write=False)
        object.__setattr__(self, "coeffs", values)
        object.__setattr__(self, "mean", float(self.mean))

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralScalarField":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128), check=False)

    @classmethod
    def from_modes(
        cls, grid: Grid, modes: dict[tuple[int, int, int], complex]
    ) -> "SpectralScalarField":
        """Build from a {wavevector: amplitude} map; conjugate partners are filled in."""
        values = np.zeros(grid.shape, dtype=np.complex128)
        for k, amp in modes.items():
            idx = grid.index_of(k)
            partner = grid.index_of((-k[0], -k[1], -k[2]))
            if idx == partner:
                values[idx] += complex(amp).real
                continue
            values[idx] += amp
            values[partner] += np.conj(amp)
        return cls(grid, values)

    def replace(self, coeffs: np.ndarray, mean: float | None = None) -> "SpectralScalarField":
        """Same grid, new coefficients derived from a Hermitian-preserving operation."""
        return SpectralScalarField(
            self.grid, coeffs, self.mean if mean is None else mean, check=False
        )

    def amplitude(self) -> float:
        return float(np.max(np.abs(self.coeffs), initial=0.0))

    def is_zero(self) -> bool:
        return self.mean == 0.0 and not np.any(self.coeffs)

    def __add__(self, other: "SpectralScalarField") -> "SpectralScalarField":
        self.grid.require_same(other.grid)
        return self.replace(self.coeffs + other.coeffs, self.mean + other.mean)

    def __sub__(self, other: "SpectralScalarField") -> "SpectralScalarField":
        self.grid.require_same(other.grid)
        return self.replace(self.coeffs - other.coeffs, self.mean - other.mean)

    def __neg__(self) -> "SpectralScalarField":
        return self.replace(-self.coeffs, -self.mean)

    def __mul__(self, factor: float) -> "SpectralScalarField":
        if not np.isscalar(factor) or np.iscomplexobj(factor):
            return NotImplemented
        return self.replace(self.coeffs * float(factor), self.mean * float(factor))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SpectralVectorField:
    """Three scalar components on one grid; ``divfree`` is a checked certificate."""

    components: tuple[SpectralScalarField, SpectralScalarField, SpectralScalarField]
    divfree: bool = False
    check: InitVar[bool] = True
    _stacked: np.ndarray = field(init=False, repr=False)

    def __post_init__(self, check: bool) -> None:
        comps = tuple(self.components)
        if len(comps) != 3:
            raise FieldError(f"vector field needs 3 components. Got: {len(comps)}")
        for comp in comps:
            if not isinstance(comp, SpectralScalarField):
                raise TypeError("vector components must be SpectralScalarField")
            comps[0].grid.require_same(comp.grid)
        object.__setattr__(self, "components", comps)
        stacked = np.stack([comp.coeffs for comp in comps])
        stacked.setflags(write=False)
        object.__setattr__(self, "_stacked", stacked)
        if self.divfree and check:
            defect = self.divergence_defect()
            scale = float(np.max(np.abs(stacked), initial=0.0))
            if defect > DIVFREE_RTOL * scale:
                raise FieldError(
                    f"divergence-free certificate fails: max|k.v| = {defect:.3e}, "
                    f"amplitude {scale:.3e}"
                )

    @classmethod
    def from_arrays(
        cls,
        grid: Grid,
        arrays: np.ndarray | list[np.ndarray],
        *,
        divfree: bool = False,
        means: tuple[float, float, float] = (0.0, 0.0, 0.0),
        check: bool = True,
    ) -> "SpectralVectorField":
        comps = tuple(
            SpectralScalarField(grid, arr, mean, check=check)
            for arr, mean in zip(arrays, means)
        )
        return cls(comps, divfree=divfree, check=check)  # type: ignore[arg-type]

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralVectorField":
        zero = SpectralScalarField.zeros(grid)
        return cls((zero, zero, zero), divfree=True)

    @property
    def grid(self) -> Grid:
        return self.components[0].grid

    @property
    def stacked(self) -> np.ndarray:
        """Read-only (3, n1, n2, n3) coefficient array."""
        return self._stacked

    @property
    def means(self) -> tuple[float, float, float]:
        return tuple(comp.mean for comp in self.components)  # type: ignore[return-value]

    def __getitem__(self, index: int) -> SpectralScalarField:
        return self.components[index]

    def __iter__(self) -> Iterator[SpectralScalarField]:
        return iter(self.components)

    def divergence_defect(self) -> float:
        grid = self.grid
        div = grid.k1 * self._stacked[0] + grid.k2 * self._stacked[1] + grid.k3 * self._stacked[2]
        return float(np.max(np.abs(div), initial=0.0))

    def amplitude(self) -> float:
        return float(np.max(np.abs(self._stacked), initial=0.0))

    def with_arrays(self, arrays: np.ndarray, *, divfree: bool) -> "SpectralVectorField":
        return SpectralVectorField.from_arrays(
            self.grid, arrays, divfree=divfree, means=self.means, check=False
        )

    def __add__(self, other: "SpectralVectorField") -> "SpectralVectorField":
        comps = tuple(a + b for a, b in zip(self.components, other.components))
        return SpectralVectorField(comps, divfree=self.divfree and other.divfree, check=False)  # type: ignore[arg-type]

    def __sub__(self, other: "SpectralVectorField") -> "SpectralVectorField":
        comps = tuple(a - b for a, b in zip(self.components, other.components))
        return SpectralVectorField(comps, divfree=self.divfree and other.divfree, check=False)  # type: ignore[arg-type]

    def __mul__(self, factor: float) -> "SpectralVectorField":
        if not np.isscalar(factor) or np.iscomplexobj(factor):
            return NotImplemented
        comps = tuple(comp * factor for comp in self.components)
        return SpectralVectorField(comps, divfree=self.divfree, check=False)  # type: ignore[arg-type]

    __rmul__ = __mul__
