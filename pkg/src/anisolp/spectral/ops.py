"""Transforms, derivatives, projection and dealiased products."""

from __future__ import annotations

import numpy as np
from scipy import fft as sfft

from anisolp.errors import FieldError, GridError
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField
from anisolp.spectral.grid import BOX_VOLUME, Grid


def to_physical(f: SpectralScalarField) -> np.ndarray:
    """Samples of f (including its recorded mean) on the uniform grid."""
    samples = sfft.ifftn(f.coeffs, norm="forward").real
    if f.mean:
        samples = samples + f.mean
    return samples


def from_physical(grid: Grid, samples: np.ndarray) -> SpectralScalarField:
    values = np.asarray(samples, dtype=np.float64)
    if values.shape != grid.shape:
        raise GridError(f"sample shape {values.shape} does not match grid {grid.shape}")
    coeffs = sfft.fftn(values, norm="forward")
    mean = float(coeffs[0, 0, 0].real)
    return SpectralScalarField(grid, coeffs, mean, check=False)


def vector_to_physical(v: SpectralVectorField) -> np.ndarray:
    return np.stack([to_physical(comp) for comp in v])


def vector_from_physical(grid: Grid, samples: np.ndarray) -> SpectralVectorField:
    comps = tuple(from_physical(grid, samples[i]) for i in range(3))
    return SpectralVectorField(comps)  # type: ignore[arg-type]


def derivative(f: SpectralScalarField, axis: int) -> SpectralScalarField:
    k = f.grid.k_axis(axis)
    return f.replace(1j * k * f.coeffs, 0.0)


def gradient(f: SpectralScalarField) -> SpectralVectorField:
    comps = tuple(derivative(f, axis) for axis in (1, 2, 3))
    return SpectralVectorField(comps, check=False)  # type: ignore[arg-type]


def laplacian(f: SpectralScalarField) -> SpectralScalarField:
    return f.replace(-f.grid.k_sq * f.coeffs, 0.0)


def horizontal_laplacian(f: SpectralScalarField) -> SpectralScalarField:
    return f.replace(-f.grid.kh_sq * f.coeffs, 0.0)


def divergence(v: SpectralVectorField) -> SpectralScalarField:
    grid = v.grid
    stacked = v.stacked
    div = 1j * (grid.k1 * stacked[0] + grid.k2 * stacked[1] + grid.k3 * stacked[2])
    return SpectralScalarField(grid, div, check=False)


def horizontal_divergence(v: SpectralVectorField) -> SpectralScalarField:
    grid = v.grid
    div = 1j * (grid.k1 * v.stacked[0] + grid.k2 * v.stacked[1])
    return SpectralScalarField(grid, div, check=False)


def curl(v: SpectralVectorField) -> SpectralVectorField:
    grid = v.grid
    a = v.stacked
    k1, k2, k3 = grid.k1, grid.k2, grid.k3
    out = 1j * np.stack(
        [
            k2 * a[2] - k3 * a[1],
            k3 * a[0] - k1 * a[2],
            k1 * a[1] - k2 * a[0],
        ]
    )
    return SpectralVectorField.from_arrays(grid, out, divfree=True, check=False)


def leray_project(v: SpectralVectorField) -> SpectralVectorField:
    """Orthogonal projection onto divergence-free fields; idempotent."""
    grid = v.grid
    a = v.stacked
    k1, k2, k3 = grid.k1, grid.k2, grid.k3
    k_dot = (k1 * a[0] + k2 * a[1] + k3 * a[2]) / grid.k_sq_safe
    out = np.stack([a[0] - k1 * k_dot, a[1] - k2 * k_dot, a[2] - k3 * k_dot])
    return SpectralVectorField.from_arrays(
        grid, out, divfree=True, means=v.means, check=False
    )


def truncate(f: SpectralScalarField) -> SpectralScalarField:
    """Zero every mode outside the retained band 3|k_i| < n_i."""
    return f.replace(np.where(f.grid.dealias_mask, f.coeffs, 0.0))


def is_band_limited(f: SpectralScalarField) -> bool:
    return not np.any(f.coeffs[~f.grid.dealias_mask])


def heat_flow(f: SpectralScalarField, t: float) -> SpectralScalarField:
    """Exact e^{tΔ} applied to f; the mean is invariant."""
    if t < 0:
        raise FieldError(f"heat flow time must be >= 0. Got: {t}")
    return f.replace(np.exp(-t * f.grid.k_sq) * f.coeffs)


def physical_product(
    f: SpectralScalarField, g: SpectralScalarField, *, dealias: bool = True
) -> np.ndarray:
    f.grid.require_same(g.grid)
    if dealias:
        f, g = truncate(f), truncate(g)
    return to_physical(f) * to_physical(g)


def project_samples(grid: Grid, samples: np.ndarray, *, dealias: bool = True) -> SpectralScalarField:
    """Transform physical samples back and apply the 2/3 rule to the result."""
    product = from_physical(grid, samples)
    if dealias:
        product = truncate(product)
    return product


def dealiased_product(
    f: SpectralScalarField, g: SpectralScalarField, *, dealias: bool = True
) -> SpectralScalarField:
    """Pointwise product, alias-free on the retained band; the mean goes to ``.mean``."""
    return project_samples(f.grid, physical_product(f, g, dealias=dealias), dealias=dealias)


def trilinear_integral(
    f: SpectralScalarField, g: SpectralScalarField, h: SpectralScalarField
) -> float:
    """Integral of f*g*h over the box from band-truncated inputs.

    Three retained-band factors have total wavenumber below n_i on each axis,
    so the grid mean of the product equals the continuous integral.
    """
    f.grid.require_same(g.grid)
    f.grid.require_same(h.grid)
    product = to_physical(truncate(f)) * to_physical(truncate(g)) * to_physical(truncate(h))
    return BOX_VOLUME * float(np.mean(product))


def inner(f: SpectralScalarField, g: SpectralScalarField) -> float:
    """L^2 inner product over the box, Parseval-exact."""
    f.grid.require_same(g.grid)
    coeff_part = float(np.sum((f.coeffs * np.conj(g.coeffs)).real))
    return BOX_VOLUME * (coeff_part + f.mean * g.mean)


def vector_inner(v: SpectralVectorField, w: SpectralVectorField) -> float:
    return sum(inner(a, b) for a, b in zip(v, w))


def l2_norm_sq(f: SpectralScalarField) -> float:
    return inner(f, f)


def vector_l2_norm_sq(v: SpectralVectorField) -> float:
    return vector_inner(v, v)


def padded_physical(f: SpectralScalarField, factor: int) -> np.ndarray:
    """Samples of f on a grid refined ``factor`` times per axis (zero padding)."""
    if factor == 1:
        return to_physical(f)
    grid = f.grid
    shape = tuple(factor * n for n in grid.shape)
    padded = np.zeros(shape, dtype=np.complex128)
    index = [
        (sfft.fftfreq(n, 1.0 / n).astype(np.int64) % m)
        for n, m in zip(grid.shape, shape)
    ]
    padded[np.ix_(*index)] = f.coeffs
    samples = sfft.ifftn(padded, norm="forward").real
    if f.mean:
        samples = samples + f.mean
    return samples


def horizontal_slices(f: SpectralScalarField) -> np.ndarray:
    """Horizontal coefficients per x3 sample, shape (n1, n2, n3); mean included at xi_h = 0."""
    slices = sfft.ifft(f.coeffs, axis=2, norm="forward")
    if f.mean:
        slices = slices.copy()
        slices[0, 0, :] += f.mean
    return slices


_SYMMETRIC_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


def advection_divergence(v: SpectralVectorField, *, dealias: bool = True) -> np.ndarray:
    """Coefficients of div(v (x) v), shape (3, n1, n2, n3), from six products."""
    grid = v.grid
    samples = [to_physical(truncate(c) if dealias else c) for c in v]
    tensor: dict[tuple[int, int], np.ndarray] = {}
    for i, j in _SYMMETRIC_PAIRS:
        product = project_samples(grid, samples[i] * samples[j], dealias=dealias).coeffs
        tensor[(i, j)] = tensor[(j, i)] = product
    ks = (grid.k1, grid.k2, grid.k3)
    return np.stack([sum(1j * ks[j] * tensor[(i, j)] for j in range(3)) for i in range(3)])
