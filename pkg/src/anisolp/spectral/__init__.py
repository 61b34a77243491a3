"""Discrete Fourier representation of real fields on the 2π-periodic box."""

from anisolp.spectral.grid import Grid
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField

__all__ = ["Grid", "SpectralScalarField", "SpectralVectorField"]
