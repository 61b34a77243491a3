"""Anisotropic Littlewood-Paley toolkit and pseudo-spectral Navier-Stokes solver."""

from anisolp.spectral.grid import Grid
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField

__version__ = "0.1.0"

__all__ = ["Grid", "SpectralScalarField", "SpectralVectorField", "__version__"]
