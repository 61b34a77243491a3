import numpy as np

from anisolp.spectral.field import SpectralScalarField
from anisolp.spectral.grid import Grid


def cosine(grid: Grid, k: tuple[int, int, int], amplitude: float = 1.0) -> SpectralScalarField:
    """amplitude * cos(k.x)"""
    return SpectralScalarField.from_modes(grid, {k: 0.5 * amplitude})


def random_scalar(grid: Grid, seed: int = 0, k_max: int = 3) -> SpectralScalarField:
    rng = np.random.default_rng(seed)
    modes = {}
    for k1 in range(-k_max, k_max + 1):
        for k2 in range(-k_max, k_max + 1):
            for k3 in range(0, k_max + 1):
                if (k1, k2, k3) == (0, 0, 0):
                    continue
                modes[(k1, k2, k3)] = complex(rng.standard_normal(), rng.standard_normal())
    # from_modes adds the conjugate partner; keep one representative per pair
    seen = set()
    unique = {}
    for k, amp in modes.items():
        partner = (-k[0], -k[1], -k[2])
        if partner in seen:
            continue
        seen.add(k)
        unique[k] = amp
    return SpectralScalarField.from_modes(grid, unique)
