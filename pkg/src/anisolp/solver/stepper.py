"""Integrating-factor RK2 (Lawson midpoint) for the projected Navier-Stokes system."""

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np

from anisolp.errors import BlowupSuspected
from anisolp.spectral.field import SpectralVectorField
from anisolp.spectral.grid import BOX_VOLUME
from anisolp.spectral.ops import advection_divergence


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SolverState:
    t: float
    v: SpectralVectorField
    cumulative_dissipation: float = 0.0
    steps: int = 0

    @property
    def dissipation_rate(self) -> float:
        return dissipation_rate(self.v)


def dissipation_rate(v: SpectralVectorField) -> float:
    """||grad v||^2 in L^2."""
    return BOX_VOLUME * float(np.sum(v.grid.k_sq * np.abs(v.stacked) ** 2))


def nonlinear_term(v: SpectralVectorField, *, dealias: bool = True) -> SpectralVectorField:
    """-P div(v (x) v) from six dealiased products."""
    grid = v.grid
    ks = (grid.k1, grid.k2, grid.k3)
    div = advection_divergence(v, dealias=dealias)
    k_dot = (grid.k1 * div[0] + grid.k2 * div[1] + grid.k3 * div[2]) / grid.k_sq_safe
    projected = -np.stack([div[i] - ks[i] * k_dot for i in range(3)])
    return SpectralVectorField.from_arrays(grid, projected, divfree=True, check=False)


def _heat_factor(v: SpectralVectorField, t: float) -> np.ndarray:
    return np.exp(-t * v.grid.k_sq)


def step(
    state: SolverState,
    dt: float,
    *,
    dealias: bool = True,
    quadrature: str = "simpson",
    growth_limit: float | None = None,
    reference_rate: float | None = None,
) -> SolverState:
    """Advance one step; Stokes part exact, nonlinear part by explicit midpoint.

    Dissipation is integrated with Simpson's rule through the midpoint stage,
    or with the trapezoidal rule when ``quadrature`` is ``"trapezoid"``.
    """
    v = state.v
    half = _heat_factor(v, 0.5 * dt)
    full = half * half
    u0 = v.stacked
    k1 = nonlinear_term(v, dealias=dealias).stacked
    u_half = half * (u0 + 0.5 * dt * k1)
    v_half = v.with_arrays(u_half, divfree=True)
    k2 = nonlinear_term(v_half, dealias=dealias).stacked
    u_next = full * u0 + dt * half * k2
    if not np.all(np.isfinite(u_next)):
        raise BlowupSuspected(f"non-finite coefficients at t={state.t + dt:.6g}", last_state=state)
    v_next = v.with_arrays(u_next, divfree=True)
    rate0 = dissipation_rate(v)
    rate1 = dissipation_rate(v_next)
    if quadrature == "trapezoid":
        increment = 0.5 * dt * (rate0 + rate1)
    else:
        increment = dt / 6.0 * (rate0 + 4.0 * dissipation_rate(v_half) + rate1)
    if growth_limit is not None and reference_rate:
        if rate1 > growth_limit * reference_rate:
            raise BlowupSuspected(
                f"||grad v||^2 grew by {rate1 / reference_rate:.3e} at t={state.t + dt:.6g}",
                last_state=state,
            )
    return SolverState(
        t=state.t + dt,
        v=v_next,
        cumulative_dissipation=state.cumulative_dissipation + increment,
        steps=state.steps + 1,
    )
