"""Energy law, the horizontal-gradient balance and its trilinear terms."""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import TYPE_CHECKING, Sequence
import warnings

import numpy as np

from anisolp.errors import CriterionError
from anisolp.spectral.field import DIVFREE_RTOL, SpectralVectorField
from anisolp.spectral.grid import BOX_VOLUME
from anisolp.spectral.ops import (
    advection_divergence,
    derivative,
    horizontal_divergence,
    to_physical,
    truncate,
)

if TYPE_CHECKING:
    from anisolp.diagnostics.record import DiagnosticsRecord


logger = logging.getLogger(__name__)

HORIZONTAL = (0, 1)


class GradientSamples:
    """Physical samples of the band-truncated first derivatives d_i v^m.

    ``integral(a, b, c)`` is the exact box integral of the product of three
    such derivatives, each given as an (axis, component) pair, 0-based.
    """

    def __init__(self, v: SpectralVectorField) -> None:
        self.grid = v.grid
        self._samples: dict[tuple[int, int], np.ndarray] = {}
        for m in range(3):
            comp = truncate(v[m])
            for i in range(3):
                self._samples[(i, m)] = to_physical(derivative(comp, i + 1))

    def __getitem__(self, key: tuple[int, int]) -> np.ndarray:
        return self._samples[key]

    def integral(self, *keys: tuple[int, int]) -> float:
        product = self._samples[keys[0]]
        for key in keys[1:]:
            product = product * self._samples[key]
        return BOX_VOLUME * float(np.mean(product))


@dataclass(frozen=True)
class BalanceTerms:
    e1: float
    e2: float
    e3: float
    e4: float

    @property
    def total(self) -> float:
        return self.e1 + self.e2 + self.e3 + self.e4

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.e1, self.e2, self.e3, self.e4)


def grad_h_norms(v: SpectralVectorField) -> tuple[float, float]:
    """(||grad_h v||^2_{L^2}, ||grad_h v||^2_{H^1})."""
    grid = v.grid
    power = np.sum(np.abs(v.stacked) ** 2, axis=0)
    weighted = grid.kh_sq * power
    return BOX_VOLUME * float(np.sum(weighted)), BOX_VOLUME * float(np.sum(grid.k_sq * weighted))


def energy(v: SpectralVectorField) -> float:
    """Half the squared L^2 norm, recorded means included."""
    coeff_part = float(np.sum(np.abs(v.stacked) ** 2))
    mean_part = sum(m * m for m in v.means)
    return 0.5 * BOX_VOLUME * (coeff_part + mean_part)


def grad_h_balance_terms(
    v: SpectralVectorField, samples: GradientSamples | None = None
) -> BalanceTerms:
    """The four trilinear sums of the horizontal-gradient balance.

    With i running over horizontal directions, each term is
    -sum int d_i v^j d_j v^m d_i v^m, split by whether j and m are horizontal
    or vertical.
    """
    g = samples if samples is not None else GradientSamples(v)
    e1 = e2 = e3 = e4 = 0.0
    for i in HORIZONTAL:
        for j in HORIZONTAL:
            for m in HORIZONTAL:
                e1 -= g.integral((i, j), (j, m), (i, m))
            e2 -= g.integral((i, j), (j, 2), (i, 2))
        for m in HORIZONTAL:
            e3 -= g.integral((i, 2), (2, m), (i, m))
        e4 -= g.integral((i, 2), (2, 2), (i, 2))
    return BalanceTerms(e1, e2, e3, e4)


def advection_oracle(v: SpectralVectorField, *, dealias: bool = True) -> float:
    """-(div(v (x) v) | -Laplacian_h v), evaluated in Fourier space."""
    div = advection_divergence(v, dealias=dealias)
    lap_h = -v.grid.kh_sq * v.stacked
    return BOX_VOLUME * float(np.sum((div * np.conj(lap_h)).real))


def e1_rewritten(v: SpectralVectorField, samples: GradientSamples | None = None) -> float:
    """int d_3 v^3 (sum (d_i v^j)^2 + d_1 v^2 d_2 v^1 - d_1 v^1 d_2 v^2)."""
    g = samples if samples is not None else GradientSamples(v)
    bracket = sum(g[(i, j)] ** 2 for i in HORIZONTAL for j in HORIZONTAL)
    bracket = bracket + g[(0, 1)] * g[(1, 0)] - g[(0, 0)] * g[(1, 1)]
    return BOX_VOLUME * float(np.mean(g[(2, 2)] * bracket))


@dataclass(frozen=True)
class E1Identity:
    direct: float
    rewritten: float
    scale: float

    @property
    def residual(self) -> float:
        return abs(self.direct - self.rewritten)

    @property
    def relative(self) -> float:
        return self.residual / self.scale if self.scale > 0 else 0.0


def e1_identity(v: SpectralVectorField) -> E1Identity:
    g = GradientSamples(v)
    direct = grad_h_balance_terms(v, g).e1
    rewritten = e1_rewritten(v, g)
    # every summand of both sides is bounded by this integral
    scale = BOX_VOLUME * float(
        np.mean(np.abs(g[(2, 2)]) * sum(g[(i, j)] ** 2 for i in range(3) for j in range(3)))
    )
    return E1Identity(direct, rewritten, scale)


def e1_identity_residual(v: SpectralVectorField) -> float:
    return e1_identity(v).residual


@dataclass(frozen=True)
class DivfreeIdentity:
    lhs: float
    rhs: float
    grad_w3: float
    grad_h_w: float
    divfree: bool

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def bound_holds(self) -> bool:
        return self.grad_w3 <= 2.0 * self.grad_h_w * (1.0 + 1e-12) + 1e-300


def divfree_identity(w: SpectralVectorField) -> DivfreeIdentity:
    """||d_3 w^3||^2 against ||div_h w^h||^2, and ||grad w^3||^2 against 2||grad_h w||^2."""
    grid = w.grid
    scale = w.amplitude() * grid.k_max
    divfree = w.divergence_defect() <= DIVFREE_RTOL * max(scale, 1e-300)
    if not divfree:
        warnings.warn(
            f"divfree_identity: input is not divergence-free (defect {w.divergence_defect():.3e})",
            stacklevel=2,
        )
    w3 = w.stacked[2]
    lhs = BOX_VOLUME * float(np.sum(grid.k3**2 * np.abs(w3) ** 2))
    div_h = horizontal_divergence(w).coeffs
    rhs = BOX_VOLUME * float(np.sum(np.abs(div_h) ** 2))
    grad_w3 = BOX_VOLUME * float(np.sum(grid.k_sq * np.abs(w3) ** 2))
    grad_h_w, _ = grad_h_norms(w)
    return DivfreeIdentity(lhs, rhs, grad_w3, grad_h_w, divfree)


def energy_balance(first: "DiagnosticsRecord", record: "DiagnosticsRecord") -> float:
    """Energy at ``record`` plus dissipation since ``first`` minus energy at ``first``."""
    return record.energy + (record.diss_integral - first.diss_integral) - first.energy


def grad_h_balance_residuals(records: Sequence["DiagnosticsRecord"]) -> np.ndarray:
    """Centered residual of 1/2 d/dt ||grad_h v||^2 + ||grad_h v||^2_{H^1} - sum E_j.

    One entry per consecutive pair of records; time derivative by finite
    difference, the other terms averaged over the pair.
    """
    out = []
    for prev, cur in zip(records[:-1], records[1:]):
        if prev.e1 is None or cur.e1 is None:
            raise CriterionError("records carry no balance terms; enable diagnostics.balance_terms")
        dt = cur.t - prev.t
        if dt <= 0:
            raise CriterionError(f"records must advance in time: {prev.t} -> {cur.t}")
        rate = 0.5 * (cur.gh_l2 - prev.gh_l2) / dt
        dissipation = 0.5 * (cur.gh_h1 + prev.gh_h1)
        forcing = 0.5 * (cur.balance_total + prev.balance_total)
        out.append(rate + dissipation - forcing)
    logger.debug("grad_h balance residuals over %d pairs", len(out))
    return np.asarray(out, dtype=np.float64)
