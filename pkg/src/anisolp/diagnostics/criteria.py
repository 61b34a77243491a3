"""Criterion functionals and lower-bound monitors over recorded trajectories.

Every monitor reads a sequence of DiagnosticsRecord in increasing time.
Blow-up times are hypotheses supplied by the caller; the monitors report
implied constants, never verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
import math
from typing import Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from anisolp.diagnostics.record import DiagnosticsRecord
from anisolp.errors import CriterionError


logger = logging.getLogger(__name__)


def running_max(values: Sequence[float] | np.ndarray, *, backward: bool = False) -> np.ndarray:
    """Running maximum from the left, or from the right when ``backward``."""
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0:
        return array
    if backward:
        return np.maximum.accumulate(array[::-1])[::-1]
    return np.maximum.accumulate(array)


def cumulative_integral(values: Sequence[float] | np.ndarray, times: Sequence[float] | np.ndarray) -> np.ndarray:
    """Trapezoidal running integral, starting at 0 on the first sample."""
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0:
        return array
    return cumulative_trapezoid(array, np.asarray(times, dtype=np.float64), initial=0.0)


def _times(records: Sequence[DiagnosticsRecord]) -> np.ndarray:
    return np.array([r.t for r in records], dtype=np.float64)


def _series(records: Sequence[DiagnosticsRecord], name: str, param: float) -> np.ndarray:
    try:
        return np.array([getattr(r, name)[float(param)] for r in records], dtype=np.float64)
    except KeyError as exc:
        raise CriterionError(f"records do not carry {name} for parameter {param:g}") from exc


def criterion_p_series(records: Sequence[DiagnosticsRecord], p: float) -> np.ndarray:
    """Running integral of ||v^3||^p in H^{1/2 + 2/p} at every record."""
    if p < 2:
        raise CriterionError(f"p must be >= 2. Got: {p}")
    integrand = _series(records, "v3_hp", p) ** p
    return cumulative_integral(integrand, _times(records))


def criterion_p_integral(records: Sequence[DiagnosticsRecord], p: float) -> float:
    series = criterion_p_series(records, p)
    return float(series[-1]) if series.size else 0.0


def _check_horizon(records: Sequence[DiagnosticsRecord], t_star: float) -> np.ndarray:
    times = _times(records)
    if times.size and float(np.max(times)) >= t_star:
        raise CriterionError(
            f"presumed blow-up time {t_star} must exceed every record time (last {times.max()})"
        )
    return t_star - times


@dataclass(frozen=True)
class LowerBoundSample:
    t: float
    grad_l2: float
    hs_norm: float
    besov_norm: float | None
    implied_grad: float
    implied_hs: float
    implied_besov: float | None


def leray_lower_bounds(
    records: Sequence[DiagnosticsRecord], t_star: float, gamma: float
) -> list[LowerBoundSample]:
    """Implied constants of the classical blow-up lower bounds.

    For a presumed blow-up time ``t_star`` these are (T*-t)^{1/4}||grad v||,
    (T*-t)^gamma ||v||_{H^{1/2+2 gamma}} and, when heat norms were recorded,
    (T*-t)^gamma times the heat-flow Besov norm.
    """
    if not 0.0 < gamma < 0.5:
        raise CriterionError(f"gamma must lie in (0, 1/2). Got: {gamma}")
    remaining = _check_horizon(records, t_star)
    hs = _series(records, "v_hs", gamma)
    out = []
    for record, tau, hs_value in zip(records, remaining, hs):
        grad = math.sqrt(record.diss)
        besov = record.v_besov.get(float(gamma))
        out.append(
            LowerBoundSample(
                t=record.t,
                grad_l2=grad,
                hs_norm=float(hs_value),
                besov_norm=besov,
                implied_grad=tau**0.25 * grad,
                implied_hs=tau**gamma * float(hs_value),
                implied_besov=None if besov is None else tau**gamma * besov,
            )
        )
    return out


@dataclass(frozen=True)
class OneComponentSample:
    t: float
    future_sup: float
    log_factor: float
    implied_c0: float


def one_component_lower_bound(
    records: Sequence[DiagnosticsRecord], t_star: float
) -> list[OneComponentSample]:
    """M(t) = sup over later records of ||v^3||_{H^{1/2}}, and M(t) log^{1/2}(e + ||v||^4/(T*-t)).

    Sub-stride excursions between records are invisible to M.
    """
    remaining = _check_horizon(records, t_star)
    future = running_max([r.v3_h12 for r in records], backward=True)
    out = []
    for record, tau, sup in zip(records, remaining, future):
        l2_fourth = (2.0 * record.energy) ** 2
        log_factor = math.sqrt(math.log(math.e + l2_fourth / tau))
        out.append(OneComponentSample(record.t, float(sup), log_factor, float(sup) * log_factor))
    return out


@dataclass(frozen=True)
class LogNormSeries:
    E: float
    values: np.ndarray
    running_max: np.ndarray


def log_norm_monitor(
    records: Sequence[DiagnosticsRecord], E_values: Sequence[float] | None = None
) -> dict[float, LogNormSeries]:
    if E_values is None:
        E_values = sorted(records[0].v3_log) if records else []
    out = {}
    for E in E_values:
        values = _series(records, "v3_log", E)
        out[float(E)] = LogNormSeries(float(E), values, running_max(values))
    return out


def forward_sup(records: Sequence[DiagnosticsRecord]) -> np.ndarray:
    """m(T) = sup over records up to T of ||v^3||_{H^{1/2}}."""
    return running_max([r.v3_h12 for r in records])


@dataclass(frozen=True)
class Smallness:
    window_end: int
    t_window: float
    m: float
    E: float | None
    value: float


def smallness_functional(records: Sequence[DiagnosticsRecord]) -> Smallness:
    """m(T) sqrt(log(e + ||v0|| ||grad_h v0||)) on the window where ||grad_h v||^2 <= 2||grad_h v0||^2.

    The window ends at the last record before the first one exceeding the
    doubling threshold; E is the scale ||v0|| / ||grad_h v0||.
    """
    if not records:
        raise CriterionError("smallness_functional needs at least one record")
    first = records[0]
    threshold = 2.0 * first.gh_l2
    end = len(records) - 1
    for index, record in enumerate(records):
        if record.gh_l2 > threshold:
            end = max(index - 1, 0)
            break
    m = float(forward_sup(records)[end])
    l2 = math.sqrt(2.0 * first.energy)
    grad_h = math.sqrt(first.gh_l2)
    E = l2 / grad_h if grad_h > 0 else None
    value = m * math.sqrt(math.log(math.e + l2 * grad_h))
    logger.debug("smallness window ends at t=%.6g, m=%.6e", records[end].t, m)
    return Smallness(end, records[end].t, m, E, value)
