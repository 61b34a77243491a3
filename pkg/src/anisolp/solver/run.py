"""Drive the stepper from a configuration and collect diagnostics records."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
import math
from pathlib import Path
from typing import Callable

import numpy as np

from anisolp.diagnostics.record import DiagnosticsRecord, make_record
from anisolp.errors import BlowupSuspected, ConfigError, FieldFormatError
from anisolp.protocol.field_v1 import read_field
from anisolp.solver.config import STABILITY_MARGIN, FieldFileData, SolverConfig
from anisolp.solver.initial import (
    init_abc,
    init_random_divfree,
    init_taylor_green,
    init_taylor_green_3d,
)
from anisolp.solver.stepper import SolverState, dissipation_rate, step
from anisolp.spectral.field import SpectralVectorField
from anisolp.spectral.grid import Grid
from anisolp.spectral.ops import is_band_limited


logger = logging.getLogger(__name__)

STATUS_COMPLETED = "completed"
STATUS_BLOWUP = "blowup_suspected"

RecordHook = Callable[[DiagnosticsRecord], None]
CheckpointHook = Callable[[SolverState], None]


@dataclass
class Trajectory:
    config: SolverConfig
    records: list[DiagnosticsRecord] = field(default_factory=list)
    status: str = STATUS_COMPLETED
    final_state: SolverState | None = None
    message: str = ""

    @property
    def completed(self) -> bool:
        return self.status == STATUS_COMPLETED


def _load_field_file(data: FieldFileData, grid: Grid, dt: float) -> SpectralVectorField:
    try:
        v = read_field(Path(data.path))
    except FieldFormatError as exc:
        raise ConfigError(str(exc), location="field initial_data.path") from exc
    if not isinstance(v, SpectralVectorField):
        raise ConfigError("initial field must have 3 components", location="field initial_data.path")
    if v.grid != grid:
        raise ConfigError(
            f"initial field grid {v.grid.shape} does not match config grid {grid.shape}",
            location="field initial_data.path",
        )
    if not v.divfree:
        raise ConfigError("initial field is not flagged divergence-free", location="field initial_data.path")
    if not all(is_band_limited(comp) for comp in v):
        raise ConfigError("initial field reaches beyond the retained band", location="field initial_data.path")
    present = np.any(v.stacked != 0, axis=0)
    if present.any():
        k_max = float(np.sqrt(np.max(grid.k_sq[present])))
        limit = STABILITY_MARGIN / k_max**2
        if dt > limit:
            raise ConfigError(
                f"dt={dt} exceeds stability bound {limit:.6g} (0.4/|k_max|^2)", location="field dt"
            )
    return v


def build_initial(config: SolverConfig) -> SpectralVectorField:
    grid = config.build_grid()
    data = config.initial_data
    if data.kind == "taylor_green":
        return init_taylor_green(grid, data.amplitude)
    if data.kind == "taylor_green_3d":
        return init_taylor_green_3d(grid, data.amplitude)
    if data.kind == "abc":
        return init_abc(grid, data.A, data.B, data.C)
    if data.kind == "random_divfree":
        return init_random_divfree(
            grid,
            spectrum_slope=data.spectrum_slope,
            seed=data.seed,
            amplitude=data.amplitude,
            k_lo=data.k_lo,
            k_hi=data.k_hi,
        )
    return _load_field_file(data, grid, config.dt)


def run(
    config: SolverConfig,
    *,
    initial: SpectralVectorField | None = None,
    on_record: RecordHook | None = None,
    on_checkpoint: CheckpointHook | None = None,
) -> Trajectory:
    """Integrate to ``config.t_end``, recording every ``output_stride`` steps.

    The first and last states are always recorded; the final step is
    shortened to land on t_end. A suspected blow-up ends the run early with
    the last valid state recorded.
    """
    v0 = initial if initial is not None else build_initial(config)
    diagnostics = config.diagnostics
    trajectory = Trajectory(config=config)

    def emit(state: SolverState) -> None:
        previous = trajectory.records[-1] if trajectory.records else None
        record = make_record(
            state.v,
            state.t,
            diss_integral=state.cumulative_dissipation,
            config=diagnostics,
            previous=previous,
        )
        trajectory.records.append(record)
        if on_record is not None:
            on_record(record)

    state = SolverState(t=0.0, v=v0)
    reference_rate = dissipation_rate(v0)
    total_steps = max(int(math.ceil(config.t_end / config.dt - 1e-9)), 0)
    logger.info(
        "run: grid %s, dt=%g, t_end=%g, %d steps, stride %d",
        v0.grid.shape, config.dt, config.t_end, total_steps, config.output_stride,
    )
    emit(state)
    for n in range(1, total_steps + 1):
        t_next = min(n * config.dt, config.t_end)
        try:
            state = step(
                state,
                t_next - state.t,
                dealias=config.dealias,
                quadrature=config.quadrature,
                growth_limit=config.blowup_growth,
                reference_rate=reference_rate,
            )
        except BlowupSuspected as exc:
            logger.warning("run halted: %s", exc)
            trajectory.status = STATUS_BLOWUP
            trajectory.message = str(exc)
            if trajectory.records[-1].t < state.t:
                emit(state)
            break
        if n % config.output_stride == 0 or n == total_steps:
            emit(state)
        if on_checkpoint is not None and config.checkpoint_every and n % config.checkpoint_every == 0:
            on_checkpoint(state)
    trajectory.final_state = state
    logger.info(
        "run finished: status %s at t=%.6g with %d records",
        trajectory.status, state.t, len(trajectory.records),
    )
    return trajectory
