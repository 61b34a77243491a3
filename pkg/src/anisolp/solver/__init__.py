"""Pseudo-spectral Navier-Stokes integration with unit viscosity."""

from anisolp.solver.config import SolverConfig, load_config
from anisolp.solver.initial import (
    init_abc,
    init_random_divfree,
    init_taylor_green,
    init_taylor_green_3d,
    lift_vertical,
    self_similar_field,
)
from anisolp.solver.stepper import SolverState, nonlinear_term, step
from anisolp.solver.run import Trajectory, run

__all__ = [
    "SolverConfig",
    "SolverState",
    "Trajectory",
    "init_abc",
    "init_random_divfree",
    "init_taylor_green",
    "init_taylor_green_3d",
    "lift_vertical",
    "load_config",
    "nonlinear_term",
    "run",
    "self_similar_field",
    "step",
]
