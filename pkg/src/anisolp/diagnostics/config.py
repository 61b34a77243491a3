"""Which trajectory diagnostics to compute."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator


class DiagnosticsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    E_values: tuple[float, ...] = (0.0, 1.0, 10.0, 100.0)
    p_values: tuple[float, ...] = (2.0, 4.0)
    gamma_values: tuple[float, ...] = (0.25,)
    balance_terms: bool = True
    heat_norms: bool = False

    @field_validator("E_values")
    @classmethod
    def _nonnegative_E(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(E < 0 for E in value):
            raise ValueError("E values must be >= 0")
        return value

    @field_validator("p_values")
    @classmethod
    def _p_at_least_two(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(p < 2 for p in value):
            raise ValueError("p values must be >= 2")
        return value

    @field_validator("gamma_values")
    @classmethod
    def _gamma_open_interval(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(not 0.0 < g < 0.5 for g in value):
            raise ValueError("gamma values must lie in (0, 1/2)")
        return value


DEFAULT_DIAGNOSTICS = DiagnosticsConfig()
