"""Run configuration documents."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from anisolp.diagnostics.config import DiagnosticsConfig
from anisolp.errors import ConfigError
from anisolp.spectral.grid import MIN_MODES, Grid


STABILITY_MARGIN = 0.4
MAX_RANDOM_SHELL = 10


class _ConfigBase(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GridSpec(_ConfigBase):
    n1: int = Field(ge=MIN_MODES, multiple_of=2)
    n2: int = Field(ge=MIN_MODES, multiple_of=2)
    n3: int = Field(ge=MIN_MODES, multiple_of=2)

    def build(self) -> Grid:
        return Grid(self.n1, self.n2, self.n3)


class TaylorGreenData(_ConfigBase):
    kind: Literal["taylor_green"] = "taylor_green"
    amplitude: float = 1.0

    def max_wavenumber(self) -> float:
        return math.sqrt(2.0)


class TaylorGreen3dData(_ConfigBase):
    kind: Literal["taylor_green_3d"] = "taylor_green_3d"
    amplitude: float = 1.0

    def max_wavenumber(self) -> float:
        return math.sqrt(3.0)


class AbcData(_ConfigBase):
    kind: Literal["abc"] = "abc"
    A: float = 1.0
    B: float = 1.0
    C: float = 1.0

    def max_wavenumber(self) -> float:
        return 1.0


class RandomDivfreeData(_ConfigBase):
    kind: Literal["random_divfree"] = "random_divfree"
    spectrum_slope: float = -5.0 / 3.0
    seed: int = 0
    amplitude: float = Field(default=1.0, gt=0.0)
    k_lo: float = Field(default=1.0, ge=1.0)
    k_hi: float = Field(default=6.0, le=MAX_RANDOM_SHELL)

    @model_validator(mode="after")
    def _shell_order(self) -> "RandomDivfreeData":
        if self.k_hi < self.k_lo:
            raise ValueError("k_hi must be >= k_lo")
        return self

    def max_wavenumber(self) -> float:
        return self.k_hi


class FieldFileData(_ConfigBase):
    kind: Literal["field_file"] = "field_file"
    path: str

    def max_wavenumber(self) -> float | None:
        return None


InitialData = Annotated[
    Union[TaylorGreenData, TaylorGreen3dData, AbcData, RandomDivfreeData, FieldFileData],
    Field(discriminator="kind"),
]


class SolverConfig(_ConfigBase):
    """Validated run description; the stability bound uses the initial data's top wavenumber."""

    grid: GridSpec
    dt: float = Field(gt=0.0)
    t_end: float = Field(ge=0.0)
    output_stride: int = Field(default=1, ge=1)
    initial_data: InitialData
    dealias: bool = True
    quadrature: Literal["simpson", "trapezoid"] = "simpson"
    blowup_growth: float = Field(default=1e6, gt=1.0)
    checkpoint_every: int = Field(default=0, ge=0)
    diagnostics: DiagnosticsConfig = DiagnosticsConfig()

    @model_validator(mode="after")
    def _stability(self) -> "SolverConfig":
        k_max = self.initial_data.max_wavenumber()
        if k_max is not None:
            limit = STABILITY_MARGIN / k_max**2
            if self.dt > limit:
                raise ValueError(f"dt={self.dt} exceeds stability bound {limit:.6g} (0.4/|k_max|^2)")
            k_axis = math.ceil(k_max)
            grid = self.grid
            if 3 * k_axis >= min(grid.n1, grid.n2, grid.n3):
                raise ValueError(f"initial data reaches |k|={k_max}, beyond the retained band")
        return self

    def build_grid(self) -> Grid:
        return self.grid.build()

    def content(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


def _location(exc: ValidationError) -> tuple[str, str]:
    first = exc.errors()[0]
    loc = ".".join(str(part) for part in first.get("loc", ())) or "<root>"
    return loc, str(first.get("msg", "invalid value"))


def parse_config(data: Any) -> SolverConfig:
    try:
        return SolverConfig.model_validate(data)
    except ValidationError as exc:
        loc, msg = _location(exc)
        raise ConfigError(msg, location=f"field {loc}") from exc


def parse_config_text(text: str, *, source: str = "<config>") -> SolverConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, location=f"{source}:{exc.lineno}:{exc.colno}") from exc
    try:
        return parse_config(data)
    except ConfigError as exc:
        raise ConfigError(str(exc), location=source) from exc


def load_config(path: Path) -> SolverConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}", location=str(path)) from exc
    return parse_config_text(text, source=str(path))
