"""Tagged norm descriptions decoded from JSON."""

from __future__ import annotations

import json
import math
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator

from anisolp.errors import NormSpecError


class _SpecBase(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class Sobolev3dSpec(_SpecBase):
    kind: Literal["sobolev3d"] = "sobolev3d"
    s: float


class SobolevSliceSpec(_SpecBase):
    kind: Literal["sobolev_slice"] = "sobolev_slice"
    s: float
    slice: int | None = None


class BesovHSpec(_SpecBase):
    kind: Literal["besov_h"] = "besov_h"
    s: float
    p: Literal[2, "inf"] = 2
    q: Literal[1, 2, "inf"] = 2
    vertical: Literal[2, "inf"] = 2


class LogSobolevSpec(_SpecBase):
    kind: Literal["log_sobolev"] = "log_sobolev"
    E: float = Field(ge=0.0)
    sigma: tuple[float, float, float] = (0.0, 0.0, 1.0)

    @field_validator("sigma")
    @classmethod
    def _unit_sigma(cls, value: tuple[float, float, float]) -> tuple[float, float, float]:
        if abs(math.sqrt(sum(x * x for x in value)) - 1.0) > 1e-12:
            raise ValueError("sigma must have unit length")
        return value


class MixedSpec(_SpecBase):
    kind: Literal["mixed"] = "mixed"
    p: Literal[2, "inf"] = 2
    q: Literal[2, 4, "inf"] = 2
    order: Literal["vertical_outer", "horizontal_outer"] = "vertical_outer"
    oversample: int = Field(default=1, ge=1, le=4)


class HeatSupSpec(_SpecBase):
    kind: Literal["heat_sup"] = "heat_sup"
    gamma: float = Field(gt=0.0, lt=0.5)


class HeatL2Spec(_SpecBase):
    kind: Literal["heat_l2"] = "heat_l2"


NormSpec = Annotated[
    Union[
        Sobolev3dSpec,
        SobolevSliceSpec,
        BesovHSpec,
        LogSobolevSpec,
        MixedSpec,
        HeatSupSpec,
        HeatL2Spec,
    ],
    Field(discriminator="kind"),
]

_ADAPTER: TypeAdapter[Any] = TypeAdapter(NormSpec)


def _format_error(exc: ValidationError) -> str:
    first = exc.errors()[0]
    loc = ".".join(str(part) for part in first.get("loc", ()))
    return f"{loc or '<root>'}: {first.get('msg', 'invalid value')}"


def parse_norm_spec(data: Any) -> NormSpec:
    try:
        return _ADAPTER.validate_python(data)
    except ValidationError as exc:
        raise NormSpecError(f"invalid norm spec at {_format_error(exc)}") from exc


def parse_norm_spec_json(text: str) -> NormSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NormSpecError(
            f"norm spec is not valid JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from exc
    return parse_norm_spec(data)
