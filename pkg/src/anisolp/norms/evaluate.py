"""Dispatch from a NormSpec to the norm routines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from anisolp.norms.besov import besov_h_norm
from anisolp.norms.heat import heat_besov_l2, heat_besov_sup_profile
from anisolp.norms.mixed import mixed_norm
from anisolp.norms.sobolev import hs_norm_3d, hs_slice_norm, log_weighted_norm
from anisolp.norms.spec import (
    BesovHSpec,
    HeatL2Spec,
    HeatSupSpec,
    LogSobolevSpec,
    MixedSpec,
    NormSpec,
    Sobolev3dSpec,
    SobolevSliceSpec,
)
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField


@dataclass(frozen=True)
class NormResult:
    spec: dict[str, Any]
    value: float
    tail_or_resolution_error: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "spec": self.spec,
            "value": self.value,
            "tail_or_resolution_error": self.tail_or_resolution_error,
        }


def evaluate(spec: NormSpec, field: SpectralScalarField | SpectralVectorField) -> NormResult:
    payload = spec.model_dump(mode="json")
    if isinstance(spec, Sobolev3dSpec):
        return NormResult(payload, hs_norm_3d(field, spec.s))
    if isinstance(spec, SobolevSliceSpec):
        return NormResult(payload, hs_slice_norm(field, spec.s, spec.slice))
    if isinstance(spec, BesovHSpec):
        return NormResult(payload, besov_h_norm(field, spec.s, spec.p, spec.q, spec.vertical))
    if isinstance(spec, LogSobolevSpec):
        return NormResult(payload, log_weighted_norm(field, spec.E, spec.sigma))
    if isinstance(spec, MixedSpec):
        value = mixed_norm(field, spec.p, spec.q, order=spec.order, oversample=spec.oversample)
        return NormResult(payload, value)
    if isinstance(spec, HeatSupSpec):
        profile = heat_besov_sup_profile(field, spec.gamma)
        return NormResult(payload, profile.value, profile.resolution_error)
    if isinstance(spec, HeatL2Spec):
        result = heat_besov_l2(field)
        return NormResult(payload, result.value, result.tail)
    raise TypeError(f"unsupported norm spec {type(spec).__name__}")
