"""Per-time diagnostics records with stable serialized names."""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
import re
from typing import Any, Mapping

from anisolp.diagnostics.balance import energy, grad_h_balance_terms, grad_h_norms
from anisolp.diagnostics.config import DEFAULT_DIAGNOSTICS, DiagnosticsConfig
from anisolp.norms.heat import heat_besov_sup
from anisolp.norms.sobolev import hs_norm_3d, log_weighted_norm, sobolev_weight, weighted_sum
from anisolp.spectral.field import SpectralVectorField


logger = logging.getLogger(__name__)

_SCALAR_KEYS = ("t", "energy", "diss", "diss_integral", "gh_l2", "gh_h1")
_BALANCE_KEYS = ("e1", "e2", "e3", "e4")
_TAIL_KEYS = ("v3_h12", "v3_h32", "div")
_SERIES = ("v3_log", "v3_hp", "crit_p", "v_hs", "v_besov")
_INDEXED = re.compile(r"^(?P<name>[a-z0-9_]+)\[(?P<param>[^\]]+)\]$")


def param_key(name: str, value: float) -> str:
    return f"{name}[{float(value):g}]"


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Diagnostics of one velocity field at time ``t``.

    Parameterized families (log norms per E, criterion integrands and
    integrals per p, Sobolev and heat norms per gamma) are dicts keyed by
    the parameter value.
    """

    t: float
    energy: float
    diss: float
    diss_integral: float
    gh_l2: float
    gh_h1: float
    v3_h12: float
    v3_h32: float
    div: float = 0.0
    e1: float | None = None
    e2: float | None = None
    e3: float | None = None
    e4: float | None = None
    v3_log: dict[float, float] = field(default_factory=dict)
    v3_hp: dict[float, float] = field(default_factory=dict)
    crit_p: dict[float, float] = field(default_factory=dict)
    v_hs: dict[float, float] = field(default_factory=dict)
    v_besov: dict[float, float] = field(default_factory=dict)

    @property
    def balance_total(self) -> float:
        terms = (self.e1, self.e2, self.e3, self.e4)
        if any(term is None for term in terms):
            raise ValueError("record has no balance terms")
        return float(sum(terms))  # type: ignore[arg-type]

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {key: getattr(self, key) for key in _SCALAR_KEYS}
        for key in _BALANCE_KEYS:
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out["v3_h12"] = self.v3_h12
        out["v3_h32"] = self.v3_h32
        for name in _SERIES:
            for param, value in sorted(getattr(self, name).items()):
                out[param_key(name, param)] = value
        out["div"] = self.div
        return out

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "DiagnosticsRecord":
        plain: dict[str, Any] = {}
        series: dict[str, dict[float, float]] = {name: {} for name in _SERIES}
        for key, value in data.items():
            match = _INDEXED.match(key)
            if match and match.group("name") in series:
                series[match.group("name")][float(match.group("param"))] = float(value)
            elif key in _SCALAR_KEYS or key in _BALANCE_KEYS or key in _TAIL_KEYS:
                plain[key] = float(value)
            else:
                raise KeyError(f"unknown diagnostics field: {key}")
        return DiagnosticsRecord(**plain, **series)


def make_record(
    v: SpectralVectorField,
    t: float,
    *,
    diss_integral: float = 0.0,
    config: DiagnosticsConfig = DEFAULT_DIAGNOSTICS,
    previous: DiagnosticsRecord | None = None,
) -> DiagnosticsRecord:
    """Evaluate every configured diagnostic of ``v``.

    Criterion integrals continue from ``previous`` by one trapezoid panel.
    """
    v3 = v[2]
    gh_l2, gh_h1 = grad_h_norms(v)
    terms = grad_h_balance_terms(v) if config.balance_terms else None
    v3_hp = {float(p): hs_norm_3d(v3, 0.5 + 2.0 / p) for p in config.p_values}
    crit_p: dict[float, float] = {}
    for p, value in v3_hp.items():
        if previous is None or p not in previous.crit_p:
            crit_p[p] = 0.0
            continue
        panel = 0.5 * (t - previous.t) * (previous.v3_hp[p] ** p + value**p)
        crit_p[p] = previous.crit_p[p] + panel
    record = DiagnosticsRecord(
        t=float(t),
        energy=energy(v),
        diss=weighted_sum(v, sobolev_weight(v.grid, 1.0)),
        diss_integral=float(diss_integral),
        gh_l2=gh_l2,
        gh_h1=gh_h1,
        v3_h12=hs_norm_3d(v3, 0.5),
        v3_h32=hs_norm_3d(v3, 1.5),
        div=v.divergence_defect(),
        e1=terms.e1 if terms else None,
        e2=terms.e2 if terms else None,
        e3=terms.e3 if terms else None,
        e4=terms.e4 if terms else None,
        v3_log={float(E): log_weighted_norm(v3, E) for E in config.E_values},
        v3_hp=v3_hp,
        crit_p=crit_p,
        v_hs={float(g): hs_norm_3d(v, 0.5 + 2.0 * g) for g in config.gamma_values},
        v_besov=(
            {float(g): heat_besov_sup(v, g) for g in config.gamma_values}
            if config.heat_norms
            else {}
        ),
    )
    logger.debug("record t=%.6g energy=%.6e diss=%.6e", record.t, record.energy, record.diss)
    return record
