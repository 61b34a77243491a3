"""Check reports shared by every lab routine."""

from __future__ import annotations

from dataclasses import dataclass, field
import math
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """One evaluated inequality or identity.

    Exact identities and hard bounds set ``passed``. Inequalities with an
    unspecified constant set only ``ratio``, the implied constant.
    """

    name: str
    lhs: float
    rhs_terms: dict[str, float] = field(default_factory=dict)
    ratio: float | None = None
    passed: bool | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("CheckReport.name must be non-empty")
        if self.ratio is None and self.passed is None:
            raise ValueError(f"{self.name}: a report needs a ratio or a pass flag")

    @property
    def hard(self) -> bool:
        return self.passed is not None

    @property
    def failed(self) -> bool:
        return self.passed is False

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "lhs": _json_number(self.lhs),
            "rhs_terms": {k: _json_number(v) for k, v in sorted(self.rhs_terms.items())},
        }
        if self.ratio is not None:
            out["ratio"] = _json_number(self.ratio)
        if self.passed is not None:
            out["pass"] = self.passed
        if self.params:
            out["params"] = dict(self.params)
        return out

    @staticmethod
    def from_dict(data: dict[str, Any]) -> "CheckReport":
        ratio = data.get("ratio")
        return CheckReport(
            name=str(data["name"]),
            lhs=float(data["lhs"]),
            rhs_terms={k: float(v) for k, v in data.get("rhs_terms", {}).items()},
            ratio=None if ratio is None else float(ratio),
            passed=data.get("pass"),
            params=dict(data.get("params", {})),
        )


def _json_number(value: float) -> float | str:
    if math.isfinite(value):
        return float(value)
    return "inf" if value > 0 else ("-inf" if value < 0 else "nan")


def implied_constant(excess: float, structure: float, *, atol: float = 0.0) -> float:
    """excess_+ / structure; a vanishing structure must come with a vanishing excess.

    Returns inf when the structure vanishes but the excess does not, so the
    caller sees the violation instead of a division error.
    """
    excess = max(float(excess), 0.0)
    if structure > 0.0:
        return excess / structure
    if excess <= atol:
        return 0.0
    return math.inf
