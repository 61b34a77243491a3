"""Named verification suites over a seeded corpus."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import itertools
import logging
import math
from typing import Any, Callable, Iterable

import numpy as np

from anisolp import __version__
from anisolp.diagnostics.balance import advection_oracle, divfree_identity, e1_identity, grad_h_balance_terms
from anisolp.errors import SuiteError
from anisolp.lab.bands import check_band_estimates, j_band_components, j_sharp_bony
from anisolp.lab.corpus import CorpusSpec, cached
from anisolp.lab.harmonic import (
    check_bernstein,
    check_norm_equivalence,
    check_product,
    check_ring_inverse,
    check_trace,
)
from anisolp.lab.lemmas import (
    EPSILON_VALUES,
    check_j_epsilon_bound,
    check_j_horizontal_log_bound,
    check_j_log_bound,
    check_trilinear_bounds,
    lemma_ingredients,
)
from anisolp.lab.report import CheckReport
from anisolp.littlewood_paley.blocks import delta_h, reconstruct, s_h
from anisolp.littlewood_paley.paraproduct import bony_split
from anisolp.littlewood_paley.partition import make_partition
from anisolp.protocol.digests import canonical_json
from anisolp.spectral.field import SpectralVectorField
from anisolp.spectral.grid import BOX_VOLUME
from anisolp.spectral.ops import dealiased_product, inner, l2_norm_sq, to_physical


logger = logging.getLogger(__name__)

E1_REWRITE_TOL = 1e-10
ORACLE_TOL = 1e-10
EXACT_TOL = 1e-12
BONY_SHARP_TOL = 1e-8
PARTITION_SAMPLES = 10_000
TRACE_S = (0.5, 0.75)
EQUIVALENCE_S = (-0.5, 0.5, 1.0)
BAND_CUTOFFS = (2.0, 8.0)
ESTIMATE_CUTOFFS = (1.0, 4.0)
LEMMA_E = (1.0, 10.0)
BERNSTEIN_K = (1, 2)


@dataclass
class SuiteResult:
    name: str
    reports: list[CheckReport] = field(default_factory=list)

    @property
    def hard_failures(self) -> int:
        return sum(1 for report in self.reports if report.failed)

    @property
    def passed(self) -> bool:
        return self.hard_failures == 0

    def to_list(self) -> list[dict[str, Any]]:
        return [report.to_dict() for report in self.reports]


def _relative(residual: float, scale: float) -> float:
    return residual / scale if scale > 0.0 else residual


def _exact(name: str, residual: float, scale: float, tol: float, **params: Any) -> CheckReport:
    rel = _relative(abs(residual), scale)
    return CheckReport(
        name=name,
        lhs=abs(residual),
        rhs_terms={"scale": scale},
        ratio=rel,
        passed=rel <= tol,
        params=params,
    )


def partition_report() -> CheckReport:
    taus = np.geomspace(1e-3, 1e3, PARTITION_SAMPLES)
    partition = make_partition()
    defect = max(partition.partition_defect(taus), partition.inhomogeneous_defect(taus))
    return _exact("partition_of_unity", defect, 1.0, EXACT_TOL, samples=PARTITION_SAMPLES)


def identity_reports(v: SpectralVectorField) -> list[CheckReport]:
    reports = []
    e1 = e1_identity(v)
    reports.append(_exact("e1_rewrite", e1.residual, e1.scale, E1_REWRITE_TOL))

    terms = grad_h_balance_terms(v)
    oracle = advection_oracle(v)
    scale = sum(abs(t) for t in terms.as_tuple()) + abs(oracle)
    reports.append(_exact("grad_h_balance_oracle", terms.total - oracle, scale, ORACLE_TOL))

    div = divfree_identity(v)
    report = _exact("divfree_identity", div.residual, max(div.lhs, div.rhs), EXACT_TOL)
    if not div.bound_holds:
        report = replace(report, passed=False)
    reports.append(report)

    lam, Lam = BAND_CUTOFFS
    worst = 0.0
    for i, l in itertools.product((1, 2), repeat=2):
        parts = j_band_components(v, i, l, lam, Lam)
        scale = abs(parts.flat) + abs(parts.natural) + abs(parts.sharp)
        worst = max(worst, _relative(parts.residual, scale))
    reports.append(_exact("band_partition", worst, 1.0, EXACT_TOL, **{"lambda": lam, "Lambda": Lam}))

    sharp = j_sharp_bony(v, 1, 1, 1.0)
    scale = abs(sharp.first) + abs(sharp.second) + abs(sharp.direct)
    reports.append(_exact("bony_sharp_pieces", sharp.residual, scale, BONY_SHARP_TOL, E=1.0))

    a = v[2]
    diff = reconstruct(a) - a
    reports.append(
        _exact("block_reconstruction", math.sqrt(l2_norm_sq(diff)), math.sqrt(l2_norm_sq(a)), EXACT_TOL)
    )

    split = bony_split(v[0], v[1])
    product = dealiased_product(v[0], v[1])
    diff = split.total() - product
    reports.append(
        _exact("bony_sum", math.sqrt(l2_norm_sq(diff)), math.sqrt(l2_norm_sq(product)), EXACT_TOL)
    )

    samples = to_physical(v[0])
    physical = BOX_VOLUME * float(np.mean(samples**2))
    spectral = inner(v[0], v[0])
    reports.append(_exact("parseval", spectral - physical, spectral, EXACT_TOL))

    for s in EQUIVALENCE_S:
        reports.append(check_norm_equivalence(v[2], s))
    return reports


def bernstein_reports(v: SpectralVectorField) -> list[CheckReport]:
    a = v[0]
    reports = []
    for k in BERNSTEIN_K:
        ring = delta_h(a, k)
        low = s_h(a, k)
        reports.append(check_ring_inverse(ring, k))
        reports.append(check_bernstein(ring, k, "ring", "inf", 2))
        reports.append(check_bernstein(ring, k, "ring", 2, 2, alpha=(1, 0)))
        reports.append(check_bernstein(low, k, "low", "inf", 2))
        reports.append(check_bernstein(low, k, "low", 4, 2))
    return reports


def trace_reports(v: SpectralVectorField) -> list[CheckReport]:
    return [check_trace(comp, s) for comp in v for s in TRACE_S]


def product_reports(v: SpectralVectorField) -> list[CheckReport]:
    return [check_product(v[0], v[1], variant) for variant in ("bony_paraproducts", "b21_law", "full_law")]


def lemma_reports(v: SpectralVectorField) -> list[CheckReport]:
    ing = lemma_ingredients(v)
    reports = [check_j_log_bound(v, E, ing) for E in LEMMA_E]
    reports += [check_j_epsilon_bound(v, 1.0, eps, ing) for eps in EPSILON_VALUES]
    reports += [check_j_horizontal_log_bound(v, E, ing) for E in LEMMA_E]
    reports += check_trilinear_bounds(v)
    return reports


def band_reports(v: SpectralVectorField) -> list[CheckReport]:
    lam, Lam = ESTIMATE_CUTOFFS
    reports = []
    for i, l in itertools.product((1, 2), repeat=2):
        reports += check_band_estimates(v, i, l, lam, Lam)
    return reports


PerField = Callable[[SpectralVectorField], list[CheckReport]]

SUITES: dict[str, PerField] = {
    "identities": identity_reports,
    "bernstein": bernstein_reports,
    "trace": trace_reports,
    "products": product_reports,
    "lemmas": lemma_reports,
    "bands": band_reports,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def aggregate(reports: Iterable[CheckReport]) -> list[CheckReport]:
    """One report per check name and parameter set: worst ratio, all-pass, violation count."""
    groups: dict[tuple[str, str], list[CheckReport]] = {}
    for report in reports:
        groups.setdefault((report.name, canonical_json(report.params)), []).append(report)
    out = []
    for group in groups.values():
        worst = max(group, key=lambda r: -math.inf if r.ratio is None or math.isnan(r.ratio) else r.ratio)
        violations = sum(1 for r in group if r.failed)
        hard = worst.passed is not None
        out.append(
            CheckReport(
                name=worst.name,
                lhs=worst.lhs,
                rhs_terms=dict(worst.rhs_terms),
                ratio=worst.ratio,
                passed=(violations == 0) if hard else None,
                params={**worst.params, "fields": len(group), "violations": violations},
            )
        )
    return out


def _compute(name: str, corpus: CorpusSpec) -> list[dict[str, Any]]:
    per_field = SUITES[name]
    collected: list[CheckReport] = []
    if name == "identities":
        collected.append(partition_report())
    for v in corpus.fields():
        collected.extend(per_field(v))
    reports = aggregate(collected)
    logger.info(
        "suite %s: %d checks over %d fields, %d hard failures",
        name, len(reports), corpus.n, sum(1 for r in reports if r.failed),
    )
    return [report.to_dict() for report in reports]


def run_suite(name: str, corpus: CorpusSpec | None = None, *, use_cache: bool = True) -> SuiteResult:
    if name not in SUITE_NAMES:
        raise SuiteError(f"unknown suite {name!r}. Known: {', '.join(SUITE_NAMES)}")
    corpus = corpus or CorpusSpec()
    names = list(SUITES) if name == "all" else [name]
    result = SuiteResult(name)
    for suite in names:
        payload = {"suite": suite, "corpus": corpus.to_dict(), "version": __version__}
        rows = cached(payload, lambda suite=suite: _compute(suite, corpus), use_cache=use_cache)
        result.reports.extend(CheckReport.from_dict(row) for row in rows)
    return result


def format_table(result: SuiteResult) -> str:
    """Fixed-width text summary, one line per aggregated check."""
    lines = [f"{'check':<28} {'ratio':>14} {'status':>8} {'fields':>7}"]
    for report in result.reports:
        ratio = "-" if report.ratio is None else f"{report.ratio:.6g}"
        status = "-" if report.passed is None else ("pass" if report.passed else "FAIL")
        lines.append(f"{report.name:<28} {ratio:>14} {status:>8} {report.params.get('fields', 1):>7}")
    lines.append(f"suite {result.name}: {result.hard_failures} hard failures")
    return "\n".join(lines)
