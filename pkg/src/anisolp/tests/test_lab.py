from dataclasses import replace
import math
import os
import tempfile
import unittest
from unittest import mock

from anisolp.errors import CriterionError, CutoffError, GridError, NormSpecError, SuiteError, SupportError
from anisolp.lab.bands import J_il, check_band_estimates, choose_cutoffs, j_band_components, j_sharp_bony
from anisolp.lab.corpus import CorpusSpec, cached
from anisolp.lab.harmonic import (
    check_bernstein,
    check_norm_equivalence,
    check_product,
    check_ring_inverse,
    check_support,
    check_trace,
)
from anisolp.lab.lemmas import (
    check_j_epsilon_bound,
    check_j_horizontal_log_bound,
    check_j_log_bound,
    check_trilinear_bounds,
    lemma_ingredients,
)
from anisolp.lab.report import CheckReport, implied_constant
from anisolp.lab.suites import SUITE_NAMES, format_table, lemma_reports, product_reports, run_suite
from anisolp.littlewood_paley.blocks import delta_h
from anisolp.solver.initial import init_random_divfree, init_taylor_green
from anisolp.spectral.grid import Grid
from anisolp.tests.helpers import cosine, random_scalar


SMALL_CORPUS = CorpusSpec(n=2, size=16, k_hi=4.0)


class TestCheckReport(unittest.TestCase):
    def test_validation(self) -> None:
        with self.assertRaises(ValueError):
            CheckReport(name="", lhs=0.0, ratio=1.0)
        with self.assertRaises(ValueError):
            CheckReport(name="x", lhs=0.0)

    def test_dict_round_trip(self) -> None:
        report = CheckReport(name="x", lhs=1.5, rhs_terms={"b": 2.0}, ratio=0.75, passed=True, params={"s": 0.5})
        data = report.to_dict()
        self.assertIs(data["pass"], True)
        self.assertEqual(CheckReport.from_dict(data), report)
        soft = CheckReport(name="y", lhs=1.0, ratio=math.inf)
        self.assertEqual(soft.to_dict()["ratio"], "inf")
        self.assertNotIn("pass", soft.to_dict())
        self.assertFalse(soft.hard)

    def test_implied_constant(self) -> None:
        self.assertEqual(implied_constant(-1.0, 2.0), 0.0)
        self.assertEqual(implied_constant(3.0, 2.0), 1.5)
        self.assertEqual(implied_constant(1e-15, 0.0, atol=1e-12), 0.0)
        self.assertEqual(implied_constant(1.0, 0.0), math.inf)


class TestHarmonic(unittest.TestCase):
    def test_support_is_enforced(self) -> None:
        a = cosine(Grid.cube(8), (1, 0, 0))
        check_support(a, 0, "low")
        with self.assertRaises(SupportError):
            check_support(a, 3, "ring")
        with self.assertRaises(SupportError):
            check_support(a, -2, "low")

    def test_ring_inverse_and_bernstein(self) -> None:
        grid = Grid.cube(16)
        a = random_scalar(grid, seed=12, k_max=4)
        ring = delta_h(a, 1)
        report = check_ring_inverse(ring, 1)
        self.assertTrue(report.passed)
        sup = check_bernstein(ring, 1, "ring", "inf", 2)
        self.assertTrue(math.isfinite(sup.ratio))
        self.assertIsNone(sup.passed)
        with self.assertRaises(NormSpecError):
            check_bernstein(ring, 1, "ring", 2, 4)

    def test_trace_stays_below_sqrt_two(self) -> None:
        grid = Grid.cube(16)
        for seed in range(3):
            report = check_trace(random_scalar(grid, seed=seed, k_max=4), 0.5)
            self.assertTrue(report.passed)
            self.assertLessEqual(report.ratio, math.sqrt(2.0))
        with self.assertRaises(NormSpecError):
            check_trace(random_scalar(grid, seed=0), 1.0)

    def test_product_laws_on_two_cosines(self) -> None:
        grid = Grid(64, 64, 8)
        a = cosine(grid, (0, 1, 0))
        b = cosine(grid, (16, 0, 0))
        bony = check_product(a, b, "bony_paraproducts")
        self.assertEqual(bony.name, "product_bony_paraproducts")
        # |T_a b| / (|a|_inf |b|) = sqrt(sqrt(257) / 32) on every slice
        self.assertAlmostEqual(bony.ratio, math.sqrt(math.sqrt(257.0) / 32.0), delta=1e-4)
        self.assertLess(bony.rhs_terms["high_low_ratio"], 1e-10)
        full = check_product(a, b, "full_law")
        a_h1 = math.sqrt(2.0 * math.pi**2)
        self.assertAlmostEqual(full.ratio, bony.ratio / (1.0 + a_h1), delta=1e-4)
        b21 = check_product(a, b, "b21_law")
        self.assertTrue(math.isfinite(b21.ratio))

    def test_norm_equivalence_passes(self) -> None:
        a = random_scalar(Grid.cube(16), seed=13, k_max=4)
        for s in (-0.5, 0.5, 1.0):
            self.assertTrue(check_norm_equivalence(a, s).passed)


class TestLemmas(unittest.TestCase):
    def setUp(self) -> None:
        self.v = init_random_divfree(Grid.cube(16), seed=21, k_hi=4.0)
        self.ing = lemma_ingredients(self.v)

    def test_ratios_are_finite(self) -> None:
        reports = [
            check_j_log_bound(self.v, 1.0, self.ing),
            check_j_epsilon_bound(self.v, 1.0, 0.1, self.ing),
            check_j_horizontal_log_bound(self.v, 10.0, self.ing),
            *check_trilinear_bounds(self.v),
        ]
        for report in reports:
            self.assertTrue(math.isfinite(report.ratio), report.name)
            self.assertGreaterEqual(report.ratio, 0.0)
        names = [r.name for r in check_trilinear_bounds(self.v)]
        self.assertEqual(names, ["trilinear_convexity", "trilinear_h12", "trilinear_interpolation"])

    def test_parameter_errors(self) -> None:
        with self.assertRaises(CriterionError):
            check_j_log_bound(self.v, 0.0, self.ing)
        with self.assertRaises(CriterionError):
            check_j_epsilon_bound(self.v, 1.0, 0.0, self.ing)
        with self.assertRaises(CriterionError):
            check_j_horizontal_log_bound(self.v, -1.0, self.ing)
        self.assertEqual(check_j_horizontal_log_bound(self.v, 0.0, self.ing).ratio, 0.0)

    def test_planar_flow_has_no_stretching(self) -> None:
        v = init_taylor_green(Grid.cube(16))
        report = check_j_log_bound(v, 1.0)
        self.assertEqual(report.lhs, 0.0)
        self.assertEqual(report.ratio, 0.0)

    def test_log_bound_terms_scale_by_their_degree(self) -> None:
        # v -> 2v, E -> E/4 keeps gh_l2 * E, so each term scales by 2^degree
        E = 2.0
        base = check_j_log_bound(self.v, E, self.ing)
        scaled = check_j_log_bound(self.v * 2.0, E / 4.0)
        self.assertAlmostEqual(scaled.lhs, 8.0 * base.lhs, delta=1e-12 * 8.0 * base.lhs)
        for name, degree in (("gh_h1/10", 2), ("log*v3_h32^2*gh_l2", 4), ("grad_l2/E*gh_l2", 6)):
            expected = 2.0**degree * base.rhs_terms[name]
            self.assertGreater(expected, 0.0)
            self.assertAlmostEqual(scaled.rhs_terms[name], expected, delta=1e-12 * expected, msg=name)


class TestResolutionStability(unittest.TestCase):
    def test_implied_constants_agree_on_32_and_64_cubes(self) -> None:
        coarse_spec = CorpusSpec(n=3, size=32, k_hi=4.0)
        fine_spec = replace(coarse_spec, size=64)
        for index in range(coarse_spec.n):
            coarse_v = coarse_spec.field(index)
            fine_v = fine_spec.field(index)
            coarse = lemma_reports(coarse_v) + product_reports(coarse_v)
            fine = lemma_reports(fine_v) + product_reports(fine_v)
            self.assertEqual(len(coarse), len(fine))
            names = {report.name for report in coarse}
            for expected in ("j_log_bound", "j_epsilon_bound", "j_horizontal_log_bound", "product_full_law"):
                self.assertIn(expected, names)
            for c, f in zip(coarse, fine):
                self.assertEqual((c.name, c.params), (f.name, f.params))
                self.assertTrue(math.isfinite(c.ratio), c.name)
                self.assertLessEqual(abs(f.ratio - c.ratio), 0.2 * abs(c.ratio) + 1e-12, msg=c.name)


class TestBands(unittest.TestCase):
    def setUp(self) -> None:
        self.v = init_random_divfree(Grid.cube(16), seed=22, k_hi=4.0)

    def test_band_components_sum_to_J(self) -> None:
        parts = j_band_components(self.v, 1, 2, 2.0, 4.0)
        self.assertAlmostEqual(parts.total, J_il(self.v, 1, 2), places=12)
        scale = abs(parts.flat) + abs(parts.natural) + abs(parts.sharp)
        self.assertLessEqual(parts.residual, 1e-12 * max(scale, 1.0))
        with self.assertRaises(ValueError):
            J_il(self.v, 3, 1)

    def test_sharp_bony_pieces(self) -> None:
        pieces = j_sharp_bony(self.v, 2, 1, 1.0)
        scale = abs(pieces.first) + abs(pieces.second) + abs(pieces.direct)
        self.assertLessEqual(pieces.residual, 1e-8 * max(scale, 1.0))
        self.assertEqual(pieces.unresolved, 0.0)
        with self.assertRaises(CutoffError):
            j_sharp_bony(self.v, 1, 1, 0.0)

    def test_choose_cutoffs(self) -> None:
        lam, Lam = choose_cutoffs(self.v, 2.0, 1.0)
        self.assertEqual(lam, 0.5)
        self.assertGreater(Lam, math.e / 2.0)
        with self.assertRaises(CutoffError):
            choose_cutoffs(self.v, 1.0, 0.0)

    def test_band_estimates(self) -> None:
        reports = check_band_estimates(self.v, 1, 1, 1.0, 4.0)
        self.assertEqual(
            [r.name for r in reports],
            ["band_low", "band_high", "band_middle_sup", "band_middle_holder"],
        )
        for report in reports:
            self.assertTrue(math.isfinite(report.ratio), report.name)


class TestSuites(unittest.TestCase):
    def test_corpus_spec(self) -> None:
        with self.assertRaises(GridError):
            CorpusSpec(size=16)
        fields = list(SMALL_CORPUS.fields())
        self.assertEqual(len(fields), 2)
        self.assertEqual(SMALL_CORPUS.to_dict()["slopes"], [-1.0, -5.0 / 3.0, -3.0])
        with self.assertRaises(IndexError):
            SMALL_CORPUS.field(2)

    def test_identities_suite_passes(self) -> None:
        result = run_suite("identities", SMALL_CORPUS, use_cache=False)
        self.assertTrue(result.passed, format_table(result))
        names = {report.name for report in result.reports}
        self.assertIn("partition_of_unity", names)
        self.assertIn("bony_sum", names)
        self.assertTrue(all(r.params["fields"] in (1, 2) for r in result.reports))

    def test_trace_suite_passes(self) -> None:
        result = run_suite("trace", SMALL_CORPUS, use_cache=False)
        self.assertTrue(result.passed)
        self.assertIn("0 hard failures", format_table(result))

    def test_unknown_suite(self) -> None:
        self.assertIn("all", SUITE_NAMES)
        with self.assertRaises(SuiteError):
            run_suite("nope", SMALL_CORPUS)

    def test_results_are_cached(self) -> None:
        calls = []

        def fake_compute(name, corpus):
            calls.append(name)
            return [CheckReport(name="stub", lhs=0.0, ratio=0.0, passed=True).to_dict()]

        with tempfile.TemporaryDirectory() as tmpdir:
            env = {"ANISO_CACHE_DIR": tmpdir, "ANISO_CACHE": "1"}
            with mock.patch.dict(os.environ, env), mock.patch("anisolp.lab.suites._compute", fake_compute):
                first = run_suite("trace", SMALL_CORPUS)
                second = run_suite("trace", SMALL_CORPUS)
                run_suite("trace", SMALL_CORPUS, use_cache=False)
        self.assertEqual(calls, ["trace", "trace"])
        self.assertEqual(first.to_list(), second.to_list())

    def test_cache_toggle(self) -> None:
        with mock.patch.dict(os.environ, {"ANISO_CACHE": "0"}):
            values = iter([1, 2])
            self.assertEqual(cached({"k": 1}, lambda: next(values)), 1)
            self.assertEqual(cached({"k": 1}, lambda: next(values)), 2)


if __name__ == "__main__":
    unittest.main()
