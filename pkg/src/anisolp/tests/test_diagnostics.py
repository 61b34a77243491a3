import math
import unittest
import warnings

import numpy as np

from anisolp.diagnostics.balance import (
    GradientSamples,
    advection_oracle,
    divfree_identity,
    e1_identity,
    energy,
    energy_balance,
    grad_h_balance_residuals,
    grad_h_balance_terms,
    grad_h_norms,
)
from anisolp.diagnostics.config import DiagnosticsConfig
from anisolp.diagnostics.criteria import (
    criterion_p_integral,
    criterion_p_series,
    cumulative_integral,
    forward_sup,
    leray_lower_bounds,
    log_norm_monitor,
    one_component_lower_bound,
    running_max,
    smallness_functional,
)
from anisolp.diagnostics.record import DiagnosticsRecord, make_record, param_key
from anisolp.errors import CriterionError
from anisolp.solver.config import parse_config
from anisolp.solver.initial import init_random_divfree, init_taylor_green, self_similar_field
from anisolp.solver.run import run
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField
from anisolp.spectral.grid import Grid
from anisolp.spectral.ops import vector_l2_norm_sq
from anisolp.tests.helpers import cosine


def _record(t: float, v3_h12: float = 0.0, gh_l2: float = 1.0, **series: dict) -> DiagnosticsRecord:
    return DiagnosticsRecord(
        t=t,
        energy=0.5,
        diss=1.0,
        diss_integral=0.0,
        gh_l2=gh_l2,
        gh_h1=2.0,
        v3_h12=v3_h12,
        v3_h32=0.0,
        **series,
    )


class TestBalance(unittest.TestCase):
    def setUp(self) -> None:
        self.v = init_random_divfree(Grid.cube(16), seed=3, k_hi=4.0)

    def test_energy_is_half_l2_square(self) -> None:
        self.assertAlmostEqual(energy(self.v), 0.5 * vector_l2_norm_sq(self.v), places=12)

    def test_e1_rewrite(self) -> None:
        identity = e1_identity(self.v)
        self.assertGreater(identity.scale, 0.0)
        self.assertLessEqual(identity.relative, 1e-10)

    def test_balance_terms_match_fourier_oracle(self) -> None:
        terms = grad_h_balance_terms(self.v)
        oracle = advection_oracle(self.v)
        scale = sum(abs(x) for x in terms.as_tuple()) + abs(oracle)
        self.assertLessEqual(abs(terms.total - oracle), 1e-10 * scale)

    def test_shared_samples_give_same_terms(self) -> None:
        samples = GradientSamples(self.v)
        self.assertEqual(grad_h_balance_terms(self.v, samples), grad_h_balance_terms(self.v))

    def test_divfree_identity(self) -> None:
        result = divfree_identity(self.v)
        self.assertTrue(result.divfree)
        self.assertLessEqual(result.residual, 1e-12 * max(result.lhs, result.rhs))
        self.assertTrue(result.bound_holds)

    def test_divfree_identity_warns_on_compressible_input(self) -> None:
        grid = Grid.cube(8)
        zero = SpectralScalarField.zeros(grid)
        w = SpectralVectorField((cosine(grid, (1, 0, 0)), zero, zero))
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = divfree_identity(w)
        self.assertFalse(result.divfree)
        self.assertTrue(any("not divergence-free" in str(item.message) for item in caught))

    def test_planar_flow_has_only_first_term(self) -> None:
        v = init_taylor_green(Grid.cube(16))
        terms = grad_h_balance_terms(v)
        self.assertEqual((terms.e2, terms.e3, terms.e4), (0.0, 0.0, 0.0))
        gh_l2, gh_h1 = grad_h_norms(v)
        self.assertAlmostEqual(gh_h1, 2.0 * gh_l2, places=10)


class TestRecords(unittest.TestCase):
    def test_make_record_on_planar_flow(self) -> None:
        v = init_taylor_green(Grid.cube(16))
        record = make_record(v, 0.0)
        self.assertEqual(record.v3_h12, 0.0)
        self.assertEqual(record.v3_h32, 0.0)
        self.assertTrue(all(value == 0.0 for value in record.v3_log.values()))
        self.assertEqual((record.e2, record.e3, record.e4), (0.0, 0.0, 0.0))
        self.assertEqual(sorted(record.v3_log), [0.0, 1.0, 10.0, 100.0])
        self.assertEqual(record.crit_p, {2.0: 0.0, 4.0: 0.0})
        self.assertEqual(record.v_besov, {})

    def test_criterion_integral_accumulates(self) -> None:
        v = init_random_divfree(Grid.cube(16), seed=1, k_hi=4.0)
        config = DiagnosticsConfig(p_values=(2.0,), balance_terms=False)
        first = make_record(v, 0.0, config=config)
        second = make_record(v, 0.5, config=config, previous=first)
        self.assertIsNone(second.e1)
        expected = 0.5 * first.v3_hp[2.0] ** 2
        self.assertAlmostEqual(second.crit_p[2.0], expected, delta=1e-12 * expected)
        self.assertAlmostEqual(criterion_p_integral([first, second], 2.0), expected, delta=1e-12 * expected)

    def test_heat_norms_feed_lower_bounds(self) -> None:
        v = init_taylor_green(Grid.cube(8))
        config = DiagnosticsConfig(balance_terms=False, heat_norms=True, gamma_values=(0.25,))
        record = make_record(v, 0.0, config=config)
        self.assertGreater(record.v_besov[0.25], 0.0)
        sample = leray_lower_bounds([record], 1.0, 0.25)[0]
        self.assertEqual(sample.implied_besov, record.v_besov[0.25])

    def test_serialized_names(self) -> None:
        record = _record(0.25, v3_log={1.0: 3.0}, crit_p={4.0: 0.5})
        data = record.to_dict()
        self.assertEqual(list(data)[0], "t")
        self.assertIn("v3_log[1]", data)
        self.assertIn("crit_p[4]", data)
        self.assertNotIn("e1", data)
        self.assertEqual(DiagnosticsRecord.from_dict(data), record)
        self.assertEqual(param_key("v_hs", 0.25), "v_hs[0.25]")
        with self.assertRaises(KeyError):
            DiagnosticsRecord.from_dict({**data, "bogus": 1.0})
        with self.assertRaises(ValueError):
            _ = record.balance_total


class TestCriteria(unittest.TestCase):
    def test_running_max_and_integral(self) -> None:
        np.testing.assert_array_equal(running_max([1.0, 3.0, 2.0, 4.0]), [1.0, 3.0, 3.0, 4.0])
        np.testing.assert_array_equal(running_max([1.0, 3.0, 2.0], backward=True), [3.0, 3.0, 2.0])
        np.testing.assert_allclose(cumulative_integral([1.0, 1.0, 1.0], [0.0, 0.5, 2.0]), [0.0, 0.5, 2.0])
        self.assertEqual(running_max([]).size, 0)

    def test_criterion_series_from_records(self) -> None:
        records = [_record(t, v3_hp={4.0: 2.0}) for t in (0.0, 0.5, 1.0)]
        np.testing.assert_allclose(criterion_p_series(records, 4.0), [0.0, 8.0, 16.0])
        with self.assertRaises(CriterionError):
            criterion_p_series(records, 1.0)
        with self.assertRaisesRegex(CriterionError, "parameter 2"):
            criterion_p_series(records, 2.0)

    def test_lower_bounds_require_future_blowup(self) -> None:
        records = [_record(t, v_hs={0.25: 4.0}) for t in (0.0, 0.5)]
        samples = leray_lower_bounds(records, 1.0, 0.25)
        self.assertAlmostEqual(samples[1].implied_hs, 0.5**0.25 * 4.0, places=14)
        self.assertAlmostEqual(samples[0].implied_grad, 1.0, places=14)
        self.assertIsNone(samples[0].implied_besov)
        with self.assertRaises(CriterionError):
            leray_lower_bounds(records, 0.5, 0.25)
        with self.assertRaises(CriterionError):
            leray_lower_bounds(records, 1.0, 0.5)

    def test_one_component_bound_uses_future_sup(self) -> None:
        records = [_record(t, v3_h12=h) for t, h in ((0.0, 1.0), (0.1, 3.0), (0.2, 2.0))]
        samples = one_component_lower_bound(records, 1.0)
        self.assertEqual([s.future_sup for s in samples], [3.0, 3.0, 2.0])
        self.assertAlmostEqual(samples[0].log_factor, math.sqrt(math.log(math.e + 1.0)), places=14)

    def test_monitors_vanish_without_vertical_velocity(self) -> None:
        config = parse_config(
            {
                "grid": {"n1": 16, "n2": 16, "n3": 16},
                "dt": 1e-3,
                "t_end": 0.004,
                "output_stride": 2,
                "initial_data": {"kind": "taylor_green"},
            }
        )
        records = run(config).records
        self.assertTrue(all(s.implied_c0 == 0.0 for s in one_component_lower_bound(records, 1.0)))
        for series in log_norm_monitor(records).values():
            self.assertFalse(np.any(series.values))
        self.assertEqual(criterion_p_integral(records, 4.0), 0.0)
        self.assertEqual(smallness_functional(records).value, 0.0)
        residuals = grad_h_balance_residuals(records)
        self.assertEqual(residuals.shape, (2,))
        self.assertTrue(np.all(np.abs(residuals) < 1e-3 * records[0].gh_h1))
        first = records[0]
        for record in records:
            self.assertLess(abs(energy_balance(first, record)), 1e-8 * first.energy)

    def test_smallness_window(self) -> None:
        records = [
            _record(0.0, v3_h12=1.0, gh_l2=1.0),
            _record(0.1, v3_h12=2.0, gh_l2=1.5),
            _record(0.2, v3_h12=5.0, gh_l2=2.5),
        ]
        result = smallness_functional(records)
        self.assertEqual(result.window_end, 1)
        self.assertEqual(result.m, 2.0)
        self.assertAlmostEqual(result.E, 1.0, places=14)
        self.assertAlmostEqual(result.value, 2.0 * math.sqrt(math.log(math.e + 1.0)), places=14)
        np.testing.assert_array_equal(forward_sup(records), [1.0, 2.0, 5.0])
        with self.assertRaises(CriterionError):
            smallness_functional([])

    def test_self_similar_criterion_integrand(self) -> None:
        grid = Grid.cube(64)
        config = DiagnosticsConfig(balance_terms=False, E_values=(1.0,), p_values=(2.0,))
        implied = []
        for remaining in (0.1, 0.05, 0.025):
            record = make_record(self_similar_field(grid, 1.0, 1.0 - remaining), 1.0 - remaining, config=config)
            implied.append(record.v3_h32**2 * remaining)
        self.assertLess(max(implied) / min(implied) - 1.0, 0.1)


class TestSelfSimilarMonitors(unittest.TestCase):
    """Manufactured family v(t) = L V(L x), L = (T* - t)^{-1/2}, with T* = 1."""

    @classmethod
    def setUpClass(cls) -> None:
        grid = Grid.cube(64)
        config = DiagnosticsConfig(balance_terms=False, E_values=(1.0,), p_values=(2.0,))
        cls.remaining = [0.1 * 2.0 ** (-j / 4.0) for j in range(9)]
        cls.records = [
            make_record(self_similar_field(grid, 1.0, 1.0 - tau), 1.0 - tau, config=config)
            for tau in cls.remaining
        ]

    def test_lower_bound_constants_are_stationary(self) -> None:
        # remaining times 0.1, 0.05, 0.025
        picked = [self.records[j] for j in (0, 4, 8)]
        samples = leray_lower_bounds(picked, 1.0, 0.25)
        series = {
            "grad": [s.implied_grad for s in samples],
            "hs": [s.implied_hs for s in samples],
            "c0": [s.implied_c0 for s in one_component_lower_bound(picked, 1.0)],
        }
        for name, values in series.items():
            self.assertGreater(min(values), 0.0, name)
            self.assertLess(max(values) / min(values) - 1.0, 0.05, name)

    def test_critical_integral_grows_logarithmically(self) -> None:
        integral = criterion_p_series(self.records, 2.0)
        log_scale = np.log(self.remaining[0] / np.asarray(self.remaining))
        slope = np.polyfit(log_scale, integral, 1)[0]
        constant = np.mean([r.v3_hp[2.0] ** 2 * tau for r, tau in zip(self.records, self.remaining)])
        self.assertLess(abs(slope / constant - 1.0), 0.1)


if __name__ == "__main__":
    unittest.main()
