import itertools
import math
import unittest

import numpy as np

from anisolp.errors import FieldError, GridError
from anisolp.solver.initial import init_abc, init_random_divfree
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField
from anisolp.spectral.grid import BOX_VOLUME, Grid
from anisolp.spectral.ops import (
    curl,
    dealiased_product,
    derivative,
    divergence,
    from_physical,
    gradient,
    heat_flow,
    horizontal_laplacian,
    inner,
    is_band_limited,
    l2_norm_sq,
    laplacian,
    leray_project,
    padded_physical,
    to_physical,
    trilinear_integral,
    truncate,
    vector_inner,
    vector_from_physical,
    vector_to_physical,
)
from anisolp.tests.helpers import cosine, random_scalar


def _wavevector(grid: Grid, index: tuple[int, ...]) -> tuple[int, int, int]:
    return tuple(int(i) if i < n // 2 else int(i) - n for i, n in zip(index, grid.shape))  # type: ignore[return-value]


def _convolution(f: SpectralScalarField, g: SpectralScalarField) -> np.ndarray:
    """Coefficients of f*g by direct summation over both supports, zero mode included."""
    grid = f.grid
    out = np.zeros(grid.shape, dtype=np.complex128)
    f_modes = [(_wavevector(grid, idx), f.coeffs[idx]) for idx in zip(*np.nonzero(f.coeffs))]
    g_modes = [(_wavevector(grid, idx), g.coeffs[idx]) for idx in zip(*np.nonzero(g.coeffs))]
    for a, ca in f_modes:
        for b, cb in g_modes:
            out[grid.index_of((a[0] + b[0], a[1] + b[1], a[2] + b[2]))] += ca * cb
    return out


class TestGrid(unittest.TestCase):
    def test_rejects_odd_and_small_counts(self) -> None:
        with self.assertRaises(GridError):
            Grid(9, 8, 8)
        with self.assertRaises(GridError):
            Grid(6, 8, 8)
        with self.assertRaises(TypeError):
            Grid(8.0, 8, 8)  # type: ignore[arg-type]

    def test_wavenumbers_and_masks(self) -> None:
        grid = Grid(8, 12, 16)
        self.assertEqual(grid.shape, (8, 12, 16))
        self.assertEqual(float(grid.k1[1, 0, 0]), 1.0)
        self.assertEqual(float(grid.k1[-1, 0, 0]), -1.0)
        self.assertTrue(grid.nyquist_mask[4, 0, 0])
        self.assertTrue(grid.dealias_mask[2, 3, 5])
        self.assertFalse(grid.dealias_mask[3, 0, 0])
        self.assertEqual(grid.index_of((-1, 2, -3)), (7, 2, 13))
        with self.assertRaises(GridError):
            grid.index_of((4, 0, 0))

    def test_dict_round_trip_and_mismatch(self) -> None:
        grid = Grid.cube(8)
        self.assertEqual(Grid.from_dict(grid.to_dict()), grid)
        with self.assertRaisesRegex(GridError, "missing"):
            Grid.from_dict({"n1": 8, "n2": 8})
        with self.assertRaises(GridError):
            grid.require_same(Grid(8, 8, 10))


class TestFields(unittest.TestCase):
    def test_rejects_non_hermitian_and_nonzero_mean_slot(self) -> None:
        grid = Grid.cube(8)
        coeffs = np.zeros(grid.shape, dtype=np.complex128)
        coeffs[1, 0, 0] = 1.0
        with self.assertRaisesRegex(FieldError, "Hermitian"):
            SpectralScalarField(grid, coeffs)
        coeffs = np.zeros(grid.shape, dtype=np.complex128)
        coeffs[0, 0, 0] = 2.0
        with self.assertRaisesRegex(FieldError, "mean"):
            SpectralScalarField(grid, coeffs)

    def test_nyquist_planes_are_zeroed(self) -> None:
        grid = Grid.cube(8)
        coeffs = np.zeros(grid.shape, dtype=np.complex128)
        coeffs[4, 0, 0] = 1.0
        field = SpectralScalarField(grid, coeffs)
        self.assertTrue(field.is_zero())

    def test_coefficients_are_read_only(self) -> None:
        field = cosine(Grid.cube(8), (1, 0, 0))
        with self.assertRaises(ValueError):
            field.coeffs[1, 0, 0] = 3.0

    def test_divfree_certificate(self) -> None:
        grid = Grid.cube(8)
        a = cosine(grid, (1, 0, 0)).coeffs
        zero = np.zeros(grid.shape, dtype=np.complex128)
        with self.assertRaisesRegex(FieldError, "divergence-free"):
            SpectralVectorField.from_arrays(grid, [a, zero, zero], divfree=True)
        v = SpectralVectorField.from_arrays(grid, [zero, a, zero], divfree=True)
        self.assertTrue(v.divfree)


class TestOps(unittest.TestCase):
    def test_physical_round_trip_keeps_mean(self) -> None:
        grid = Grid.cube(8)
        x1, x2, x3 = grid.coordinates()
        samples = 0.5 + np.cos(x1) * np.sin(2 * x3) + 0.0 * x2
        field = from_physical(grid, samples)
        self.assertAlmostEqual(field.mean, 0.5, places=14)
        self.assertEqual(field.coeffs[0, 0, 0], 0.0)
        np.testing.assert_allclose(to_physical(field), samples, atol=1e-13)

    def test_parseval(self) -> None:
        grid = Grid.cube(16)
        f = random_scalar(grid, seed=1)
        g = random_scalar(grid, seed=2)
        physical = BOX_VOLUME * float(np.mean(to_physical(f) * to_physical(g)))
        self.assertAlmostEqual(inner(f, g), physical, delta=1e-10 * abs(physical) + 1e-12)

    def test_single_mode_norm(self) -> None:
        grid = Grid.cube(8)
        field = cosine(grid, (1, 2, 0), amplitude=3.0)
        self.assertAlmostEqual(l2_norm_sq(field), BOX_VOLUME * 9.0 / 2.0, places=9)

    def test_leray_projection_is_idempotent_and_divfree(self) -> None:
        grid = Grid.cube(16)
        comps = tuple(random_scalar(grid, seed=s) for s in range(3))
        v = SpectralVectorField(comps)  # type: ignore[arg-type]
        p = leray_project(v)
        self.assertLess(p.divergence_defect(), 1e-12 * max(p.amplitude(), 1.0))
        pp = leray_project(p)
        np.testing.assert_allclose(pp.stacked, p.stacked, atol=1e-14)
        self.assertLess(float(np.max(np.abs(divergence(p).coeffs))), 1e-12)

    def test_abc_flow_is_beltrami(self) -> None:
        v = init_abc(Grid.cube(8), 1.0, 0.5, 0.25)
        np.testing.assert_allclose(curl(v).stacked, v.stacked, atol=1e-14)

    def test_heat_flow_multiplier(self) -> None:
        grid = Grid.cube(8)
        field = cosine(grid, (1, 1, 1))
        flowed = heat_flow(field, 0.5)
        self.assertAlmostEqual(
            l2_norm_sq(flowed), math.exp(-3.0) * l2_norm_sq(field), delta=1e-12
        )
        with self.assertRaises(FieldError):
            heat_flow(field, -1.0)

    def test_dealiased_product_of_cosines(self) -> None:
        grid = Grid.cube(16)
        a = cosine(grid, (1, 0, 0))
        b = cosine(grid, (1, 0, 0))
        product = dealiased_product(a, b)
        # cos^2 x1 = 1/2 + cos(2 x1)/2
        self.assertAlmostEqual(product.mean, 0.5, places=14)
        self.assertAlmostEqual(product.coeffs[grid.index_of((2, 0, 0))].real, 0.25, places=14)

    def test_dealiased_product_matches_direct_convolution(self) -> None:
        grid = Grid.cube(16)
        f = random_scalar(grid, seed=4, k_max=2)
        g = random_scalar(grid, seed=5, k_max=2)
        product = dealiased_product(f, g)
        expected = _convolution(f, g)
        scale = float(np.max(np.abs(expected)))
        self.assertAlmostEqual(product.mean, expected[0, 0, 0].real, delta=1e-12 * scale)
        expected[0, 0, 0] = 0.0
        np.testing.assert_allclose(product.coeffs, expected, rtol=0.0, atol=1e-12 * scale)

    def test_derivatives(self) -> None:
        grid = Grid.cube(8)
        x1, _, _ = grid.coordinates()
        d1 = derivative(cosine(grid, (1, 0, 0)), 1)
        np.testing.assert_allclose(to_physical(d1), np.broadcast_to(-np.sin(x1), grid.shape), atol=1e-14)
        self.assertTrue(derivative(cosine(grid, (1, 2, 0)), 3).is_zero())
        f = random_scalar(Grid.cube(16), seed=6)
        np.testing.assert_allclose(
            derivative(derivative(f, 1), 2).coeffs,
            derivative(derivative(f, 2), 1).coeffs,
            rtol=0.0,
            atol=1e-12,
        )

    def test_integration_by_parts(self) -> None:
        grid = Grid.cube(16)
        f = random_scalar(grid, seed=7)
        g = random_scalar(grid, seed=8)
        for axis in (1, 2, 3):
            df = derivative(f, axis)
            scale = math.sqrt(l2_norm_sq(df) * l2_norm_sq(g))
            self.assertAlmostEqual(inner(df, g), -inner(f, derivative(g, axis)), delta=1e-12 * scale)

    def test_leray_projection_is_self_adjoint_and_kills_gradients(self) -> None:
        grid = Grid.cube(16)
        u = SpectralVectorField(tuple(random_scalar(grid, seed=s) for s in range(3)))  # type: ignore[arg-type]
        w = SpectralVectorField(tuple(random_scalar(grid, seed=s) for s in range(3, 6)))  # type: ignore[arg-type]
        scale = math.sqrt(vector_inner(u, u) * vector_inner(w, w))
        self.assertAlmostEqual(
            vector_inner(leray_project(u), w), vector_inner(u, leray_project(w)), delta=1e-12 * scale
        )
        grad = gradient(random_scalar(grid, seed=9))
        self.assertLess(leray_project(grad).amplitude(), 1e-14 * grad.amplitude())

    def test_trilinear_integral_is_symmetric(self) -> None:
        grid = Grid.cube(16)
        fields = [random_scalar(grid, seed=s) for s in (10, 11, 12)]
        oversampled = [padded_physical(f, 2) for f in fields]
        product = oversampled[0] * oversampled[1] * oversampled[2]
        oracle = BOX_VOLUME * float(np.mean(product))
        scale = BOX_VOLUME * float(np.mean(np.abs(product)))
        for f, g, h in itertools.permutations(fields):
            self.assertAlmostEqual(trilinear_integral(f, g, h), oracle, delta=1e-12 * scale)

    def test_trilinear_integral_of_cosines(self) -> None:
        grid = Grid.cube(8)
        a = cosine(grid, (1, 0, 0))
        self.assertAlmostEqual(trilinear_integral(a, a, cosine(grid, (0, 1, 0))), 0.0, delta=1e-13)
        # cos^2 x1 cos 2x1 integrates to 1/4 of the box
        self.assertAlmostEqual(trilinear_integral(a, a, cosine(grid, (2, 0, 0))), BOX_VOLUME / 4.0, places=12)
        self.assertEqual(trilinear_integral(a, SpectralScalarField.zeros(grid), a), 0.0)

    def test_laplacians_of_single_mode(self) -> None:
        grid = Grid.cube(8)
        field = cosine(grid, (1, 2, 2))
        np.testing.assert_allclose(laplacian(field).coeffs, -9.0 * field.coeffs)
        np.testing.assert_allclose(horizontal_laplacian(field).coeffs, -5.0 * field.coeffs)

    def test_vector_physical_round_trip(self) -> None:
        v = init_abc(Grid.cube(8), 1.0, 0.5, 0.25)
        samples = vector_to_physical(v)
        self.assertEqual(samples.shape, (3, 8, 8, 8))
        np.testing.assert_allclose(vector_from_physical(v.grid, samples).stacked, v.stacked, atol=1e-14)

    def test_truncation_keeps_retained_band_only(self) -> None:
        grid = Grid.cube(16)
        high = cosine(grid, (6, 0, 0))
        self.assertFalse(is_band_limited(high))
        self.assertTrue(truncate(high).is_zero())
        self.assertTrue(is_band_limited(cosine(grid, (5, 5, 5))))

    def test_random_field_content_is_grid_independent(self) -> None:
        coarse = init_random_divfree(Grid.cube(16), seed=3, k_hi=4.0)
        fine = init_random_divfree(Grid.cube(32), seed=3, k_hi=4.0)
        for k in ((1, 2, 3), (-4, 0, 1), (0, 0, 2)):
            np.testing.assert_allclose(
                coarse.stacked[(slice(None),) + coarse.grid.index_of(k)],
                fine.stacked[(slice(None),) + fine.grid.index_of(k)],
                atol=1e-14,
            )


if __name__ == "__main__":
    unittest.main()
