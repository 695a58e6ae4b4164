import math
from unittest import mock

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import DegenerateSampleError, InfiniteMeanError, InvalidParameterError, NumericalError
from curves.classical import classical_curve
from curves.kinds import CurveKind
from curves.quantile_curves import curve_breakpoints, q_curve
from curves.serializers import CurveTableSerializer
from curves.tables import tabulate, uniform_grid
from distributions.families import Dagum, Pareto
from estimators.quantiles import QuantileEstimate, QuantileScheme

GRID = np.linspace(0.01, 0.99, 99)


def pareto_qz(p, alpha):
    return 1 - ((1 - p) / (2 - p)) ** (1 / alpha)


def pareto_qd(p, alpha):
    return 1 - (p / (2 - p)) ** (1 / alpha)


def dagum_qz(p, a, b):
    return 1 - ((((1 + p) / 2) ** (-1 / b) - 1) / ((p / 2) ** (-1 / b) - 1)) ** (1 / a)


class CurveKindTests(SimpleTestCase):
    def test_parse(self):
        self.assertIs(CurveKind.parse('qZ'), CurveKind.QZ)
        self.assertIs(CurveKind.parse('qz'), CurveKind.QZ)
        self.assertIs(CurveKind.parse('z'), CurveKind.Z)
        with self.assertRaises(InvalidParameterError):
            CurveKind.parse('Q')

    def test_flags(self):
        self.assertTrue(CurveKind.D.is_classical)
        self.assertFalse(CurveKind.QD.is_classical)
        self.assertFalse(CurveKind.QB.bounded)
        self.assertTrue(CurveKind.L3.bounded)


class QuantileCurveTests(SimpleTestCase):
    def test_pareto_qd_midpoint(self):
        self.assertAlmostEqual(q_curve(Pareto(1, 2), 'qD', 0.5), 0.42265, places=5)

    def test_pareto_closed_forms(self):
        for alpha in (0.7, 2.0, 5.0):
            dist = Pareto(1, alpha)
            np.testing.assert_allclose(q_curve(dist, 'qZ', GRID), pareto_qz(GRID, alpha), rtol=1e-12)
            np.testing.assert_allclose(q_curve(dist, 'qD', GRID), pareto_qd(GRID, alpha), rtol=1e-12)

    def test_pareto_qz_ignores_scale(self):
        np.testing.assert_allclose(
            q_curve(Pareto(7, 3), 'qZ', GRID), q_curve(Pareto(1, 3), 'qZ', GRID), rtol=1e-13
        )

    def test_dagum_closed_form(self):
        for a, b in ((0.5, 0.5), (2, 1), (4, 0.5)):
            np.testing.assert_allclose(
                q_curve(Dagum(2.5, a, b), 'qZ', GRID), dagum_qz(GRID, a, b), rtol=1e-10
            )

    def test_identities(self):
        dist = Dagum(1, 3, 0.7)
        qd = q_curve(dist, 'qD', GRID)
        qb = q_curve(dist, 'qB', GRID)
        np.testing.assert_allclose(q_curve(dist, 'R', GRID), 1 - qd, rtol=1e-12)
        np.testing.assert_allclose(q_curve(dist, 'L2', GRID), GRID * (1 - qd), rtol=1e-12)
        np.testing.assert_allclose(q_curve(dist, 'L1', GRID), GRID * qb, rtol=1e-12)
        low = dist.quantile(GRID / 2)
        high = dist.quantile(1 - GRID / 2)
        np.testing.assert_allclose(q_curve(dist, 'L3', GRID), 2 * GRID * low / (low + high), rtol=1e-12)

    def test_bounded_curves_in_unit_interval(self):
        sample = Dagum(1, 2, 1).sample(200, 4)
        for scheme in QuantileScheme:
            est = QuantileEstimate(sample, scheme)
            for kind in (CurveKind.QZ, CurveKind.QD, CurveKind.L1, CurveKind.L2, CurveKind.L3, CurveKind.R):
                values = q_curve(est, kind, GRID)
                self.assertTrue(np.all((values >= 0) & (values <= 1)), msg=f"{kind} {scheme}")

    def test_power_of_two_scale_invariance(self):
        """
        Scaling by a power of two is exact in binary, so the curves agree
        bit for bit. Other factors round the scaled order statistics and
        agree only to a few ulps.
        """
        sample = Pareto(1, 1.5).sample(100, 8)
        for scheme in QuantileScheme:
            base = q_curve(QuantileEstimate(sample, scheme), 'qD', GRID)
            scaled = q_curve(QuantileEstimate(sample.scaled(8.0), scheme), 'qD', GRID)
            np.testing.assert_array_equal(base, scaled)
            other = q_curve(QuantileEstimate(sample.scaled(3.0), scheme), 'qD', GRID)
            np.testing.assert_allclose(base, other, rtol=1e-14, atol=1e-15)

    def test_zero_numerator_gives_full_inequality(self):
        est = QuantileEstimate([0.0, 1.0, 2.0, 3.0], 'E')
        self.assertEqual(q_curve(est, 'qD', 0.1), 1.0)

    def test_zero_denominator_is_degenerate(self):
        est = QuantileEstimate([0.0, 0.0, 0.0, 5.0], 'E')
        with self.assertRaises(DegenerateSampleError):
            q_curve(est, 'qZ', 0.1)

    def test_argument_checks(self):
        with self.assertRaises(InvalidParameterError):
            q_curve(Pareto(1, 2), 'qZ', 1.0)
        with self.assertRaises(InvalidParameterError):
            q_curve(Pareto(1, 2), 'L', 0.5)

    def test_breakpoints(self):
        est = QuantileEstimate([1.0, 2.0, 3.0, 4.0, 5.0], 'E')
        np.testing.assert_allclose(curve_breakpoints(est, 'qD'), [0.4, 0.8])
        np.testing.assert_allclose(curve_breakpoints(est, 'qZ'), [0.2, 0.4, 0.6, 0.8])


class ClassicalCurveTests(SimpleTestCase):
    def setUp(self):
        self.dist = Pareto(1, 2)

    def test_lorenz(self):
        for p in (0.1, 0.5, 0.9):
            self.assertAlmostEqual(classical_curve(self.dist, 'L', p), 1 - math.sqrt(1 - p), places=9)

    def test_related_curves(self):
        p = 0.36
        self.assertAlmostEqual(classical_curve(self.dist, 'B', p), 0.2 / 0.36, places=8)
        self.assertAlmostEqual(classical_curve(self.dist, 'M', p), 0.6, places=8)
        self.assertAlmostEqual(classical_curve(self.dist, 'Z', p), 1 - (0.2 / 0.36) * 0.8, places=8)
        self.assertAlmostEqual(classical_curve(self.dist, 'D', p), 1 - 0.2 / 0.6, places=8)

    def test_quantile_and_classical_differ(self):
        dist = Dagum(1, 2, 2)
        self.assertGreater(abs(classical_curve(dist, 'D', 0.5) - q_curve(dist, 'qD', 0.5)), 0.05)

    def test_needs_finite_mean(self):
        with self.assertRaises(InfiniteMeanError):
            classical_curve(Pareto(1, 0.9), 'L', 0.5)

    def test_needs_distribution(self):
        est = QuantileEstimate([1.0, 2.0], 'HF')
        with self.assertRaises(InvalidParameterError):
            classical_curve(est, 'L', 0.5)


class TableTests(SimpleTestCase):
    def test_uniform_grid(self):
        np.testing.assert_allclose(uniform_grid(4), [0.125, 0.375, 0.625, 0.875])
        np.testing.assert_allclose(uniform_grid(1), [0.5])
        with self.assertRaises(InvalidParameterError):
            uniform_grid(0)

    def test_tabulate_estimate(self):
        est = QuantileEstimate([1.0, 2.0, 4.0], 'WG')
        table = tabulate(est, 'qD', uniform_grid(5))
        self.assertEqual(len(table), 5)
        self.assertEqual(table.scheme, 'WG')
        self.assertEqual(list(table.to_frame().columns), ['p', 'value'])

    def test_tabulate_classical(self):
        table = tabulate(Pareto(1, 2), 'L', uniform_grid(3))
        np.testing.assert_allclose(table.values, 1 - np.sqrt(1 - table.grid), rtol=1e-8)
        self.assertEqual(table.scheme, 'exact')
        self.assertEqual(table.source, 'pareto:xm=1,alpha=2')

    def test_grid_validation(self):
        with self.assertRaises(InvalidParameterError):
            tabulate(Pareto(1, 2), 'qZ', [0.5, 0.2])
        with self.assertRaises(InvalidParameterError):
            tabulate(Pareto(1, 2), 'qZ', [0.0, 0.5])

    def test_bounded_values_clipped_to_unit_interval(self):
        with mock.patch('curves.tables.q_curve', return_value=np.array([-1e-15, 0.5, 1 + 1e-15])):
            table = tabulate(Pareto(1, 2), 'qZ', [0.25, 0.5, 0.75])
        self.assertEqual(table.values.tolist(), [0.0, 0.5, 1.0])

    def test_out_of_range_bounded_curve_is_numerical_error(self):
        with mock.patch('curves.tables.q_curve', return_value=np.array([0.2, 1.5])):
            with self.assertRaises(NumericalError):
                tabulate(Pareto(1, 2), 'qD', [0.25, 0.5])

    def test_positive_kinds_not_range_checked(self):
        with mock.patch('curves.tables.q_curve', return_value=np.array([1.5])):
            table = tabulate(Pareto(1, 2), 'qB', [0.5])
        self.assertEqual(table.values.tolist(), [1.5])

    def test_serializer_pairs(self):
        table = tabulate(Pareto(1, 2), 'qD', [0.5])
        data = CurveTableSerializer(table, context={'digits': 3}).data
        self.assertEqual(data['kind'], 'qD')
        self.assertEqual(data['points'], [[0.5, 0.423]])


class PlugInConsistencyTests(SimpleTestCase):
    def test_sup_error_shrinks_with_sample_size(self):
        dist = Dagum(1, 2, 1)
        grid = uniform_grid(99)
        for kind in ('qZ', 'qD'):
            exact = q_curve(dist, kind, grid)
            medians = []
            for n in (100, 1000, 10000):
                errors = [
                    np.max(np.abs(q_curve(QuantileEstimate(dist.sample(n, [13, n, i]), 'HF'), kind, grid) - exact))
                    for i in range(200)
                ]
                medians.append(np.median(errors))
            self.assertTrue(medians[0] > medians[1] > medians[2], msg=f"{kind}: {medians}")
