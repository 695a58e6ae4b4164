import math
import unittest

import numpy as np
import pytest
from django.conf import settings
from django.test import SimpleTestCase

from asymptotics.variance import sigma2_D, sigma2_Z
from core.datasets import DataColumnSpec, load_groups
from core.exceptions import DegenerateSampleError, InfiniteMeanError, InvalidParameterError
from distributions.families import Dagum, Pareto
from estimators.quantiles import QuantileScheme
from estimators.samples import Sample
from indices.closed_form import index_estimate_closed_form, linear_ratio_integrals
from indices.estimates import EXACT, IndexEstimate, IndexMethod, clamp_unit
from indices.exact import index_exact
from indices.kinds import IndexKind
from indices.oracle import mc_index_oracle
from indices.plug_in import index_estimate_quadrature
from indices.serializers import IndexEstimateSerializer

# (a, qZI at b=0.5, qZI at b=1, qDI at b=0.5, qDI at b=1), sigma = 1
DAGUM_INDICES = (
    (0.5, 0.9985, 0.9932, 0.9079, 0.8785),
    (0.8, 0.9849, 0.9589, 0.8563, 0.8127),
    (2.0, 0.8288, 0.7344, 0.6877, 0.6137),
    (4.0, 0.5973, 0.4912, 0.5105, 0.4292),
)

# HF estimates on the professor salaries data, by rank
SALARY_INDICES = {
    'Prof': (0.2973, 0.2774),
    'AssocProf': (0.2225, 0.2138),
    'AsstProf': (0.1580, 0.1535),
    'All': (0.3453, 0.3185),
}


class IndexKindTests(SimpleTestCase):
    def test_parse_and_curves(self):
        self.assertIs(IndexKind.parse('qzi'), IndexKind.QZI)
        self.assertEqual(IndexKind.G2.curve.value, 'L2')
        self.assertTrue(IndexKind.GI.gini_type)
        self.assertTrue(IndexKind.DI.is_classical)
        with self.assertRaises(InvalidParameterError):
            IndexKind.parse('Theil')


class IndexEstimateTests(SimpleTestCase):
    def test_value_range(self):
        with self.assertRaises(InvalidParameterError):
            IndexEstimate(IndexKind.QZI, 1.2, 'HF', IndexMethod.CLOSED_FORM, n=5)

    def test_closed_form_only_for_samples(self):
        with self.assertRaises(InvalidParameterError):
            IndexEstimate(IndexKind.QZI, 0.5, EXACT, IndexMethod.CLOSED_FORM)
        with self.assertRaises(InvalidParameterError):
            IndexEstimate(IndexKind.G1, 0.5, 'HF', IndexMethod.CLOSED_FORM, n=5)

    def test_clamp_unit(self):
        self.assertEqual(clamp_unit(-1e-14), 0.0)
        self.assertEqual(clamp_unit(1 + 1e-14), 1.0)
        self.assertEqual(clamp_unit(-1e-3), -1e-3)

    def test_serializer_drops_missing_std_error(self):
        estimate = IndexEstimate(IndexKind.QDI, 0.123456789, 'H', IndexMethod.CLOSED_FORM, n=10)
        data = IndexEstimateSerializer(estimate, context={'digits': 4}).data
        self.assertEqual(data['value'], 0.1235)
        self.assertNotIn('std_error', data)


class LinearRatioTests(SimpleTestCase):
    def integrals(self, *columns):
        return linear_ratio_integrals(*(np.array(column, dtype=float) for column in columns))

    def test_moving_denominator(self):
        (value,) = self.integrals([1.0], [1.0], [1.0], [1.0], [2.0])
        self.assertAlmostEqual(value, math.log(2), places=15)

    def test_series_branch(self):
        (value,) = self.integrals([1.0], [1.0], [1.0], [1.0], [1.0 + 1e-5])
        self.assertAlmostEqual(value, math.log1p(1e-5) / 1e-5, places=15)

    def test_linear_numerator(self):
        # int_0^1 s / (1 + s) ds
        (value,) = self.integrals([1.0], [0.0], [1.0], [1.0], [2.0])
        self.assertAlmostEqual(value, 1 - math.log(2), places=15)

    def test_shared_root(self):
        values = self.integrals([0.5, 0.25], [0.0, 3.0], [2.0, 0.0], [0.0, 6.0], [4.0, 0.0])
        np.testing.assert_allclose(values, [0.25, 0.125])

    def test_vanishing_denominator(self):
        with self.assertRaises(DegenerateSampleError):
            self.integrals([1.0], [0.0], [0.0], [0.0], [0.0])


class ClosedFormTests(SimpleTestCase):
    def test_two_point_sample(self):
        estimate = index_estimate_closed_form(Sample([1.0, 3.0]), 'E', 'qZI')
        self.assertAlmostEqual(estimate.value, 2 / 3, places=14)
        self.assertEqual(estimate.method, IndexMethod.CLOSED_FORM)
        self.assertEqual(estimate.n, 2)

    def test_constant_sample_is_zero(self):
        for scheme in QuantileScheme:
            for kind in ('qZI', 'qDI'):
                self.assertEqual(index_estimate_closed_form([4.0] * 6, scheme, kind).value, 0.0)

    def test_agrees_with_quadrature(self):
        sample = Dagum(1, 2, 0.5).sample(30, 77)
        for scheme in QuantileScheme:
            for kind in ('qZI', 'qDI'):
                closed = index_estimate_closed_form(sample, scheme, kind).value
                numeric = index_estimate_quadrature(sample, scheme, kind).value
                self.assertAlmostEqual(closed, numeric, delta=1e-8, msg=f"{kind} {scheme}")

    def test_scale_invariant(self):
        """
        Bit-identical under power-of-two scaling; any other factor rounds the
        scaled observations, so agreement is to rounding only.
        """
        sample = Pareto(1, 2).sample(40, 3)
        for scheme in QuantileScheme:
            for kind in ('qZI', 'qDI'):
                base = index_estimate_closed_form(sample, scheme, kind).value
                by_eight = index_estimate_closed_form(sample.scaled(8.0), scheme, kind).value
                self.assertEqual(base, by_eight, msg=f"{kind} {scheme}")
                scaled = index_estimate_closed_form(sample.scaled(3.7), scheme, kind).value
                self.assertAlmostEqual(base, scaled, delta=1e-14)

    def test_zeros_allowed_while_denominator_positive(self):
        estimate = index_estimate_closed_form([0.0, 1.0, 2.0, 3.0, 4.0], 'HF', 'qZI')
        self.assertTrue(0.0 < estimate.value <= 1.0)

    def test_degenerate_sample(self):
        with self.assertRaises(DegenerateSampleError):
            index_estimate_closed_form([0.0, 0.0, 0.0, 0.0, 5.0], 'E', 'qZI')
        with self.assertRaises(DegenerateSampleError):
            index_estimate_closed_form([0.0, 0.0], 'HF', 'qDI')

    def test_rejects_other_kinds(self):
        with self.assertRaises(InvalidParameterError):
            index_estimate_closed_form([1.0, 2.0], 'HF', 'G1')


class QuadratureIndexTests(SimpleTestCase):
    def test_gini_type_range(self):
        sample = Dagum(1, 3, 1).sample(50, 12)
        for kind in ('G1', 'G2', 'G3'):
            estimate = index_estimate_quadrature(sample, 'HF', kind)
            self.assertEqual(estimate.method, IndexMethod.QUADRATURE)
            self.assertTrue(0.0 <= estimate.value <= 1.0)

    def test_equal_incomes(self):
        self.assertAlmostEqual(index_estimate_quadrature([2.0] * 5, 'WG', 'G2').value, 0.0, places=9)

    def test_classical_kind_rejected(self):
        with self.assertRaises(InvalidParameterError):
            index_estimate_quadrature([1.0, 2.0], 'HF', 'GI')


class ExactIndexTests(SimpleTestCase):
    def test_dagum_values(self):
        for a, qz_half, qz_one, qd_half, qd_one in DAGUM_INDICES:
            for b, qz, qd in ((0.5, qz_half, qd_half), (1.0, qz_one, qd_one)):
                dist = Dagum(1, a, b)
                self.assertAlmostEqual(index_exact(dist, 'qZI').value, qz, delta=5e-4, msg=str(dist))
                self.assertAlmostEqual(index_exact(dist, 'qDI').value, qd, delta=5e-4, msg=str(dist))

    def test_pareto_quantile_indices_ignore_mean(self):
        # alpha < 1: no finite mean, qZI and qDI are still defined
        value = index_exact(Pareto(1, 0.7), 'qDI').value
        self.assertTrue(0.0 < value < 1.0)

    def test_pareto_classical(self):
        dist = Pareto(1, 2)
        self.assertAlmostEqual(index_exact(dist, 'GI').value, 1 / 3, places=7)
        self.assertAlmostEqual(index_exact(dist, 'BI').value, 2 * math.log(2) - 1, places=7)
        self.assertAlmostEqual(index_exact(dist, 'ZI').value, 2 - 2 * math.log(2), places=7)
        self.assertAlmostEqual(index_exact(dist, 'DI').value, math.pi / 2 - 1, places=7)

    def test_classical_needs_finite_mean(self):
        with self.assertRaises(InfiniteMeanError):
            index_exact(Pareto(1, 0.9), 'GI')

    def test_exact_method_and_scheme(self):
        estimate = index_exact(Dagum(1, 4, 1), 'qZI')
        self.assertEqual(estimate.scheme, EXACT)
        self.assertEqual(estimate.n, 0)


class OracleTests(SimpleTestCase):
    def test_agrees_with_quadrature(self):
        for dist in (Dagum(1, 2, 1), Pareto(1, 3)):
            for kind in ('qZI', 'qDI'):
                oracle = mc_index_oracle(dist, kind, 200000, 1)
                exact = index_exact(dist, kind).value
                self.assertEqual(oracle.method, IndexMethod.MONTE_CARLO)
                self.assertLess(abs(oracle.value - exact), 5 * oracle.std_error, msg=f"{dist} {kind}")

    def test_reproducible(self):
        first = mc_index_oracle(Dagum(1, 4, 0.5), 'qZI', 1000, 99)
        second = mc_index_oracle(Dagum(1, 4, 0.5), 'qZI', 1000, 99)
        self.assertEqual(first, second)

    def test_single_draw_has_no_std_error(self):
        self.assertIsNone(mc_index_oracle(Dagum(1, 2, 1), 'qDI', 1, 5).std_error)

    def test_argument_checks(self):
        with self.assertRaises(InvalidParameterError):
            mc_index_oracle(Dagum(1, 2, 1), 'GI', 10, 1)
        with self.assertRaises(InvalidParameterError):
            mc_index_oracle(Dagum(1, 2, 1), 'qZI', 0, 1)


class SalaryDataTests(SimpleTestCase):
    def setUp(self):
        path = settings.DATASET_DIR / 'Salaries.csv'
        if not path.exists():
            raise unittest.SkipTest(f"{path} not available")
        spec = DataColumnSpec(str(path), 'salary', group_by='rank')
        self.groups = {group.name: group for group in load_groups(spec)}

    def test_hf_indices_by_rank(self):
        for name, (qz, qd) in SALARY_INDICES.items():
            sample = self.groups[name].sample
            self.assertAlmostEqual(index_estimate_closed_form(sample, 'HF', 'qZI').value, qz, delta=5e-5)
            self.assertAlmostEqual(index_estimate_closed_form(sample, 'HF', 'qDI').value, qd, delta=5e-5)


@pytest.mark.slow
class LargeSampleAgreementTests(SimpleTestCase):
    def test_closed_form_matches_quadrature_over_many_samples(self):
        dist = Dagum(1, 2, 1)
        for n in (10, 50, 200):
            for replicate in range(100):
                sample = dist.sample(n, [2024, n, replicate])
                for scheme in QuantileScheme:
                    for kind in ('qZI', 'qDI'):
                        closed = index_estimate_closed_form(sample, scheme, kind).value
                        numeric = index_estimate_quadrature(sample, scheme, kind).value
                        self.assertAlmostEqual(closed, numeric, delta=1e-8, msg=f"n={n} #{replicate} {scheme} {kind}")

    def test_oracle_matches_quadrature_for_every_setting(self):
        for a, *_ in DAGUM_INDICES:
            for b in (0.5, 1.0):
                dist = Dagum(1, a, b)
                for kind in ('qZI', 'qDI'):
                    oracle = mc_index_oracle(dist, kind, 10**6, [17, int(a * 10), int(b * 10)])
                    exact = index_exact(dist, kind).value
                    self.assertLess(abs(oracle.value - exact), 4 * oracle.std_error, msg=f"{dist} {kind}")

    def test_estimates_converge_for_every_setting(self):
        sizes = (50, 100, 500)
        for a, *_ in DAGUM_INDICES:
            for b in (0.5, 1.0):
                dist = Dagum(1, a, b)
                for kind in ('qZI', 'qDI'):
                    exact = index_exact(dist, kind).value
                    medians = [
                        np.median([
                            abs(index_estimate_closed_form(dist.sample(n, [41, n, i]), 'HF', kind).value - exact)
                            for i in range(200)
                        ])
                        for n in sizes
                    ]
                    self.assertTrue(medians[0] > medians[1] > medians[2], msg=f"{dist} {kind}: {medians}")

    def test_exact_oracle_and_large_sample_agree(self):
        dist = Dagum(1, 2, 1)
        n = 100_000
        sample = dist.sample(n, 2718)
        for kind, sigma2 in (('qZI', sigma2_Z(dist)), ('qDI', sigma2_D(dist))):
            exact = index_exact(dist, kind).value
            oracle = mc_index_oracle(dist, kind, n, 3141)
            estimate = index_estimate_closed_form(sample, 'HF', kind).value
            sample_error = math.sqrt(sigma2.value / n)

            self.assertLess(abs(oracle.value - exact), 4 * oracle.std_error, msg=kind)
            self.assertLess(abs(estimate - exact), 4 * sample_error, msg=kind)
            self.assertLess(
                abs(estimate - oracle.value),
                4 * math.hypot(sample_error, oracle.std_error),
                msg=kind,
            )
