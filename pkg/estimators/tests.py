from pathlib import Path

import numpy as np
import pandas as pd
from django.test import SimpleTestCase

from core.exceptions import DegenerateSampleError, InvalidParameterError
from distributions.families import Dagum
from estimators.quantiles import QuantileEstimate, QuantileScheme, edf, plotting_positions
from estimators.samples import Sample

FIXTURES = Path(__file__).resolve().parent / 'fixtures'

NUMPY_METHODS = {
    QuantileScheme.E: 'inverted_cdf',
    QuantileScheme.H: 'hazen',
    QuantileScheme.HF: 'median_unbiased',
    QuantileScheme.WG: 'weibull',
}


class SampleTests(SimpleTestCase):
    def test_sorted_and_read_only(self):
        sample = Sample([3.0, 0.0, 1.0])
        self.assertEqual(sample.values.tolist(), [0.0, 1.0, 3.0])
        self.assertEqual(sample.zero_count, 1)
        self.assertEqual(sample.positive_count, 2)
        with self.assertRaises(ValueError):
            sample.values[0] = 5.0

    def test_validation(self):
        for bad in ([], [1.0, float('nan')], [1.0, float('inf')], [-1.0, 2.0]):
            with self.assertRaises(InvalidParameterError):
                Sample(bad)

    def test_from_values(self):
        sample = Sample.from_values(x for x in (3.0, 1.0, 2.0))
        self.assertEqual(sample.values.tolist(), [1.0, 2.0, 3.0])
        self.assertIs(Sample.from_values(sample), sample)
        with self.assertRaises(InvalidParameterError):
            Sample.from_values(iter([1.0, -1.0]))

    def test_scaled(self):
        sample = Sample([1.0, 2.0]).scaled(3)
        self.assertEqual(sample.values.tolist(), [3.0, 6.0])
        with self.assertRaises(InvalidParameterError):
            Sample([1.0]).scaled(0)

    def test_require_positive(self):
        with self.assertRaises(DegenerateSampleError):
            Sample([0.0, 0.0]).require_positive()


class SchemeTests(SimpleTestCase):
    def test_parse(self):
        self.assertIs(QuantileScheme.parse('hf'), QuantileScheme.HF)
        with self.assertRaises(InvalidParameterError):
            QuantileScheme.parse('type7')

    def test_reference_types(self):
        self.assertEqual(
            [scheme.reference_type for scheme in QuantileScheme], [1, 5, 8, 6]
        )

    def test_plotting_positions(self):
        np.testing.assert_allclose(plotting_positions('HF', 3), [0.2, 0.5, 0.8])
        np.testing.assert_allclose(plotting_positions('H', 4), [0.125, 0.375, 0.625, 0.875])
        np.testing.assert_allclose(plotting_positions('WG', 3), [0.25, 0.5, 0.75])
        with self.assertRaises(InvalidParameterError):
            plotting_positions('E', 3)

    def test_edf(self):
        sample = Sample([1.0, 2.0, 2.0, 5.0])
        self.assertEqual(edf(sample, 2.0), 0.75)
        self.assertEqual(edf(sample, 0.5), 0.0)
        np.testing.assert_array_equal(edf(sample, [1.0, 10.0]), [0.25, 1.0])


class QuantileEstimateTests(SimpleTestCase):
    def setUp(self):
        self.sample = Sample([2.0, 4.0, 7.0, 11.0, 16.0])

    def test_agrees_with_numpy(self):
        """
        numpy interpolates with a different formula, so agreement is to
        rounding only; bit-level checks use the reference table.
        """
        rng = np.random.default_rng(11)
        p = np.sort(rng.uniform(0.001, 0.999, size=211))
        tied = np.repeat(rng.integers(0, 20, size=12).astype(float), 3)
        for values in (rng.lognormal(size=37), tied):
            for scheme, method in NUMPY_METHODS.items():
                est = QuantileEstimate(values, scheme)
                np.testing.assert_allclose(
                    est.ppf(p), np.quantile(values, p, method=method), rtol=1e-12, atol=1e-12,
                    err_msg=str(scheme),
                )

    def test_extremes_clamp(self):
        est = QuantileEstimate(self.sample, 'WG')
        self.assertEqual(est.ppf(0.01), 2.0)
        self.assertEqual(est.ppf(0.99), 16.0)
        self.assertEqual(est.ppf(0.0), 2.0)
        self.assertEqual(est.ppf(1.0), 16.0)

    def test_monotone(self):
        values = Sample(np.random.default_rng(3).pareto(2.0, size=50))
        p = np.linspace(0.0005, 0.9995, 999)
        for scheme in QuantileScheme:
            q = QuantileEstimate(values, scheme).ppf(p)
            self.assertTrue(np.all(np.diff(q) >= -1e-12 * q[-1]), msg=str(scheme))

    def test_scale_equivariant(self):
        p = np.linspace(0.01, 0.99, 99)
        for scheme in QuantileScheme:
            base = QuantileEstimate(self.sample, scheme).ppf(p)
            scaled = QuantileEstimate(self.sample.scaled(4.0), scheme).ppf(p)
            np.testing.assert_array_equal(scaled, 4.0 * base)

    def test_breakpoints(self):
        est = QuantileEstimate(self.sample, 'E')
        np.testing.assert_allclose(est.breakpoints(), [0.2, 0.4, 0.6, 0.8])
        est = QuantileEstimate(self.sample, 'WG')
        np.testing.assert_allclose(est.breakpoints(), np.arange(1, 6) / 6)

    def test_checked_evaluation(self):
        est = QuantileEstimate(self.sample, 'H')
        with self.assertRaises(InvalidParameterError):
            est.quantile_at(0.0)
        self.assertIsInstance(est.quantile_at(0.5), float)

    def test_single_observation(self):
        est = QuantileEstimate([5.0], 'HF')
        self.assertEqual(est.ppf(0.3), 5.0)


class ReferenceQuantileTests(SimpleTestCase):
    """
    Values of R's quantile(x, p, type = 1, 5, 8, 6), stored with 17
    significant digits; see fixtures/reference_quantiles.R.
    """

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        samples = pd.read_csv(FIXTURES / 'reference_samples.csv', float_precision='round_trip')
        cls.samples = {name: rows['value'].to_numpy() for name, rows in samples.groupby('sample')}
        cls.table = pd.read_csv(FIXTURES / 'reference_quantiles.csv', float_precision='round_trip')

    def test_table_coverage(self):
        self.assertGreaterEqual(len(self.table), 200)
        self.assertEqual(set(self.table['scheme']), {'E', 'H', 'HF', 'WG'})
        tied = self.samples['tied']
        self.assertLess(np.unique(tied).size, tied.size)
        self.assertTrue((self.table['p'] < 0.01).any() and (self.table['p'] > 0.99).any())

    def test_matches_bit_for_bit(self):
        for (name, scheme), rows in self.table.groupby(['sample', 'scheme']):
            est = QuantileEstimate(self.samples[name], scheme)
            np.testing.assert_array_equal(
                est.quantile_at(rows['p'].to_numpy()),
                rows['expected'].to_numpy(),
                err_msg=f"{name} {scheme}",
            )

    def test_rounding_sensitive_values(self):
        est = QuantileEstimate(self.samples['spread'], 'WG')
        self.assertEqual(est.quantile_at(0.7), 11.999999999999996)
        est = QuantileEstimate(self.samples['spread'], 'HF')
        self.assertEqual(est.quantile_at(0.25), 3.3333333333333335)
        self.assertEqual(est.quantile_at(0.7), 11.333333333333332)


class QuantileConsistencyTests(SimpleTestCase):
    def test_error_shrinks_with_sample_size(self):
        dist = Dagum(1, 2, 1)
        p = np.array([0.1, 0.5, 0.9])
        truth = dist.quantile(p)
        sizes = (100, 1000, 10000)
        for scheme in QuantileScheme:
            medians = []
            for n in sizes:
                errors = [
                    np.abs(QuantileEstimate(dist.sample(n, [5, n, i]), scheme).quantile_at(p) - truth)
                    for i in range(200)
                ]
                medians.append(np.median(errors, axis=0))
            for point in range(p.size):
                trend = [median[point] for median in medians]
                self.assertTrue(trend[0] > trend[1] > trend[2], msg=f"{scheme} p={p[point]}: {trend}")
