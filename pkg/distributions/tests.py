import math

import numpy as np
from django.test import SimpleTestCase
from scipy import integrate, stats

from core.exceptions import InfiniteMeanError, InvalidParameterError
from distributions.families import Dagum, Pareto
from distributions.parsing import format_distribution, parse_distribution
from distributions.random import UINT64_MAX, open_uniforms, replicate_seed, seed_sequence


class DagumTests(SimpleTestCase):
    def test_median_and_cdf(self):
        dist = Dagum(1, 2, 1)
        self.assertAlmostEqual(dist.quantile(0.5), 1.0, places=14)
        self.assertAlmostEqual(dist.cdf(1.0), 0.5, places=14)

    def test_scale_parameter(self):
        self.assertAlmostEqual(Dagum(3, 2, 1).quantile(0.5), 3.0, places=13)

    def test_quantile_cdf_round_trip(self):
        dist = Dagum(1.5, 0.8, 0.5)
        p = np.array([1e-6, 0.01, 0.3, 0.5, 0.9, 0.999999])
        np.testing.assert_allclose(dist.cdf(dist.quantile(p)), p, rtol=1e-10)

    def test_density_matches_cdf_slope(self):
        dist = Dagum(1, 4, 0.5)
        for x in (0.3, 1.0, 2.5):
            h = 1e-6 * x
            slope = (dist.cdf(x + h) - dist.cdf(x - h)) / (2 * h)
            self.assertAlmostEqual(dist.density(x) / slope, 1.0, places=6)

    def test_quantile_derivative(self):
        dist = Dagum(1, 2, 2)
        p = 0.3
        self.assertAlmostEqual(dist.quantile_derivative(p) * dist.density(dist.quantile(p)), 1.0, places=12)

    def test_mean(self):
        # sigma * Gamma(b + 1/a) * Gamma(1 - 1/a) / Gamma(b)
        self.assertAlmostEqual(Dagum(1, 2, 1).mean(), math.pi / 2, places=8)
        expected = 2 * math.gamma(0.5 + 0.25) * math.gamma(0.75) / math.gamma(0.5)
        self.assertAlmostEqual(Dagum(2, 4, 0.5).mean() / expected, 1.0, places=8)

    def test_infinite_mean(self):
        dist = Dagum(1, 0.8, 1)
        self.assertFalse(dist.has_finite_mean)
        with self.assertRaises(InfiniteMeanError):
            dist.mean()

    def test_parameter_validation(self):
        for bad in ((0, 1, 1), (1, -2, 1), (1, 1, float('nan'))):
            with self.assertRaises(InvalidParameterError):
                Dagum(*bad)

    def test_argument_checks(self):
        dist = Dagum(1, 2, 1)
        with self.assertRaises(InvalidParameterError):
            dist.quantile(1.0)
        with self.assertRaises(InvalidParameterError):
            dist.cdf(-1.0)
        with self.assertRaises(InvalidParameterError):
            dist.density(0.0)


class ParetoTests(SimpleTestCase):
    def test_quantile(self):
        self.assertAlmostEqual(Pareto(1, 2).quantile(0.75), 2.0, places=14)
        self.assertAlmostEqual(Pareto(3, 1).quantile(0.5), 6.0, places=14)

    def test_cdf_and_support(self):
        dist = Pareto(2, 3)
        self.assertEqual(dist.cdf(1.0), 0.0)
        self.assertAlmostEqual(dist.cdf(4.0), 1 - 0.125, places=14)
        with self.assertRaises(InvalidParameterError):
            dist.density(1.5)
        self.assertAlmostEqual(dist.density(2.0), 1.5, places=14)

    def test_mean(self):
        self.assertEqual(Pareto(1, 2).mean(), 2.0)
        with self.assertRaises(InfiniteMeanError):
            Pareto(1, 1).mean()


class SamplingTests(SimpleTestCase):
    def test_same_seed_same_sample(self):
        dist = Dagum(1, 2, 0.5)
        first = dist.sample(100, 42)
        second = dist.sample(100, 42)
        np.testing.assert_array_equal(first.values, second.values)
        self.assertFalse(np.array_equal(first.values, dist.sample(100, 43).values))

    def test_sample_is_sorted_and_positive(self):
        sample = Pareto(1, 0.7).sample(500, [7, 500, 1])
        self.assertTrue(np.all(np.diff(sample.values) >= 0))
        self.assertTrue(np.all(sample.values >= 1.0))

    def test_goodness_of_fit(self):
        for dist in (Dagum(1, 2, 0.5), Dagum(1, 4, 1), Pareto(1, 3)):
            sample = dist.sample(10_000, 20240917)
            result = stats.kstest(sample.values, dist.cdf)
            self.assertGreater(result.pvalue, 0.01, msg=str(dist))

    def test_sample_median(self):
        dist = Dagum(1, 2, 1)
        n = 100_000
        median = np.median(dist.sample(n, 31).values)
        # binomial standard error of the sample median
        std_error = 0.5 / math.sqrt(n) / dist.density(dist.quantile(0.5))
        self.assertLess(abs(median - 1.0), 3 * std_error)

    def test_pareto_draws_respect_support(self):
        self.assertGreaterEqual(Pareto(1, 2).sample(100_000, 3).values[0], 1.0)

    def test_bad_sample_size(self):
        with self.assertRaises(InvalidParameterError):
            Dagum(1, 2, 1).sample(0, 1)


class RandomTests(SimpleTestCase):
    def test_uniforms_stay_open(self):
        u = open_uniforms(10000, 5)
        self.assertTrue(np.all((u > 0) & (u < 1)))

    def test_seed_words_validated(self):
        seed_sequence(UINT64_MAX)
        for bad in (-1, UINT64_MAX + 1, 1.5, []):
            with self.assertRaises(InvalidParameterError):
                seed_sequence(bad)

    def test_replicate_streams_are_independent_of_order(self):
        first = open_uniforms(5, replicate_seed(9, 50, 3))
        open_uniforms(5, replicate_seed(9, 50, 2))
        again = open_uniforms(5, replicate_seed(9, 50, 3))
        np.testing.assert_array_equal(first, again)
        other = open_uniforms(5, replicate_seed(9, 100, 3))
        self.assertFalse(np.array_equal(first, other))


class ParsingTests(SimpleTestCase):
    def test_defaults(self):
        self.assertEqual(parse_distribution('dagum:a=2,b=0.5'), Dagum(1, 2, 0.5))
        self.assertEqual(parse_distribution('Pareto: alpha=3'), Pareto(1, 3))

    def test_format_round_trip(self):
        dist = Dagum(1.25, 4, 0.5)
        self.assertEqual(format_distribution(dist), 'dagum:sigma=1.25,a=4,b=0.5')
        self.assertEqual(parse_distribution(str(dist)), dist)

    def test_errors(self):
        for text in ('dagum', 'lognormal:mu=1', 'dagum:a=2', 'dagum:a=2,b=x', 'pareto:alpha=2,c=1'):
            with self.assertRaises(InvalidParameterError, msg=text):
                parse_distribution(text)


class FamilyPropertyTests(SimpleTestCase):
    FAMILIES = (Dagum(1, 2, 1), Dagum(1, 4, 0.5), Dagum(2.5, 0.8, 0.5), Pareto(1, 3), Pareto(2, 0.7))

    def test_round_trip_on_grid(self):
        p = np.arange(1, 100) / 100
        for dist in self.FAMILIES:
            np.testing.assert_allclose(dist.cdf(dist.quantile(p)), p, rtol=0, atol=1e-10, err_msg=str(dist))

    def test_density_integrates_to_one(self):
        for dist in self.FAMILIES:
            lower = getattr(dist, 'xm', 0.0)
            split = dist.quantile(0.5)
            head, _ = integrate.quad(dist.density, lower, split, epsabs=1e-11, limit=200)
            tail, _ = integrate.quad(dist.density, split, np.inf, epsabs=1e-11, limit=200)
            self.assertAlmostEqual(head + tail, 1.0, delta=1e-6, msg=str(dist))
