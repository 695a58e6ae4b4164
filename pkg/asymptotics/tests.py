import numpy as np
import pytest
from django.test import SimpleTestCase

from asymptotics.intervals import normal_ci
from asymptotics.serializers import VarianceResultSerializer
from asymptotics.variance import (
    VarianceResult,
    graded_mesh,
    sigma2_D,
    sigma2_Z,
    triangle_integrals,
    variance_sweep,
    weight_functions,
)
from core.exceptions import InvalidParameterError, NumericalError
from core.quadrature import DEFAULT_QUADRATURE
from distributions.families import Dagum
from indices.closed_form import index_estimate_closed_form
from indices.estimates import EXACT, IndexEstimate, IndexMethod
from indices.exact import index_exact
from indices.kinds import IndexKind

DIST = Dagum(1, 4, 1)


def variance_result(kind, value):
    return VarianceResult(kind=kind, value=value, dist=DIST, quad=DEFAULT_QUADRATURE)


class MeshTests(SimpleTestCase):
    def test_graded_mesh(self):
        mesh = graded_mesh(1e-6)
        self.assertEqual(mesh[0], 1e-6)
        self.assertAlmostEqual(mesh[-1], 1 - 1e-6, places=15)
        self.assertIn(0.5, mesh.tolist())
        self.assertTrue(np.all(np.diff(mesh) > 0))
        np.testing.assert_allclose(mesh + mesh[::-1], 1.0, atol=1e-15)

    def test_epsilon_range(self):
        for bad in (0.0, 0.3, -1e-3):
            with self.assertRaises(InvalidParameterError):
                graded_mesh(bad)


class WeightTests(SimpleTestCase):
    def test_weights_positive(self):
        p = np.linspace(0.001, 0.999, 200)
        for dist in (DIST, Dagum(1, 0.8, 0.5)):
            for values in weight_functions(dist, p):
                self.assertTrue(np.all(values > 0))

    def test_scalar_weights(self):
        weights = weight_functions(DIST, 0.5)
        self.assertEqual(len(weights), 4)
        for value in weights:
            self.assertIsInstance(value, float)
            self.assertGreater(value, 0.0)

    def test_argument_range(self):
        with self.assertRaises(InvalidParameterError):
            weight_functions(DIST, 1.0)


class VarianceTests(SimpleTestCase):
    def test_triangles_symmetric(self):
        for kind in ('Z', 'D'):
            lower, upper, nodes = triangle_integrals(DIST, kind)
            self.assertAlmostEqual(lower, upper, delta=1e-8 * max(1.0, abs(lower)))
            self.assertIn(nodes, (16, 32, 64, 128))

    def test_positive_and_scale_free(self):
        for evaluate in (sigma2_Z, sigma2_D):
            base = evaluate(DIST)
            self.assertGreater(base.value, 0.0)
            for sigma in (0.5, 2.0):
                scaled = evaluate(Dagum(sigma, 4, 1))
                self.assertAlmostEqual(scaled.value, base.value, delta=1e-8 * base.value)

    def test_variance_small_near_extreme_inequality(self):
        # qZI is 0.9932 at a = 0.5 and 0.7344 at a = 2
        self.assertLess(sigma2_Z(Dagum(1, 0.5, 1)).value, sigma2_Z(Dagum(1, 2, 1)).value)

    def test_result_fields(self):
        result = sigma2_D(DIST, epsilon=1e-5)
        self.assertEqual(result.kind, 'D')
        self.assertEqual(result.epsilon, 1e-5)
        data = VarianceResultSerializer(result, context={'digits': 6}).data
        self.assertEqual(data['dist'], 'dagum:sigma=1,a=4,b=1')

    def test_negative_variance_rejected(self):
        with self.assertRaises(NumericalError):
            variance_result('Z', -0.1)

    def test_unknown_kind(self):
        with self.assertRaises(InvalidParameterError):
            triangle_integrals(DIST, 'G')

    def test_sweep_rows(self):
        rows = variance_sweep([2.0, 4.0], b=1.0)
        self.assertEqual([row['a'] for row in rows], [2.0, 4.0])
        self.assertEqual(set(rows[0]), {'a', 'qZI', 'sigma2_Z', 'qDI', 'sigma2_D'})
        self.assertAlmostEqual(rows[1]['qZI'], 0.4912, delta=5e-4)


class NormalIntervalTests(SimpleTestCase):
    def test_interval(self):
        estimate = IndexEstimate(IndexKind.QZI, 0.5, 'HF', IndexMethod.CLOSED_FORM, n=100)
        low, high = normal_ci(estimate, variance_result('Z', 0.25))
        self.assertAlmostEqual(low, 0.5 - 1.959963985 * 0.05, places=8)
        self.assertAlmostEqual(high, 0.5 + 1.959963985 * 0.05, places=8)

    def test_level(self):
        estimate = IndexEstimate(IndexKind.QDI, 0.4, 'E', IndexMethod.CLOSED_FORM, n=400)
        narrow = normal_ci(estimate, variance_result('D', 0.3), level=0.8)
        wide = normal_ci(estimate, variance_result('D', 0.3), level=0.99)
        self.assertLess(narrow[1] - narrow[0], wide[1] - wide[0])

    def test_truncated_to_unit_interval(self):
        estimate = IndexEstimate(IndexKind.QZI, 0.98, 'HF', IndexMethod.CLOSED_FORM, n=25)
        low, high = normal_ci(estimate, variance_result('Z', 1.0))
        self.assertEqual(high, 1.0)
        self.assertAlmostEqual(low, 0.98 - 1.959963985 * 0.2, places=8)

    def test_errors(self):
        sample_estimate = IndexEstimate(IndexKind.QZI, 0.5, 'HF', IndexMethod.CLOSED_FORM, n=100)
        with self.assertRaises(InvalidParameterError):
            normal_ci(sample_estimate, variance_result('D', 0.2))
        with self.assertRaises(InvalidParameterError):
            normal_ci(sample_estimate, variance_result('Z', 0.2), level=1.0)
        exact = IndexEstimate(IndexKind.QZI, 0.5, EXACT, IndexMethod.QUADRATURE)
        with self.assertRaises(InvalidParameterError):
            normal_ci(exact, variance_result('Z', 0.2))


@pytest.mark.slow
class ReplicateSpreadTests(SimpleTestCase):
    """
    n * Var(estimate) over replicates against sigma^2, and coverage of the
    normal interval.
    """

    def test_spread_and_coverage(self):
        dist = Dagum(1, 2, 1)
        n, replications = 5000, 2000
        for kind, evaluate in ((IndexKind.QZI, sigma2_Z), (IndexKind.QDI, sigma2_D)):
            sigma2 = evaluate(dist)
            exact = index_exact(dist, kind).value
            estimates = [
                index_estimate_closed_form(dist.sample(n, [31, n, i]), 'HF', kind)
                for i in range(replications)
            ]
            values = np.array([estimate.value for estimate in estimates])
            self.assertAlmostEqual(n * values.var(ddof=1) / sigma2.value, 1.0, delta=0.10)

            covered = sum(low <= exact <= high for low, high in (normal_ci(e, sigma2) for e in estimates))
            self.assertTrue(0.93 <= covered / replications <= 0.97, msg=f"{kind} coverage")
