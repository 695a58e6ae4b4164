import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np
import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase
from rest_framework.test import APIClient

from core.datasets import ALL_GROUP, DataColumnSpec, load_groups
from core.exceptions import (
    DataInputError,
    InfiniteMeanError,
    InvalidParameterError,
    NumericalError,
    QuadratureError,
    ReplicateError,
)
from core.formatting import frame_to_csv, round_significant
from core.quadrature import QuadratureSpec, integrate_function
from distributions.families import Dagum


class ExceptionTests(SimpleTestCase):
    def test_exit_codes(self):
        self.assertEqual(InvalidParameterError('x').exit_code, 2)
        self.assertEqual(DataInputError('x').exit_code, 2)
        self.assertEqual(QuadratureError('x').exit_code, 3)
        self.assertEqual(ReplicateError(10, 3, 'HF', 'boom').exit_code, 3)

    def test_invalid_parameter_is_value_error(self):
        self.assertIsInstance(InvalidParameterError('x'), ValueError)

    def test_data_input_error_lists_rows(self):
        error = DataInputError('bad values', rows=[3, 7])
        self.assertEqual(error.rows, [3, 7])
        self.assertIn('rows: 3, 7', str(error))

    def test_replicate_error_identifies_cell(self):
        error = ReplicateError(50, 12, 'WG', ValueError('nope'))
        self.assertIsInstance(error, NumericalError)
        self.assertEqual((error.sample_size, error.replicate, error.scheme), (50, 12, 'WG'))
        self.assertIn('n=50', str(error))

    def test_infinite_mean_error_keeps_distribution(self):
        error = InfiniteMeanError('pareto:xm=1,alpha=0.5')
        self.assertEqual(error.distribution, 'pareto:xm=1,alpha=0.5')


class QuadratureTests(SimpleTestCase):
    def test_smooth_integral(self):
        self.assertAlmostEqual(integrate_function(math.sin, 0.0, math.pi), 2.0, places=10)

    def test_many_break_points_are_chunked(self):
        steps = 300

        def staircase(x):
            return math.floor(x * steps) / steps

        points = np.arange(1, steps) / steps
        value = integrate_function(staircase, 0.0, 1.0, points=points)
        expected = sum(j / steps for j in range(steps)) / steps
        self.assertAlmostEqual(value, expected, places=8)

    def test_unconverged_integral_raises(self):
        spec = QuadratureSpec(abs_tol=1e-12, max_subdivisions=1)
        with self.assertRaises(QuadratureError):
            integrate_function(lambda x: math.sin(50 * x), 0.0, 10.0, spec)

    def test_empty_interval_rejected(self):
        with self.assertRaises(InvalidParameterError):
            integrate_function(math.sin, 1.0, 1.0)

    def test_spec_validation(self):
        with self.assertRaises(InvalidParameterError):
            QuadratureSpec(abs_tol=0.0)
        with self.assertRaises(InvalidParameterError):
            QuadratureSpec(rel_tol=-1.0)
        with self.assertRaises(InvalidParameterError):
            QuadratureSpec(max_subdivisions=0)

    def test_tightened_and_tolerance(self):
        spec = QuadratureSpec(abs_tol=1e-6, rel_tol=1e-4)
        tight = spec.tightened(100)
        self.assertAlmostEqual(tight.abs_tol, 1e-8)
        self.assertAlmostEqual(tight.rel_tol, 1e-6)
        self.assertEqual(spec.tolerance_for(1.0), 1e-4)
        self.assertEqual(spec.tolerance_for(0.0), 1e-6)

    def test_from_settings(self):
        spec = QuadratureSpec.from_settings()
        self.assertEqual(spec.abs_tol, 1e-9)
        self.assertEqual(spec.max_subdivisions, 2000)


class FormattingTests(SimpleTestCase):
    def test_round_significant(self):
        self.assertEqual(round_significant(123456.789, 3), 123000.0)
        self.assertEqual(round_significant(0.000123456, 2), 0.00012)
        self.assertEqual(round_significant(0.0, 6), 0.0)
        self.assertIsNone(round_significant(None, 6))
        self.assertTrue(math.isinf(round_significant(float('inf'), 6)))

    def test_frame_to_csv_rounds_float_columns(self):
        frame = pd.DataFrame({'n': [10], 'value': [0.123456789]})
        text = frame_to_csv(frame, 4)
        self.assertEqual(text, 'n,value\n10,0.1235\n')

    def test_frame_to_csv_blank_for_missing(self):
        frame = pd.DataFrame({'n': [1, 2], 'value': [0.5, float('nan')]})
        self.assertEqual(frame_to_csv(frame, 6), 'n,value\n1,0.5\n2,\n')


class DatasetTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, text, name='data.csv'):
        path = Path(self.tmp.name) / name
        path.write_text(text, encoding='utf-8')
        return str(path)


class LoadGroupsTests(DatasetTestCase):
    def test_groups_in_order_with_all_last(self):
        path = self.write('rank,salary\nProf,100\nAsst,60\nProf,120\nAsst,70\n')
        groups = load_groups(DataColumnSpec(path, 'salary', group_by='rank'))
        self.assertEqual([group.name for group in groups], ['Prof', 'Asst', ALL_GROUP])
        self.assertEqual(groups[0].sample.values.tolist(), [100.0, 120.0])
        self.assertEqual(groups[-1].n, 4)

    def test_column_by_position_without_header(self):
        path = self.write('a;1.5\nb;2.5\nc;0\n')
        (group,) = load_groups(DataColumnSpec(path, '2', delimiter=';', has_header=False))
        self.assertEqual(group.sample.values.tolist(), [0.0, 1.5, 2.5])
        self.assertEqual(group.zero_count, 1)

    def test_unparseable_rows_reported_with_line_numbers(self):
        path = self.write('x\n1\nabc\n2\n\n3\n')
        with self.assertRaises(DataInputError) as ctx:
            load_groups(DataColumnSpec(path, 'x'))
        self.assertEqual(ctx.exception.rows, [3])

    def test_skip_bad_keeps_going(self):
        path = self.write('x\n1\nabc\n2\n3\n')
        (group,) = load_groups(DataColumnSpec(path, 'x'), skip_bad=True)
        self.assertEqual(group.n, 3)
        self.assertEqual(group.skipped_rows, (3,))

    def test_negative_values_always_fail(self):
        path = self.write('x\n1\n-2\n3\n')
        with self.assertRaises(DataInputError) as ctx:
            load_groups(DataColumnSpec(path, 'x'), skip_bad=True)
        self.assertEqual(ctx.exception.rows, [3])

    def test_group_needs_two_positive_values(self):
        path = self.write('g,x\na,1\na,2\nb,0\nb,5\n')
        with self.assertRaises(DataInputError):
            load_groups(DataColumnSpec(path, 'x', group_by='g'))

    def test_missing_file_and_column(self):
        with self.assertRaises(DataInputError):
            load_groups(DataColumnSpec(os.path.join(self.tmp.name, 'nope.csv'), 'x'))
        path = self.write('x\n1\n2\n')
        with self.assertRaises(DataInputError):
            load_groups(DataColumnSpec(path, 'y'))


class HealthCheckTests(TestCase):
    def test_health_reports_database(self):
        response = APIClient().get('/health/')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['status'], 'healthy')
        self.assertEqual(response.data['database'], 'ok')
        self.assertEqual(response.data['service'], 'qineq_backend')


class CommandTests(DatasetTestCase):
    def call(self, *args):
        out = io.StringIO()
        call_command(*args, stdout=out, stderr=io.StringIO())
        return out.getvalue()

    def test_index_two_point_sample(self):
        path = self.write('x\n1\n3\n')
        text = self.call('index', '--data', path, '--column', 'x', '--scheme', 'E', '--kind', 'qZI')
        frame = pd.read_csv(io.StringIO(text))
        self.assertEqual(list(frame.columns), ['group', 'n', 'zero_count', 'kind', 'scheme', 'method', 'value'])
        self.assertEqual(frame.loc[0, 'method'], 'closed_form')
        self.assertAlmostEqual(frame.loc[0, 'value'], 2 / 3, places=5)

    def test_index_json_groups(self):
        path = self.write('g,x\na,1\na,2\nb,3\nb,9\n')
        text = self.call('index', '--data', path, '--column', 'x', '--group-by', 'g', '--format', 'json')
        data = json.loads(text)
        self.assertEqual([item['group'] for item in data], ['a', 'b', 'All'])
        self.assertEqual({e['kind'] for e in data[0]['estimates']}, {'qZI', 'qDI'})

    def test_index_gini_type_uses_quadrature(self):
        path = self.write('x\n1\n2\n4\n8\n')
        text = self.call('index', '--data', path, '--column', 'x', '--kind', 'G2')
        frame = pd.read_csv(io.StringIO(text))
        self.assertEqual(frame.loc[0, 'method'], 'quadrature')

    def test_curve_from_distribution(self):
        text = self.call('curve', '--dist', 'pareto:xm=1,alpha=2', '--kind', 'qD', '--grid-size', '1')
        frame = pd.read_csv(io.StringIO(text))
        self.assertEqual(list(frame.columns), ['p', 'value'])
        self.assertAlmostEqual(frame.loc[0, 'value'], 1 - math.sqrt(1 / 3), places=5)

    def test_curve_classical_kind_needs_distribution(self):
        path = self.write('x\n1\n2\n3\n')
        with self.assertRaises(CommandError) as ctx:
            self.call('curve', '--data', path, '--column', 'x', '--kind', 'L')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_exact_command(self):
        text = self.call('exact', 'pareto:xm=1,alpha=2', '--kind', 'GI', '--full-precision')
        frame = pd.read_csv(io.StringIO(text))
        self.assertAlmostEqual(frame.loc[0, 'value'], 1 / 3, places=8)

    def test_exact_infinite_mean_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('exact', 'pareto:xm=1,alpha=0.8', '--kind', 'GI')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_bad_distribution_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('exact', 'lognormal:mu=0')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_variance_command(self):
        text = self.call('variance', '--dist', 'dagum:a=4,b=1', '--kind', 'Z')
        frame = pd.read_csv(io.StringIO(text))
        self.assertEqual(frame.loc[0, 'kind'], 'Z')
        self.assertGreater(frame.loc[0, 'value'], 0)

    def test_output_to_file(self):
        out_path = os.path.join(self.tmp.name, 'out.json')
        self.call('exact', 'dagum:a=2,b=1', '--format', 'json', '--out', out_path)
        with open(out_path, encoding='utf-8') as handle:
            data = json.load(handle)
        self.assertEqual(data['dist'], 'dagum:sigma=1,a=2,b=1')
        self.assertEqual(len(data['estimates']), 2)

    def write_dagum_sample(self, n=60, seed=123):
        values = Dagum(1, 2, 1).sample(n, seed).values
        return self.write('x\n' + '\n'.join(repr(float(v)) for v in values) + '\n')

    def test_curve_midpoint_sum_matches_closed_form_index(self):
        path = self.write_dagum_sample()
        for curve, index in (('qZ', 'qZI'), ('qD', 'qDI')):
            with self.subTest(curve=curve):
                table = pd.read_csv(io.StringIO(self.call(
                    'curve', '--data', path, '--column', 'x', '--kind', curve,
                    '--scheme', 'HF', '--grid-size', '9999', '--full-precision',
                )))
                estimate = pd.read_csv(io.StringIO(self.call(
                    'index', '--data', path, '--column', 'x', '--kind', index,
                    '--scheme', 'HF', '--full-precision',
                )))
                self.assertEqual(len(table), 9999)
                self.assertAlmostEqual(table['value'].mean(), estimate.loc[0, 'value'], delta=1e-5)

    def test_unconverged_quadrature_exit_code(self):
        with self.settings(QUADRATURE_MAX_SUBDIVISIONS=1, QUADRATURE_ABS_TOL=1e-13):
            with self.assertRaises(CommandError) as ctx:
                self.call('exact', 'pareto:xm=1,alpha=1.2', '--kind', 'GI')
        self.assertEqual(ctx.exception.returncode, 3)

    def test_exact_dagum_documented_values(self):
        text = self.call('exact', 'dagum:sigma=1,a=4,b=0.5')
        frame = pd.read_csv(io.StringIO(text)).set_index('kind')
        self.assertAlmostEqual(frame.loc['qZI', 'value'], 0.5973, delta=5e-4)
        self.assertAlmostEqual(frame.loc['qDI', 'value'], 0.5105, delta=5e-4)

    def test_reruns_are_byte_identical(self):
        path = self.write_dagum_sample()
        runs = (
            ('index', '--data', path, '--column', 'x', '--full-precision'),
            ('curve', '--data', path, '--column', 'x', '--kind', 'qD', '--full-precision'),
            ('exact', 'dagum:sigma=1,a=2,b=1', '--monte-carlo', '20000', '--seed', '5', '--full-precision'),
        )
        for args in runs:
            with self.subTest(command=args[0]):
                self.assertEqual(self.call(*args), self.call(*args))
