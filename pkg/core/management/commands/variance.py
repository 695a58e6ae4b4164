from django.conf import settings
import numpy as np
import pandas as pd

from asymptotics.serializers import VarianceResultSerializer, VarianceSweepRowSerializer
from asymptotics.variance import sigma2_D, sigma2_Z, variance_sweep
from core.exceptions import InvalidParameterError
from core.management.base import InequalityCommand
from core.quadrature import QuadratureSpec
from distributions.parsing import parse_distribution

EVALUATORS = {'Z': sigma2_Z, 'D': sigma2_D}


class Command(InequalityCommand):
    help = 'Asymptotic variances of the empirical qZI and qDI estimators'

    def add_arguments(self, parser):
        parser.add_argument('--dist', action='append', help='Distribution (repeatable)')
        parser.add_argument(
            '--a-range',
            nargs=3,
            type=float,
            metavar=('START', 'STOP', 'COUNT'),
            help='Sweep the Dagum shape a over COUNT evenly spaced values',
        )
        parser.add_argument('--sigma', type=float, default=1.0, help='Dagum scale for --a-range')
        parser.add_argument('--b', type=float, default=1.0, help='Dagum shape b for --a-range')
        parser.add_argument('--kind', action='append', choices=['Z', 'D'], help='Variance kind (default both)')
        parser.add_argument('--epsilon', type=float, help='Truncation of (0, 1) at both ends')
        self.add_output_arguments(parser)

    def run(self, **options):
        if bool(options['dist']) == bool(options['a_range']):
            raise InvalidParameterError('give either --dist or --a-range')
        quad = QuadratureSpec.from_settings()
        epsilon = options['epsilon'] or settings.VARIANCE_EPSILON
        context = {'digits': self.digits(options)}

        if options['a_range']:
            start, stop, count = options['a_range']
            if count < 1 or int(count) != count:
                raise InvalidParameterError('COUNT must be a positive integer')
            a_values = np.linspace(start, stop, int(count))
            rows = variance_sweep(a_values, sigma=options['sigma'], b=options['b'], quad=quad, epsilon=epsilon)
            if options['format'] == 'json':
                self.emit_json(VarianceSweepRowSerializer(rows, many=True, context=context).data, options)
            else:
                self.emit_frame(pd.DataFrame(rows), options)
            return

        kinds = options['kind'] or ['Z', 'D']
        results = [
            EVALUATORS[kind](parse_distribution(text), quad, epsilon)
            for text in options['dist']
            for kind in kinds
        ]
        if options['format'] == 'json':
            self.emit_json(VarianceResultSerializer(results, many=True, context=context).data, options)
            return
        frame = pd.DataFrame([
            {'kind': result.kind, 'dist': str(result.dist), 'value': result.value}
            for result in results
        ])
        self.emit_frame(frame, options)
