import pandas as pd

from core.exceptions import InvalidParameterError
from core.management.base import InequalityCommand
from core.quadrature import QuadratureSpec
from distributions.parsing import parse_distribution
from indices.exact import index_exact
from indices.kinds import IndexKind
from indices.oracle import mc_index_oracle
from indices.serializers import IndexEstimateSerializer


class Command(InequalityCommand):
    help = 'Exact inequality indices of a parametric distribution'

    def add_arguments(self, parser):
        parser.add_argument('dist', help="Distribution, e.g. 'dagum:sigma=1,a=4,b=0.5'")
        parser.add_argument(
            '--kind',
            action='append',
            choices=[kind.value for kind in IndexKind],
            help='Index kind (repeatable, default qZI and qDI)',
        )
        parser.add_argument(
            '--monte-carlo',
            type=int,
            metavar='REPS',
            help='Also report the Monte Carlo oracle with this many draws (qZI/qDI only)',
        )
        parser.add_argument('--seed', type=int, help='Seed for --monte-carlo')
        self.add_output_arguments(parser)

    def run(self, **options):
        dist = parse_distribution(options['dist'])
        kinds = [IndexKind.parse(kind) for kind in (options['kind'] or ['qZI', 'qDI'])]
        quad = QuadratureSpec.from_settings()

        estimates = [index_exact(dist, kind, quad) for kind in kinds]
        if options['monte_carlo']:
            if options['seed'] is None:
                raise InvalidParameterError('--monte-carlo needs --seed')
            estimates.extend(
                mc_index_oracle(dist, kind, options['monte_carlo'], options['seed'])
                for kind in kinds
                if kind in (IndexKind.QZI, IndexKind.QDI)
            )

        if options['format'] == 'json':
            data = {
                'dist': str(dist),
                'estimates': IndexEstimateSerializer(
                    estimates, many=True, context={'digits': self.digits(options)}
                ).data,
            }
            self.emit_json(data, options)
            return

        frame = pd.DataFrame([
            {
                'dist': str(dist),
                'kind': estimate.kind.value,
                'method': estimate.method.value,
                'value': estimate.value,
                'std_error': estimate.std_error,
            }
            for estimate in estimates
        ])
        if frame['std_error'].isna().all():
            frame = frame.drop(columns='std_error')
        self.emit_frame(frame, options)
