from django.conf import settings
import pandas as pd

from core.datasets import load_groups
from core.exceptions import InvalidParameterError
from core.management.base import SCHEME_CHOICES, InequalityCommand
from core.quadrature import QuadratureSpec
from curves.kinds import CurveKind
from curves.serializers import CurveTableSerializer
from curves.tables import tabulate, uniform_grid
from distributions.parsing import parse_distribution
from estimators.quantiles import QuantileEstimate


class Command(InequalityCommand):
    help = 'Tabulate an inequality curve on a uniform interior grid'

    def add_arguments(self, parser):
        parser.add_argument('--dist', help="Distribution, e.g. 'dagum:sigma=1,a=2,b=1'")
        self.add_data_arguments(parser, required=False)
        parser.add_argument(
            '--kind',
            default='qZ',
            choices=[kind.value for kind in CurveKind],
            help='Curve kind (default qZ)',
        )
        parser.add_argument('--scheme', choices=SCHEME_CHOICES, help='Quantile scheme for data (default HF)')
        parser.add_argument('--grid-size', type=int, help='Number of grid points (default from settings)')
        self.add_output_arguments(parser)

    def run(self, **options):
        if bool(options['dist']) == bool(options['data']):
            raise InvalidParameterError('give exactly one of --dist or --data')
        kind = CurveKind.parse(options['kind'])
        grid = uniform_grid(options['grid_size'] or settings.CURVE_GRID_SIZE)
        quad = QuadratureSpec.from_settings()

        if options['dist']:
            if options['scheme']:
                raise InvalidParameterError('--scheme applies to --data only')
            tables = [(None, tabulate(parse_distribution(options['dist']), kind, grid, quad))]
        else:
            if kind.is_classical:
                raise InvalidParameterError(f"{kind} is only defined for parametric distributions")
            scheme = options['scheme'] or 'HF'
            groups = load_groups(self.data_spec(options), skip_bad=options['skip_bad'])
            if not options['group_by']:
                groups = groups[-1:]
            tables = [
                (group.name, tabulate(QuantileEstimate(group.sample, scheme), kind, grid))
                for group in groups
            ]

        if options['format'] == 'json':
            context = {'digits': self.digits(options)}
            data = []
            for name, table in tables:
                item = dict(CurveTableSerializer(table, context=context).data)
                if name is not None:
                    item['group'] = name
                data.append(item)
            self.emit_json(data if len(data) > 1 else data[0], options)
            return

        frames = []
        for name, table in tables:
            frame = table.to_frame()
            if options['group_by']:
                frame.insert(0, 'group', name)
            frames.append(frame)
        self.emit_frame(pd.concat(frames, ignore_index=True), options)
