import pandas as pd

from core.datasets import load_groups
from core.management.base import SCHEME_CHOICES, InequalityCommand
from core.quadrature import QuadratureSpec
from indices.closed_form import index_estimate_closed_form
from indices.kinds import CLOSED_FORM_KINDS, SAMPLE_KINDS, IndexKind
from indices.plug_in import index_estimate_quadrature
from indices.serializers import GroupIndexSerializer


class Command(InequalityCommand):
    help = 'Estimate quantile inequality indices from a column of data'

    def add_arguments(self, parser):
        self.add_data_arguments(parser)
        parser.add_argument(
            '--scheme',
            action='append',
            choices=SCHEME_CHOICES,
            help='Quantile scheme (repeatable, default HF)',
        )
        parser.add_argument(
            '--kind',
            action='append',
            choices=[kind.value for kind in SAMPLE_KINDS],
            help='Index kind (repeatable, default qZI and qDI)',
        )
        self.add_output_arguments(parser)

    def run(self, **options):
        groups = load_groups(self.data_spec(options), skip_bad=options['skip_bad'])
        schemes = options['scheme'] or ['HF']
        kinds = [IndexKind.parse(kind) for kind in (options['kind'] or ['qZI', 'qDI'])]
        quad = QuadratureSpec.from_settings()

        results = []
        for group in groups:
            estimates = []
            for kind in kinds:
                for scheme in schemes:
                    if kind in CLOSED_FORM_KINDS:
                        estimates.append(index_estimate_closed_form(group.sample, scheme, kind))
                    else:
                        estimates.append(index_estimate_quadrature(group.sample, scheme, kind, quad))
            results.append({
                'group': group.name,
                'n': group.n,
                'zero_count': group.zero_count,
                'estimates': estimates,
            })

        if options['format'] == 'json':
            data = GroupIndexSerializer(results, many=True, context={'digits': self.digits(options)}).data
            self.emit_json(data, options)
            return

        rows = [
            {
                'group': result['group'],
                'n': result['n'],
                'zero_count': result['zero_count'],
                'kind': estimate.kind.value,
                'scheme': estimate.scheme,
                'method': estimate.method.value,
                'value': estimate.value,
            }
            for result in results
            for estimate in result['estimates']
        ]
        self.emit_frame(pd.DataFrame(rows), options)
