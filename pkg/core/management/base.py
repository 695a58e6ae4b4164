"""
Shared plumbing for the inequality management commands.
"""

import logging

from django.core.management.base import BaseCommand, CommandError

from core.datasets import DataColumnSpec
from core.exceptions import InequalityError, InvalidParameterError
from core.formatting import frame_to_csv, output_digits, render_json, write_output

logger = logging.getLogger(__name__)

SCHEME_CHOICES = ['E', 'H', 'HF', 'WG']


class InequalityCommand(BaseCommand):
    """
    Base command: subclasses implement ``run``; toolkit errors become
    CommandError with exit code 2 (input) or 3 (numerical).
    """

    def add_output_arguments(self, parser, formats=('csv', 'json')):
        parser.add_argument('--out', help='Write output to this file instead of stdout')
        parser.add_argument('--format', choices=formats, default=formats[0], help='Output format')
        parser.add_argument(
            '--full-precision',
            action='store_true',
            help='Print 17 significant digits instead of the default',
        )

    def add_data_arguments(self, parser, required=True):
        parser.add_argument('--data', required=required, help='Delimited text file with observations')
        parser.add_argument('--column', help='Value column name or 1-based position')
        parser.add_argument('--delimiter', default=',', help='Field delimiter (default comma)')
        parser.add_argument('--no-header', action='store_true', help='The file has no header row')
        parser.add_argument('--group-by', help='Column to group rows by')
        parser.add_argument(
            '--skip-bad',
            action='store_true',
            help='Skip unparseable rows instead of failing',
        )

    def data_spec(self, options):
        if not options.get('column'):
            raise InvalidParameterError('--column is required with --data')
        delimiter = options['delimiter']
        if delimiter in ('\\t', 'tab'):
            delimiter = '\t'
        return DataColumnSpec(
            path=options['data'],
            column=options['column'],
            delimiter=delimiter,
            has_header=not options['no_header'],
            group_by=options.get('group_by'),
        )

    def digits(self, options):
        return output_digits(options.get('full_precision', False))

    def emit_frame(self, frame, options):
        write_output(frame_to_csv(frame, self.digits(options)), options.get('out'), self.stdout)

    def emit_json(self, data, options):
        write_output(render_json(data), options.get('out'), self.stdout)

    def run(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except InequalityError as exc:
            logger.error("%s failed: %s", self.__module__.rsplit('.', 1)[-1], exc)
            raise CommandError(str(exc), returncode=exc.exit_code)
