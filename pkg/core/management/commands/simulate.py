from dataclasses import replace

from django.conf import settings

from core.exceptions import InequalityError
from core.management.base import InequalityCommand
from simulation.config import load_configs
from simulation.recording import record_failure, record_report
from simulation.runner import run_experiment
from simulation.serializers import SimulationReportSerializer
from simulation.tables import index_summary_frame, report_to_tables


class Command(InequalityCommand):
    help = 'Run Monte Carlo experiments from an INI file and write MISE tables'

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help='Experiment INI file')
        parser.add_argument('--section', action='append', help='Experiment section to run (repeatable, default all)')
        parser.add_argument('--seed', type=int, help='Master seed; overrides master_seed in the file')
        parser.add_argument('--workers', type=int, help='Worker threads (default from settings)')
        parser.add_argument('--out-dir', default='simulation_output', help='Directory for table files')
        parser.add_argument('--keep-raw', action='store_true', help='Also write per-replicate estimates')
        parser.add_argument('--record', action='store_true', help='Store the runs in the database')
        self.add_output_arguments(parser)

    def run(self, **options):
        configs = load_configs(options['config'], sections=options['section'], seed=options['seed'])
        workers = options['workers'] or settings.SIMULATION_WORKERS

        reports = []
        for config in configs:
            if options['keep_raw'] and not config.keep_raw:
                config = replace(config, keep_raw=True)
            try:
                report = run_experiment(config, workers=workers)
            except InequalityError as exc:
                if options['record']:
                    record_failure(config, exc)
                raise
            if options['record']:
                run = record_report(report)
                self.stderr.write(f"Recorded {config.name} as run {run.pk}")
            reports.append(report)

        written = report_to_tables(reports, options['out_dir'])
        for path in written:
            self.stderr.write(f"Wrote {path}")

        if options['format'] == 'json':
            data = SimulationReportSerializer(reports, many=True, context={'digits': self.digits(options)}).data
            self.emit_json(data, options)
        else:
            self.emit_frame(index_summary_frame(reports), options)
