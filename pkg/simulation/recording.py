import logging

from django.db import transaction

from .models import ExperimentCell, ExperimentRun

logger = logging.getLogger(__name__)


@transaction.atomic
def record_report(report, name=None):
    """Persist a SimulationReport as an ExperimentRun with its cells."""
    config = report.config
    run = ExperimentRun.objects.create(
        name=name or config.name,
        distribution=str(config.dist),
        sample_sizes=list(config.sample_sizes),
        schemes=[scheme.value for scheme in config.schemes],
        kinds=[kind.value for kind in config.kinds],
        replications=config.replications,
        mise_grid=config.mise_grid,
        master_seed=str(config.master_seed),
        exact_indices={kind.value: value for kind, value in report.exact_index.items()},
        elapsed_seconds=report.elapsed_seconds,
    )
    ExperimentCell.objects.bulk_create([
        ExperimentCell(
            run=run,
            kind=cell.kind.value,
            scheme=cell.scheme.value,
            sample_size=cell.sample_size,
            exact_index=cell.exact_index,
            index_median=cell.index_median,
            index_q1=cell.index_q1,
            index_q3=cell.index_q3,
            index_mse=cell.index_mse,
            curve_mise=cell.curve_mise,
        )
        for cell in report.cells
    ])
    logger.info("Recorded experiment %s as run %s with %d cells", run.name, run.pk, len(report.cells))
    return run


def record_failure(config, error):
    """Record a run that aborted, keeping the error message."""
    run = ExperimentRun.objects.create(
        name=config.name,
        distribution=str(config.dist),
        sample_sizes=list(config.sample_sizes),
        schemes=[scheme.value for scheme in config.schemes],
        kinds=[kind.value for kind in config.kinds],
        replications=config.replications,
        mise_grid=config.mise_grid,
        master_seed=str(config.master_seed),
        status='FAILED',
        error_message=str(error),
    )
    logger.error("Experiment %s failed: %s", config.name, error)
    return run
