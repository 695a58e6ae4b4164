import logging

from celery import shared_task

from core.exceptions import InequalityError

from .config import load_configs
from .recording import record_failure, record_report
from .runner import run_experiment

logger = logging.getLogger(__name__)


@shared_task
def run_experiment_task(config_path, section, seed=None, workers=1):
    """
    Run one experiment section on a worker and record it; returns the run id.
    """
    (config,) = load_configs(config_path, sections=[section], seed=seed)
    try:
        report = run_experiment(config, workers=workers)
    except InequalityError as exc:
        return record_failure(config, exc).pk
    return record_report(report).pk
