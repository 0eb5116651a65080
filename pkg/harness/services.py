import logging
from pathlib import Path
from typing import Optional

from django.db import transaction
from django.utils import timezone

from harness.config import ExperimentConfig
from harness.models import ExperimentRun, ResultRow
from harness.results import ResultsTable

logger = logging.getLogger(__name__)


class ResultService:
    """Mirrors emitted results tables into the run registry"""

    @staticmethod
    def start_run(command: str, cfg: ExperimentConfig) -> ExperimentRun:
        run = ExperimentRun.objects.create(
            name=cfg.name, command=command, profile=cfg.profile, seed=cfg.seed, config=cfg.to_dict(),
        )
        logger.info(f"Started run {run.id} ({command})")
        return run

    @staticmethod
    def record_run(run: ExperimentRun, table: Optional[ResultsTable] = None, csv_path: Optional[Path] = None,
                   seconds: Optional[float] = None) -> ExperimentRun:
        try:
            with transaction.atomic():
                if table is not None:
                    ResultRow.objects.bulk_create([ResultRow(run=run, **row) for row in table.rows])
                run.status = 'succeeded'
                run.csv_path = str(csv_path or '')
                run.wall_clock_seconds = seconds
                run.finished_at = timezone.now()
                run.save()
            logger.info(f"Recorded run {run.id} with {len(table) if table is not None else 0} rows")
            return run
        except Exception as e:
            logger.error(f"Error recording run {run.id}: {str(e)}", exc_info=True)
            raise

    @staticmethod
    def fail_run(run: ExperimentRun, error: Exception, seconds: Optional[float] = None) -> ExperimentRun:
        run.status = 'failed'
        run.error = str(error)
        run.wall_clock_seconds = seconds
        run.finished_at = timezone.now()
        run.save()
        logger.warning(f"Run {run.id} failed: {error}")
        return run
