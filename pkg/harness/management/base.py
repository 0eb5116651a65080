"""
Shared plumbing of the experiment commands: config loading from profile,
file and flags, output locations, run bookkeeping and exit codes.
"""
import logging
import time
from pathlib import Path
from typing import Optional, Tuple

from django.conf import settings
from django.core.management.base import BaseCommand

from core.responses import command_exit_codes
from harness.config import PROFILES, ExperimentConfig, load_config
from harness.results import ResultsTable
from harness.services import ResultService

logger = logging.getLogger(__name__)


class ExperimentCommand(BaseCommand):
    """Base class; subclasses implement ``run_experiment``."""

    command_name = ''
    records_run = True

    def add_arguments(self, parser):
        parser.add_argument('--profile', default='default', choices=sorted(PROFILES),
                            help='Named base configuration')
        parser.add_argument('--config', type=Path, default=None, help='JSON file overlaid on the profile')
        parser.add_argument('--seed', type=int, default=None, help='Base seed of the experiment')
        parser.add_argument('--epochs', type=int, default=None, help='Training epochs')
        parser.add_argument('--name', default=None, help='Experiment name')
        parser.add_argument('--output-dir', type=Path, default=None, help='Where CSVs and figures go')
        parser.add_argument('--set', dest='overrides', action='append', default=[], metavar='KEY=VALUE',
                            help='Override any config key, e.g. --set fusion.heads=4')
        self.add_experiment_arguments(parser)

    def add_experiment_arguments(self, parser):
        pass

    def load_config(self, options) -> ExperimentConfig:
        return load_config(
            profile=options['profile'],
            path=options.get('config'),
            overrides=options.get('overrides') or [],
            seed=options.get('seed'),
            epochs=options.get('epochs'),
            name=options.get('name'),
        )

    def output_dir(self, options, cfg: ExperimentConfig) -> Path:
        directory = options.get('output_dir') or Path(settings.SKYFUSE_OUTPUT_DIR) / cfg.name
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        return directory

    def run_experiment(self, cfg: ExperimentConfig, options) -> Tuple[Optional[ResultsTable], Optional[Path]]:
        raise NotImplementedError

    @command_exit_codes
    def handle(self, *args, **options):
        cfg = self.load_config(options)
        run = ResultService.start_run(self.command_name, cfg) if self.records_run else None
        start = time.perf_counter()
        try:
            table, csv_path = self.run_experiment(cfg, options)
        except Exception as e:
            if run is not None:
                ResultService.fail_run(run, e, time.perf_counter() - start)
            raise
        seconds = time.perf_counter() - start
        if run is not None:
            ResultService.record_run(run, table, csv_path, seconds)
        if csv_path:
            self.stdout.write(self.style.SUCCESS(f"Wrote {csv_path} in {seconds:.1f} s"))
