from pathlib import Path

from compressor.inference import compress_batch, recover_batch
from core.exceptions import ConfigurationError
from core.seeding import child_rng
from downlink.transport import corrupt_batch
from harness.datasets import obtain_dataset
from harness.management.base import ExperimentCommand
from harness.pipeline import obtain_model
from harness.plots import emit_plots, plot_recovery_visual
from harness.results import ResultsTable

VISUAL_STREAM = 50
VISUAL_RATES = (0.01, 0.03)


class Command(ExperimentCommand):
    help = 'Renders figures (and the CSV) from a results table'
    command_name = 'plot'
    records_run = False

    def add_experiment_arguments(self, parser):
        parser.add_argument('--results', type=Path, default=None, help='Results CSV; defaults to evaluate.csv')
        parser.add_argument('--recovery-visual', action='store_true',
                            help='Also plot raw vs CAE vs AE recovery of one observation')

    def run_experiment(self, cfg, options):
        output_dir = self.output_dir(options, cfg)
        results = options['results'] or output_dir / 'evaluate.csv'
        if not results.exists():
            raise ConfigurationError(f"Results file not found: {results}")
        paths = emit_plots(ResultsTable.from_csv(results), output_dir / 'figures')
        if options['recovery_visual']:
            paths.append(self.recovery_visual(cfg, output_dir / 'figures' / 'fig_recovery_visual.png'))
        for path in paths:
            self.stdout.write(str(path))
        return None, None

    def recovery_visual(self, cfg, path):
        test = obtain_dataset(cfg, 'test')
        raw = test.observations[0, :1]
        rows = cfg.coset_config.rows
        recovered = {}
        for kind in ('cae', 'ae'):
            model = obtain_model(cfg, kind, allow_training=False)
            z = compress_batch(model.encoder, raw)
            for rate in VISUAL_RATES:
                z_hat, _ = corrupt_batch(z, rate, child_rng(cfg.seed, VISUAL_STREAM, int(rate * 1000)))
                recovered[f"{kind.upper()} {rate:.0%}"] = recover_batch(model.decoder, z_hat)[0].reshape(rows, -1)
        return plot_recovery_visual(raw[0].reshape(rows, -1), recovered, path)
