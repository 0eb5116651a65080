from compressor.models import build_compressor
from core.exceptions import ConfigurationError
from harness.management.base import ExperimentCommand
from harness.pipeline import obtain_model
from harness.results import ResultsTable
from harness.timing import timing_report


class Command(ExperimentCommand):
    help = 'Wall-clock time for the encoder to compress one second of sampled data'
    command_name = 'timing'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--batch', type=int, default=1024)

    def run_experiment(self, cfg, options):
        try:
            model = obtain_model(cfg, 'cae', allow_training=False)
        except ConfigurationError:
            c = cfg.compressor_settings
            self.stdout.write(self.style.WARNING('No CAE checkpoint; timing a freshly initialized encoder'))
            model = build_compressor(cfg.coset_config.flat_dim, c.hidden_dim, c.embedding_dim,
                                     c.intermediate_dim, c.output_activation, seed=cfg.seed)
        report = timing_report(cfg, model, batch=options['batch'])
        self.stdout.write(
            f"{report['seconds_per_second_of_data']:.4f} s per second of data "
            f"(reference {report['reference_seconds']} s on other hardware)"
        )
        table = ResultsTable()
        table.append(model='cae', metric='encode_seconds', value=report['seconds_per_second_of_data'],
                     seed=cfg.seed)
        return table, None
