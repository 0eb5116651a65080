from config.constants import ABLATION_GRIDS
from harness.ablations import ablate
from harness.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Sweeps one axis (heads, embedding_dim, num_satellites, num_cosets, sampling_mode)'
    command_name = 'ablate'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--axis', required=True, choices=sorted(ABLATION_GRIDS))
        parser.add_argument('--no-train', action='store_true')

    def run_experiment(self, cfg, options):
        table = ablate(cfg, options['axis'], allow_training=not options['no_train'])
        csv_path = table.to_csv(self.output_dir(options, cfg) / f"ablate_{options['axis']}.csv")
        return table, csv_path
