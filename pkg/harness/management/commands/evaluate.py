from harness.management.base import ExperimentCommand
from harness.pipeline import run_pipeline


class Command(ExperimentCommand):
    help = 'Runs the end-to-end pipeline on the test split and writes the results table'
    command_name = 'evaluate'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--no-train', action='store_true',
                            help='Fail instead of training when a checkpoint is missing')

    def run_experiment(self, cfg, options):
        table = run_pipeline(cfg, allow_training=not options['no_train'])
        csv_path = table.to_csv(self.output_dir(options, cfg) / 'evaluate.csv')
        return table, csv_path
