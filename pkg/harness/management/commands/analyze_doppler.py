import pandas as pd

from harness.doppler import doppler_study
from harness.management.base import ExperimentCommand
from harness.plots import plot_doppler_matrix
from harness.results import ResultsTable


class Command(ExperimentCommand):
    help = 'Pearson correlation of one scene seen under independent Doppler shifts'
    command_name = 'analyze_doppler'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--num-shifts', type=int, default=None, help='Defaults to the satellite count')
        parser.add_argument('--num-signals', type=int, default=3)

    def run_experiment(self, cfg, options):
        dopplers, matrix, score = doppler_study(cfg, options['num_shifts'], options['num_signals'])
        output_dir = self.output_dir(options, cfg)
        labels = [f"{fd / 1e3:.1f}kHz" for fd in dopplers]
        csv_path = output_dir / 'doppler_matrix.csv'
        pd.DataFrame(matrix, index=labels, columns=labels).to_csv(csv_path, float_format='%.10g', lineterminator='\n')
        plot_doppler_matrix(matrix, output_dir / 'fig_doppler_correlation.png')
        self.stdout.write(f"Mean |off-diagonal| Pearson coefficient: {score:.4f}")
        table = ResultsTable()
        table.append(model='scene', metric='doppler_mean_abs_pearson', value=score, seed=cfg.seed)
        return table, csv_path
