import pandas as pd

from config.constants import DOWNLINK_RATE_BPS
from harness.link_budget import link_budget
from harness.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Data volume per second for each representation and its downlink transfer time'
    command_name = 'link_budget'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--rate-bps', type=float, default=DOWNLINK_RATE_BPS, help='Downlink rate')

    def run_experiment(self, cfg, options):
        rows = link_budget(cfg, downlink_rate_bps=options['rate_bps'])
        for row in rows:
            self.stdout.write(
                f"{row['representation']:>10}: {row['megabytes_per_second']:.1f} MB/s, "
                f"{row['transfer_seconds']:.2f} s on the downlink"
            )
        csv_path = self.output_dir(options, cfg) / 'link_budget.csv'
        pd.DataFrame(rows).to_csv(csv_path, index=False, float_format='%.10g', lineterminator='\n')
        return None, csv_path
