import pandas as pd

from fusion.models import build_glss
from harness.flops import flops_report
from harness.management.base import ExperimentCommand
from harness.results import ResultsTable


class Command(ExperimentCommand):
    help = 'Analytic FLOP count of the GLSS forward pass per satellite count'
    command_name = 'flops'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--satellites', type=int, nargs='+', default=None)

    def run_experiment(self, cfg, options):
        counts = options['satellites'] or cfg.ablation_values('num_satellites')
        s = cfg.glss_settings
        model = build_glss(cfg.coset_config.flat_dim, seed=cfg.seed, num_bands=cfg.grid.num_bands,
                           dense_dim=s.dense_dim, gat1_dim=s.gat1_dim, gat2_dim=s.gat2_dim,
                           heads=s.heads, merge=s.merge)
        reports = [flops_report(model, int(K)) for K in counts]
        table = ResultsTable()
        for report in reports:
            K = report['num_satellites']
            table.append(model='glss', metric='flops', value=report['total_flops'], seed=cfg.seed,
                         variant=f"num_satellites={K}")
            reference = report['reference_mflops']
            self.stdout.write(
                f"K={K}: {report['total_flops'] / 1e6:.2f} MFLOPs"
                + (f" (reference {reference:.2f})" if reference is not None else '')
            )
        csv_path = self.output_dir(options, cfg) / 'flops.csv'
        pd.DataFrame(reports).to_csv(csv_path, index=False, float_format='%.10g', lineterminator='\n')
        return table, csv_path
