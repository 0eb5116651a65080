from harness.datasets import SPLITS, assert_disjoint, build_dataset, save_dataset
from harness.management.base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Synthesizes scenes, applies satellite channels and stores the sampled dataset splits'
    command_name = 'generate'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--split', choices=SPLITS + ('all',), default='all', help='Split to build')

    def run_experiment(self, cfg, options):
        splits = SPLITS if options['split'] == 'all' else (options['split'],)
        datasets = []
        for split in splits:
            dataset = build_dataset(cfg, split)
            save_dataset(cfg.data_dir, dataset)
            datasets.append(dataset)
            self.stdout.write(f"{split}: {len(dataset)} scenes -> {cfg.data_dir}")
        assert_disjoint(*datasets)
        return None, None
