import pandas as pd

from harness.management.base import ExperimentCommand
from harness.pipeline import train_model
from harness.plots import plot_learning_curve


class TrainCommand(ExperimentCommand):
    """Trains one model kind and writes its checkpoint and loss history."""

    model_kind = ''

    def run_experiment(self, cfg, options):
        result = train_model(cfg, self.model_kind)
        output_dir = self.output_dir(options, cfg)
        csv_path = output_dir / f"history_{self.model_kind}.csv"
        pd.DataFrame(result.history).to_csv(csv_path, index=False, float_format='%.10g', lineterminator='\n')
        plot_learning_curve(result.history, output_dir / f"fig_learning_{self.model_kind}.png")
        self.stdout.write(f"Checkpoint written to {cfg.checkpoint_dir(self.model_kind)}")
        return None, csv_path
