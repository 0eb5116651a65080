"""
Figures rendered from a results table. File names are fixed per figure so
repeated runs overwrite rather than accumulate; the raw CSV is always written
next to them.
"""
import logging
from pathlib import Path
from typing import List

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from harness.results import ResultsTable  # noqa: E402

logger = logging.getLogger(__name__)

RESULTS_CSV = 'results.csv'
METRIC_LABELS = {'mse': 'MSE', 'pearson': 'Pearson correlation', 'accuracy': 'Accuracy'}
# PNG metadata without a software/version stamp keeps reruns byte-identical
PNG_METADATA = {'Software': None}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=PNG_METADATA)
    plt.close(fig)
    logger.info(f"Saved figure {path.name}")
    return path


def _metric_vs_snr(table: ResultsTable, metric: str, path: Path) -> Path:
    cells = table.cell_means(metric, by=('model', 'loss_rate', 'snr_db'))
    fig, ax = plt.subplots(figsize=(6, 4))
    for (model, rate), group in cells.groupby(['model', 'loss_rate'], sort=True):
        ax.plot(group['snr_db'], group['value'], marker='o', label=f"{model.upper()} loss {rate:.0%}")
    ax.set_xlabel('SNR (dB)')
    ax.set_ylabel(METRIC_LABELS.get(metric, metric))
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, path)


def _ablation(table: ResultsTable, axis: str, path: Path) -> Path:
    frame = table.select(metric='accuracy')
    frame = frame[frame['variant'].str.startswith(f"{axis}=")]
    fig, ax = plt.subplots(figsize=(6, 4))
    for variant, group in frame.groupby('variant', sort=True):
        means = group.groupby('snr_db')['value'].mean()
        ax.plot(means.index, means.values, marker='o', label=variant)
    ax.set_xlabel('SNR (dB)')
    ax.set_ylabel('Accuracy')
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    return _save(fig, path)


def emit_plots(table: ResultsTable, output_dir: Path) -> List[Path]:
    """Write the CSV plus one figure per result family present in ``table``."""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    paths = [table.to_csv(output_dir / RESULTS_CSV)]
    frame = table.to_frame()
    base_table = ResultsTable([row for row in table.rows if not row['variant']])
    for metric, name in (('mse', 'fig_recovery_mse.png'), ('pearson', 'fig_recovery_pearson.png'),
                         ('accuracy', 'fig_accuracy_snr.png')):
        if len(base_table.select(metric=metric)):
            paths.append(_metric_vs_snr(base_table, metric, output_dir / name))
    axes = sorted({v.split('=')[0] for v in frame['variant'] if v})
    for axis in axes:
        paths.append(_ablation(table, axis, output_dir / f"fig_ablation_{axis}.png"))
    return paths


def plot_doppler_matrix(matrix: np.ndarray, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 4))
    image = ax.imshow(matrix, vmin=-1, vmax=1, cmap='coolwarm')
    ax.set_xlabel('Satellite')
    ax.set_ylabel('Satellite')
    fig.colorbar(image, ax=ax, label='Pearson coefficient')
    return _save(fig, Path(path))


def plot_recovery_visual(raw: np.ndarray, recovered: dict, path: Path, row: int = 0) -> Path:
    """One sample row of the raw observation against each recovered version.

    ``recovered`` maps labels such as ``CAE 1%`` to 2P×N matrices.
    """
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(raw[row], color='black', linewidth=1.2, label='raw')
    for label, matrix in sorted(recovered.items()):
        ax.plot(matrix[row], linewidth=0.8, alpha=0.8, label=label)
    ax.set_xlabel('Sample index')
    ax.set_ylabel('Normalized amplitude')
    ax.legend(fontsize=8)
    return _save(fig, Path(path))


def plot_learning_curve(history: List[dict], path: Path, key: str = 'loss') -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([h['epoch'] for h in history], [h[key] for h in history], marker='.')
    ax.set_xlabel('Epoch')
    ax.set_ylabel(key)
    ax.grid(True, alpha=0.3)
    return _save(fig, Path(path))
