"""
One-axis sweeps around the configured defaults. Every sweep point trains
(or reuses) its own models and is evaluated on its own test split, with the
results tagged by a ``variant`` such as ``heads=4``.
"""
import logging

from core.exceptions import ConfigurationError
from harness.config import ExperimentConfig
from harness.pipeline import run_pipeline
from harness.results import ResultsTable

logger = logging.getLogger(__name__)

AXIS_KEYS = {
    'heads': ('fusion', 'heads'),
    'embedding_dim': ('compressor', 'embedding_dim'),
    'num_satellites': ('num_satellites',),
    'num_cosets': ('sampler', 'P'),
    'sampling_mode': ('sampler', 'mode'),
}


def axis_overlay(axis: str, value) -> dict:
    if axis not in AXIS_KEYS:
        raise ConfigurationError(f"Unknown ablation axis '{axis}', expected one of {sorted(AXIS_KEYS)}")
    overlay = value
    for key in reversed(AXIS_KEYS[axis]):
        overlay = {key: overlay}
    return overlay


def ablate(cfg: ExperimentConfig, axis: str, allow_training: bool = True) -> ResultsTable:
    """Sweep ``axis`` over its configured grid with CAE recovery and GLSS fusion."""
    table = ResultsTable()
    for value in cfg.ablation_values(axis):
        variant = f"{axis}={value}"
        overlay = axis_overlay(axis, value)
        overlay['models'] = {'compressors': ['cae'], 'classifiers': ['glss']}
        point = cfg.with_overrides(overlay)
        logger.info(f"Ablation point {variant}")
        table.extend(run_pipeline(point, allow_training=allow_training, variant=variant))
        if axis == 'embedding_dim':
            table.append(model='cae', metric='compression_factor', value=point.compression_factor,
                         seed=point.seed, variant=variant)
    return table
