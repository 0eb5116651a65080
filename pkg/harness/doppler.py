import logging

import numpy as np

from config.constants import DOPPLER_MAX_HZ
from core.seeding import child_rng
from harness.config import ExperimentConfig
from scene_gen.analysis import doppler_pearson_matrix, mean_off_diagonal
from scene_gen.synthesis import generate_scene

logger = logging.getLogger(__name__)

DOPPLER_STREAM = 30


def doppler_study(cfg: ExperimentConfig, num_shifts: int = None, num_signals: int = 3):
    """Correlation between copies of one scene under independent Doppler draws.

    Returns ``(dopplers, matrix, mean_abs_off_diagonal)``.
    """
    num_shifts = num_shifts or cfg.num_satellites
    rng = child_rng(cfg.seed, DOPPLER_STREAM)
    scene = generate_scene(cfg.grid, num_signals, cfg.scene_samples, seed=int(rng.integers(0, 2 ** 31)),
                           min_samples=cfg.scene_samples)
    dopplers = rng.uniform(-DOPPLER_MAX_HZ, DOPPLER_MAX_HZ, size=num_shifts)
    matrix = doppler_pearson_matrix(scene, dopplers)
    score = mean_off_diagonal(matrix)
    logger.info(f"Mean |off-diagonal| Pearson over {num_shifts} Doppler shifts: {score:.4f}")
    return dopplers, matrix, score
