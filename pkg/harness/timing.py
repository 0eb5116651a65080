import logging
import time

import numpy as np

from compressor.inference import compress_batch
from compressor.models import Compressor
from config.constants import REFERENCE_CAE_SECONDS
from harness.config import ExperimentConfig

logger = logging.getLogger(__name__)


def timing_report(cfg: ExperimentConfig, model: Compressor, batch: int = 1024, repeats: int = 3) -> dict:
    """Wall-clock seconds the encoder needs to compress one second of sampled data.

    ``batch`` observations are timed (best of ``repeats``) and scaled to the
    number of observation windows in one second.
    """
    rng = np.random.default_rng(cfg.seed)
    observations = rng.standard_normal((batch, cfg.coset_config.flat_dim)).astype(np.float32)
    compress_batch(model.encoder, observations[:1])
    best = float('inf')
    for _ in range(repeats):
        start = time.perf_counter()
        compress_batch(model.encoder, observations)
        best = min(best, time.perf_counter() - start)
    windows_per_second = cfg.grid.f_nyq / cfg.scene_samples
    seconds = best / batch * windows_per_second
    logger.info(f"Encoder compresses one second of data in {seconds:.4f} s")
    return {
        'batch': batch,
        'batch_seconds': best,
        'windows_per_second': windows_per_second,
        'seconds_per_second_of_data': seconds,
        'reference_seconds': REFERENCE_CAE_SECONDS,
    }
