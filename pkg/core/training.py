"""
Helpers shared by the training loops: seeded mini-batch order and the
divergence guard.
"""
import logging
import math
from typing import Iterator, List

import numpy as np

from core.exceptions import TrainingFailure

logger = logging.getLogger(__name__)


def iterate_batches(num_samples: int, batch_size: int, rng: np.random.Generator) -> Iterator[np.ndarray]:
    """Shuffled index batches covering every sample once."""
    order = rng.permutation(num_samples)
    for start in range(0, num_samples, batch_size):
        yield order[start:start + batch_size]


def ensure_finite(value: float, history: List[dict], what: str = 'loss') -> None:
    if not math.isfinite(value):
        logger.error(f"Non-finite {what} after {len(history)} epochs")
        raise TrainingFailure(f"Training diverged: {what} became {value}", history=history)


def smoothed(values, window: int = 5) -> np.ndarray:
    """Trailing moving average used to judge loss trends."""
    values = np.asarray(values, dtype=np.float64)
    if len(values) < window:
        return values.copy()
    kernel = np.ones(window) / window
    return np.convolve(values, kernel, mode='valid')
