from dataclasses import dataclass

import numpy as np

from config.constants import DECISION_THRESHOLD
from core.exceptions import InvalidArgumentError


@dataclass
class SensingGraph:
    """Fully connected satellite graph with self-loops; X holds one row per node."""

    X: np.ndarray

    def __post_init__(self):
        self.X = np.asarray(self.X)
        if self.X.ndim != 2:
            raise InvalidArgumentError(f"Node features must be K×D, got shape {self.X.shape}")
        if self.K < 2:
            raise InvalidArgumentError(f"A sensing graph needs at least 2 nodes, got {self.K}")
        if not np.all(np.isfinite(self.X)):
            raise InvalidArgumentError('Node features must be finite')

    @property
    def K(self) -> int:
        return self.X.shape[0]

    @property
    def feature_dim(self) -> int:
        return self.X.shape[1]

    def adjacency(self) -> np.ndarray:
        return np.ones((self.K, self.K), dtype=np.uint8)


@dataclass
class OccupancyPrediction:
    scores: np.ndarray
    threshold: float = DECISION_THRESHOLD

    def __post_init__(self):
        self.scores = np.asarray(self.scores, dtype=np.float64)
        if np.any(self.scores < 0) or np.any(self.scores > 1):
            raise InvalidArgumentError('Occupancy scores must lie in [0, 1]')

    @property
    def decisions(self) -> np.ndarray:
        return (self.scores >= self.threshold).astype(np.uint8)
