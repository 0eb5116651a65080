from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.exceptions import InvalidArgumentError


@dataclass
class Embedding:
    """Compressed code of one observation, held as float32.

    A corrupted embedding carries ``loss_mask`` (True where the element was
    lost) and every masked element is exactly zero.
    """

    values: np.ndarray
    corrupted: bool = False
    loss_mask: Optional[np.ndarray] = None

    def __post_init__(self):
        self.values = np.ascontiguousarray(np.asarray(self.values, dtype=np.float32).reshape(-1))
        if self.loss_mask is None:
            self.loss_mask = np.zeros(len(self.values), dtype=bool)
        self.loss_mask = np.asarray(self.loss_mask, dtype=bool)
        if self.loss_mask.shape != self.values.shape:
            raise InvalidArgumentError('Loss mask must match the embedding length')
        if self.corrupted and np.any(self.values[self.loss_mask] != 0):
            raise InvalidArgumentError('Lost elements of a corrupted embedding must be zero')

    @property
    def dim(self) -> int:
        return len(self.values)


@dataclass
class RecoveredObservation:
    """Decoder output of length 2PN; ``source`` is the embedding it came from."""

    values: np.ndarray
    source: Optional[Embedding] = None

    def __post_init__(self):
        self.values = np.asarray(self.values).reshape(-1)

    def as_matrix(self, rows: int) -> np.ndarray:
        return self.values.reshape(rows, -1)
