"""
Scene analysis: Doppler cross-correlation between satellites and per-band
energy from a windowed periodogram.
"""
import logging
from typing import Sequence

import numpy as np
from scipy import signal

from core.exceptions import InvalidArgumentError, UndefinedCorrelationError
from scene_gen.channel import frequency_shift
from scene_gen.types import BandGrid, WidebandScene

logger = logging.getLogger(__name__)


def doppler_pearson_matrix(scene: WidebandScene, doppler_list: Sequence[float]) -> np.ndarray:
    """Pearson coefficients between the real parts of the scene under each Doppler shift."""
    if len(doppler_list) == 0:
        raise InvalidArgumentError('doppler_list must not be empty')

    streams = np.stack([
        np.real(frequency_shift(scene.baseband, float(fd), scene.sample_rate))
        for fd in doppler_list
    ])
    if np.any(np.std(streams, axis=1) == 0):
        raise UndefinedCorrelationError()

    matrix = np.corrcoef(streams)
    matrix = 0.5 * (matrix + matrix.T)
    np.fill_diagonal(matrix, 1.0)
    return matrix


def mean_off_diagonal(matrix: np.ndarray) -> float:
    """Mean absolute off-diagonal entry; 0 for a 1×1 matrix."""
    size = matrix.shape[0]
    if size < 2:
        return 0.0
    mask = ~np.eye(size, dtype=bool)
    return float(np.mean(np.abs(matrix[mask])))


def periodogram(samples: np.ndarray, sample_rate: float):
    """Two-sided Hann periodogram with frequencies folded into ``[0, sample_rate)``."""
    freqs, power = signal.periodogram(
        samples, fs=sample_rate, window='hann', detrend=False,
        return_onesided=False, scaling='spectrum',
    )
    return np.mod(freqs, sample_rate), power


def peak_frequency(samples: np.ndarray, sample_rate: float) -> float:
    """Signed frequency of the periodogram maximum."""
    freqs, power = signal.periodogram(
        samples, fs=sample_rate, window='hann', detrend=False,
        return_onesided=False, scaling='spectrum',
    )
    return float(freqs[int(np.argmax(power))])


def band_energy_fractions(samples: np.ndarray, grid: BandGrid) -> np.ndarray:
    """Fraction of total periodogram energy falling in each band of ``grid``."""
    freqs, power = periodogram(samples, grid.f_nyq)
    total = power.sum()
    if total == 0:
        return np.zeros(grid.num_bands)
    bands = np.minimum((freqs // grid.band_width).astype(int), grid.num_bands - 1)
    energy = np.bincount(bands, weights=power, minlength=grid.num_bands)
    return energy / total
