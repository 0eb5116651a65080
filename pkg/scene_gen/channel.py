"""
Per-satellite channel: scalar path loss, a single Doppler frequency shift of
the composite baseband, and complex AWGN.
"""
import logging

import numpy as np

from config.constants import (
    DEFAULT_PATH_LOSS_DB,
    DOPPLER_MAX_HZ,
    SATELLITE_SNR_SPREAD_DB,
    SNR_MAX_DB,
    SNR_MIN_DB,
)
from scene_gen.types import ChannelRealization, ReceivedSignal, WidebandScene

logger = logging.getLogger(__name__)


def draw_channel(scene_snr_db: float, rng: np.random.Generator,
                 spread_db: float = SATELLITE_SNR_SPREAD_DB,
                 doppler_max_hz: float = DOPPLER_MAX_HZ) -> ChannelRealization:
    """Draw one satellite's Doppler, SNR and noise seed around a scene SNR."""
    doppler = float(rng.uniform(-doppler_max_hz, doppler_max_hz))
    snr = float(rng.uniform(scene_snr_db - spread_db, scene_snr_db + spread_db))
    snr = float(np.clip(snr, SNR_MIN_DB, SNR_MAX_DB))
    seed = int(rng.integers(0, 2 ** 63 - 1))
    return ChannelRealization(doppler=doppler, path_loss_db=DEFAULT_PATH_LOSS_DB, snr_db=snr, seed=seed)


def frequency_shift(samples: np.ndarray, shift_hz: float, sample_rate: float) -> np.ndarray:
    if shift_hz == 0:
        return np.array(samples, copy=True)
    n = np.arange(len(samples))
    return samples * np.exp(2j * np.pi * shift_hz * n / sample_rate)


def complex_awgn(num_samples: int, noise_power: float, rng: np.random.Generator) -> np.ndarray:
    """Circular complex Gaussian noise rescaled to exactly ``noise_power``."""
    noise = rng.standard_normal(num_samples) + 1j * rng.standard_normal(num_samples)
    realized = np.mean(np.abs(noise) ** 2)
    return noise * np.sqrt(noise_power / realized)


def apply_satellite_channel(scene: WidebandScene, ch: ChannelRealization,
                            rng: np.random.Generator = None) -> ReceivedSignal:
    """Impair the scene as seen by one satellite.

    The noise power is set from the power of the impaired (scaled and
    shifted) signal, so the realized per-sample SNR equals ``ch.snr_db``.
    """
    amplitude = 10 ** (-ch.path_loss_db / 20)
    samples = frequency_shift(scene.baseband, ch.doppler, scene.sample_rate)
    if amplitude != 1.0:
        samples = amplitude * samples

    if ch.noise_enabled:
        signal_power = float(np.mean(np.abs(samples) ** 2))
        if signal_power == 0:
            logger.warning('Silent scene: noise sized against unit reference power')
            signal_power = 1.0
        noise_power = signal_power / 10 ** (ch.snr_db / 10)
        rng = rng if rng is not None else np.random.default_rng(ch.seed)
        samples = samples + complex_awgn(len(samples), noise_power, rng)

    return ReceivedSignal(samples=samples, channel=ch, truth=scene.truth, grid=scene.grid)
