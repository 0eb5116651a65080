"""
Multi-coset acquisition and per-observation Gaussian normalization.
"""
import logging
from dataclasses import replace
from typing import Tuple

import numpy as np

from config.constants import OFFSET_SEED
from core.exceptions import DegenerateInputError, InvalidArgumentError
from sampler.types import CosetConfig, SatObservation
from scene_gen.types import ReceivedSignal

logger = logging.getLogger(__name__)


def draw_offsets(P: int, L: int, rng: np.random.Generator = None) -> Tuple[int, ...]:
    """Sorted distinct coset offsets in ``[0, L)``; frozen per configuration."""
    if not 1 <= P <= L:
        raise InvalidArgumentError(f"Cannot draw {P} distinct offsets below {L}")
    rng = rng if rng is not None else np.random.default_rng(OFFSET_SEED)
    return tuple(sorted(int(c) for c in rng.permutation(L)[:P]))


def default_config(P: int, L: int, N: int, seed: int = OFFSET_SEED) -> CosetConfig:
    return CosetConfig(P=P, L=L, offsets=draw_offsets(P, L, np.random.default_rng(seed)), N=N)


def sample_indices(cfg: CosetConfig) -> np.ndarray:
    """P×N matrix of Nyquist indices ``n·L + c_j``."""
    offsets = np.asarray(cfg.offsets, dtype=np.int64)
    return np.arange(cfg.N, dtype=np.int64)[None, :] * cfg.L + offsets[:, None]


def _select(samples: np.ndarray, cfg: CosetConfig) -> np.ndarray:
    if len(samples) < cfg.required_length:
        raise InvalidArgumentError(
            f"Need at least {cfg.required_length} Nyquist samples, got {len(samples)}"
        )
    picked = np.asarray(samples)[sample_indices(cfg)]
    return np.vstack([picked.real, picked.imag]).astype(np.float64)


def multicoset_sample(rx: ReceivedSignal, cfg: CosetConfig) -> SatObservation:
    """Pure index selection of the cosets from the Nyquist stream."""
    return SatObservation(values=_select(rx.samples, cfg), config=cfg, channel=rx.channel)


def nyquist_sample(rx: ReceivedSignal, L: int, N: int) -> SatObservation:
    """Full-rate arm: all L phases, row j holding ``x[n·L + j]``."""
    cfg = CosetConfig.nyquist(L=L, N=N)
    return SatObservation(values=_select(rx.samples, cfg), config=cfg, channel=rx.channel)


def acquire(rx: ReceivedSignal, cfg: CosetConfig) -> SatObservation:
    if cfg.full_rate:
        return nyquist_sample(rx, cfg.L, cfg.N)
    return multicoset_sample(rx, cfg)


def zscore(values: np.ndarray) -> Tuple[np.ndarray, float, float]:
    """Joint z-score of every entry; returns ``(normalized, mean, std)``."""
    mean = float(np.mean(values))
    std = float(np.std(values))
    if std == 0 or not np.isfinite(std):
        raise DegenerateInputError()
    return (values - mean) / std, mean, std


def normalize(obs: SatObservation) -> SatObservation:
    if obs.normalized:
        raise InvalidArgumentError('Observation is already normalized')
    values, mean, std = zscore(obs.values)
    return replace(obs, values=values, normalized=True, mean=mean, std=std)


def effective_rate(cfg: CosetConfig) -> float:
    """Aggregate sampling rate as a fraction of the Nyquist rate."""
    return cfg.P / cfg.L
