"""
Scene datasets. Every split draws its scenes from its own block of scene
indices, so no scene seed is shared between train, validation and test.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List

import numpy as np

from core.exceptions import ConfigurationError, InvalidArgumentError
from core.seeding import child_rng, child_seed
from core.tensor_store import load_tensor, save_tensor, tensor_exists
from harness.config import ExperimentConfig
from sampler.sampling import acquire, normalize
from scene_gen.channel import apply_satellite_channel, draw_channel
from scene_gen.synthesis import generate_occupancy, synthesize_baseband

logger = logging.getLogger(__name__)

SPLITS = ('train', 'val', 'test')
SCENE_STREAM = 10
CHANNEL_STREAM = 1


@dataclass
class SensingDataset:
    split: str
    seeds: np.ndarray
    snr_db: np.ndarray
    num_signals: np.ndarray
    truth: np.ndarray
    observations: np.ndarray
    channels: List[List[dict]]

    def __len__(self):
        return len(self.seeds)

    @property
    def num_satellites(self) -> int:
        return self.observations.shape[1]

    @property
    def feature_dim(self) -> int:
        return self.observations.shape[2]

    def flat_observations(self) -> np.ndarray:
        """(S·K)×2PN rows in scene-major, satellite-minor order."""
        return self.observations.reshape(-1, self.feature_dim)


def split_offset(cfg: ExperimentConfig, split: str) -> int:
    if split not in SPLITS:
        raise InvalidArgumentError(f"Unknown split '{split}'")
    sizes = cfg['dataset']
    offset = 0
    for name in SPLITS:
        if name == split:
            return offset
        offset += sizes[name]
    return offset


def scene_seeds(cfg: ExperimentConfig, split: str) -> np.ndarray:
    start = split_offset(cfg, split)
    count = cfg['dataset'][split]
    return np.array([child_seed(cfg.seed, SCENE_STREAM, start + i) for i in range(count)], dtype=np.int64)


def _conditions(cfg: ExperimentConfig, split: str, index: int, rng: np.random.Generator):
    """Scene SNR and signal count; the test split cycles through every cell evenly."""
    snrs, counts = cfg['snr_grid_db'], cfg['num_signals']
    if split == 'test':
        return float(snrs[index % len(snrs)]), int(counts[(index // len(snrs)) % len(counts)])
    return float(rng.choice(snrs)), int(rng.choice(counts))


def build_dataset(cfg: ExperimentConfig, split: str) -> SensingDataset:
    grid, coset = cfg.grid, cfg.coset_config
    K = cfg.num_satellites
    seeds = scene_seeds(cfg, split)
    observations = np.zeros((len(seeds), K, coset.flat_dim), dtype=np.float32)
    truth = np.zeros((len(seeds), grid.num_bands), dtype=np.uint8)
    snr_db = np.zeros(len(seeds))
    num_signals = np.zeros(len(seeds), dtype=np.int64)
    channels = []

    logger.info(f"Building {split} split: {len(seeds)} scenes, {K} satellites, {coset.mode} sampling")
    for i, seed in enumerate(seeds):
        rng = np.random.default_rng(int(seed))
        snr_db[i], num_signals[i] = _conditions(cfg, split, i, rng)
        occupancy = generate_occupancy(grid, int(num_signals[i]), rng, modulations=cfg.modulations)
        scene = synthesize_baseband(occupancy, grid, cfg.scene_samples, rng,
                                    min_samples=cfg.scene_samples, seed=int(seed))
        channel_rng = child_rng(int(seed), CHANNEL_STREAM)
        draws = []
        for k in range(K):
            ch = draw_channel(snr_db[i], channel_rng)
            obs = normalize(acquire(apply_satellite_channel(scene, ch), coset))
            observations[i, k] = obs.flatten()
            draws.append(ch.to_dict())
        truth[i] = occupancy.bits
        channels.append(draws)

    logger.info(f"Built {split} split with {len(seeds)} scenes")
    return SensingDataset(split=split, seeds=seeds, snr_db=snr_db, num_signals=num_signals,
                          truth=truth, observations=observations, channels=channels)


def save_dataset(directory: Path, dataset: SensingDataset) -> Path:
    directory = Path(directory)
    metadata = {
        'split': dataset.split,
        'seeds': [int(s) for s in dataset.seeds],
        'snr_db': dataset.snr_db.tolist(),
        'num_signals': dataset.num_signals.tolist(),
        'channels': dataset.channels,
    }
    save_tensor(directory, f"{dataset.split}_truth", dataset.truth)
    path = save_tensor(directory, f"{dataset.split}_observations", dataset.observations, metadata)
    logger.info(f"Saved {dataset.split} split ({len(dataset)} scenes) to {directory}")
    return path


def load_dataset(directory: Path, split: str) -> SensingDataset:
    observations, metadata = load_tensor(directory, f"{split}_observations")
    truth, _ = load_tensor(directory, f"{split}_truth")
    if metadata.get('split') != split:
        raise ConfigurationError(f"{directory} holds split '{metadata.get('split')}', not '{split}'")
    return SensingDataset(
        split=split,
        seeds=np.asarray(metadata['seeds'], dtype=np.int64),
        snr_db=np.asarray(metadata['snr_db'], dtype=np.float64),
        num_signals=np.asarray(metadata['num_signals'], dtype=np.int64),
        truth=truth.astype(np.uint8),
        observations=observations,
        channels=metadata['channels'],
    )


def obtain_dataset(cfg: ExperimentConfig, split: str, persist: bool = True) -> SensingDataset:
    """Load the split from the data directory, building and caching it when absent."""
    directory = cfg.data_dir
    if tensor_exists(directory, f"{split}_observations"):
        logger.info(f"Loading cached {split} split from {directory}")
        return load_dataset(directory, split)
    dataset = build_dataset(cfg, split)
    if persist:
        save_dataset(directory, dataset)
    return dataset


def assert_disjoint(*datasets: SensingDataset) -> None:
    seen = {}
    for dataset in datasets:
        for seed in dataset.seeds.tolist():
            if seed in seen and seen[seed] != dataset.split:
                raise ConfigurationError(f"Scene seed {seed} appears in both {seen[seed]} and {dataset.split}")
            seen[seed] = dataset.split
