"""
Scene persistence on the shared tensor container. The baseband is stored as a
2×n float32 tensor (real row, imaginary row); the sidecar carries the grid,
seed, truth and any channel draws.
"""
import logging
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from core.tensor_store import load_tensor, save_tensor
from scene_gen.types import BandGrid, ChannelRealization, OccupancyTruth, WidebandScene

logger = logging.getLogger(__name__)


def save_scene(directory: Path, name: str, scene: WidebandScene,
               channels: Optional[List[ChannelRealization]] = None) -> Path:
    stacked = np.stack([scene.baseband.real, scene.baseband.imag])
    metadata = {
        'kind': 'wideband_scene',
        'grid': scene.grid.to_dict(),
        'seed': scene.seed,
        'truth': scene.truth.to_dict(),
        'channels': [ch.to_dict() for ch in channels or []],
    }
    path = save_tensor(directory, name, stacked, metadata)
    logger.info(f"Saved scene {name} ({len(scene)} samples) to {directory}")
    return path


def load_scene(directory: Path, name: str) -> Tuple[WidebandScene, List[ChannelRealization]]:
    stacked, metadata = load_tensor(directory, name)
    grid = BandGrid(**metadata['grid'])
    truth = OccupancyTruth.from_dict(metadata['truth'])
    baseband = stacked[0].astype(np.float64) + 1j * stacked[1].astype(np.float64)
    scene = WidebandScene(truth=truth, grid=grid, baseband=baseband, seed=metadata.get('seed'))
    channels = [ChannelRealization.from_dict(ch) for ch in metadata.get('channels', [])]
    return scene, channels
