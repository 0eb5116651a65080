import logging
from pathlib import Path

import numpy as np

from core.tensor_store import load_tensor, save_tensor
from sampler.types import CosetConfig, SatObservation
from scene_gen.types import ChannelRealization

logger = logging.getLogger(__name__)


def save_observation(directory: Path, name: str, obs: SatObservation) -> Path:
    metadata = {
        'kind': 'sat_observation',
        **obs.config.to_dict(),
        'normalized': obs.normalized,
        'mean': obs.mean,
        'std': obs.std,
        'channel': obs.channel.to_dict() if obs.channel else None,
    }
    return save_tensor(directory, name, obs.values, metadata)


def load_observation(directory: Path, name: str) -> SatObservation:
    values, metadata = load_tensor(directory, name)
    channel = metadata.get('channel')
    return SatObservation(
        values=values.astype(np.float64),
        config=CosetConfig.from_dict(metadata),
        normalized=bool(metadata.get('normalized')),
        channel=ChannelRealization.from_dict(channel) if channel else None,
        mean=metadata.get('mean'),
        std=metadata.get('std'),
    )
