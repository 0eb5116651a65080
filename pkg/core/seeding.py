"""
Seed plumbing. Every random draw in the simulator comes from an explicit
``numpy.random.Generator`` derived from a base seed and a tuple of keys, so
results depend only on (config, seed).
"""
import logging

import numpy as np
import torch
from django.conf import settings

logger = logging.getLogger(__name__)


def child_seed(base_seed: int, *keys: int) -> int:
    """Stable 63-bit seed for the stream identified by ``keys``."""
    sequence = np.random.SeedSequence([int(base_seed), *[int(k) for k in keys]])
    return int(sequence.generate_state(1, dtype=np.uint64)[0]) >> 1


def child_rng(base_seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(base_seed), *[int(k) for k in keys]]))


def configure_torch(seed: int) -> torch.Generator:
    """Seed torch and pin deterministic kernels; returns a CPU generator."""
    torch.manual_seed(seed)
    torch.use_deterministic_algorithms(True, warn_only=True)
    threads = getattr(settings, 'SKYFUSE_TORCH_THREADS', 0)
    if threads:
        torch.set_num_threads(threads)
    generator = torch.Generator()
    generator.manual_seed(seed)
    return generator
