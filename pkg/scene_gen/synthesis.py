"""
Wideband scene synthesis.

Each occupied band carries one root-raised-cosine shaped PSK/QAM carrier at
the band center. The symbol rate is ``band_width / (1 + rolloff)`` so the
occupied bandwidth fills exactly one band; the composite is generated at the
complex Nyquist rate of the grid.
"""
import logging
import math
from typing import Sequence

import numpy as np
from scipy import signal

from config.constants import COSET_L, COSET_N, RRC_ROLLOFF, RRC_SPAN_SYMBOLS
from core.exceptions import InvalidArgumentError
from scene_gen.types import BandGrid, Modulation, OccupancyTruth, WidebandScene

logger = logging.getLogger(__name__)


def generate_occupancy(grid: BandGrid, num_signals: int, rng: np.random.Generator,
                       modulations: Sequence[Modulation] = None) -> OccupancyTruth:
    """Pick ``num_signals`` distinct bands uniformly and a modulation for each."""
    if not 1 <= num_signals <= grid.num_bands:
        raise InvalidArgumentError(
            f"num_signals must lie in [1, {grid.num_bands}], got {num_signals}"
        )
    schemes_allowed = list(modulations) if modulations else Modulation.ordered()
    bands = rng.choice(grid.num_bands, size=num_signals, replace=False)
    schemes = rng.integers(0, len(schemes_allowed), size=num_signals)
    bits = np.zeros(grid.num_bands, dtype=np.uint8)
    bits[bands] = 1
    chosen = {int(b): schemes_allowed[int(s)] for b, s in zip(bands, schemes)}
    return OccupancyTruth(bits=bits, modulations=chosen)


def constellation(modulation: Modulation) -> np.ndarray:
    """Unit average power constellation points."""
    if modulation == Modulation.QPSK:
        return np.exp(1j * (np.pi / 4 + np.arange(4) * np.pi / 2))
    if modulation == Modulation.PSK8:
        return np.exp(1j * np.arange(8) * np.pi / 4)
    if modulation == Modulation.QAM16:
        levels = np.array([-3.0, -1.0, 1.0, 3.0])
        points = (levels[:, None] + 1j * levels[None, :]).ravel()
        return points / np.sqrt(10.0)
    raise InvalidArgumentError(f"Unsupported modulation: {modulation}")


def rrc_taps(rolloff: float, samples_per_symbol: int, span_symbols: int = RRC_SPAN_SYMBOLS) -> np.ndarray:
    """Root-raised-cosine impulse response with unit energy.

    The filter covers ``span_symbols`` symbols either side of its peak, so it
    has ``2 * span_symbols * samples_per_symbol + 1`` taps.
    """
    if not 0 < rolloff <= 1:
        raise InvalidArgumentError(f"Roll-off must lie in (0, 1], got {rolloff}")
    half = span_symbols * samples_per_symbol
    t = np.arange(-half, half + 1) / samples_per_symbol
    beta = rolloff

    with np.errstate(divide='ignore', invalid='ignore'):
        h = (
            np.sin(np.pi * t * (1 - beta)) + 4 * beta * t * np.cos(np.pi * t * (1 + beta))
        ) / (np.pi * t * (1 - (4 * beta * t) ** 2))

    h[t == 0] = 1 - beta + 4 * beta / np.pi
    singular = np.isclose(np.abs(4 * beta * t), 1.0)
    h[singular] = beta / np.sqrt(2) * (
        (1 + 2 / np.pi) * np.sin(np.pi / (4 * beta)) + (1 - 2 / np.pi) * np.cos(np.pi / (4 * beta))
    )
    return h / np.sqrt(np.sum(h ** 2))


def samples_per_symbol(grid: BandGrid, rolloff: float = RRC_ROLLOFF) -> int:
    symbol_rate = grid.band_width / (1 + rolloff)
    ratio = grid.f_nyq / symbol_rate
    sps = int(round(ratio))
    if not math.isclose(ratio, sps, rel_tol=1e-9):
        raise InvalidArgumentError(
            f"Grid rate {grid.f_nyq} Hz is not an integer multiple of the symbol rate {symbol_rate} Hz"
        )
    return sps


def shaped_carrier(modulation: Modulation, sps: int, duration_samples: int,
                   rng: np.random.Generator, rolloff: float = RRC_ROLLOFF,
                   span_symbols: int = RRC_SPAN_SYMBOLS) -> np.ndarray:
    """Steady-state RRC-shaped symbol stream with unit average power."""
    taps = rrc_taps(rolloff, sps, span_symbols)
    transient = len(taps) - 1
    num_symbols = math.ceil(duration_samples / sps) + 2 * span_symbols + 2
    points = constellation(modulation)
    symbols = points[rng.integers(0, len(points), size=num_symbols)]
    shaped = signal.upfirdn(taps, symbols, up=sps)[transient:transient + duration_samples]
    power = np.mean(np.abs(shaped) ** 2)
    return shaped / np.sqrt(power)


def synthesize_baseband(truth: OccupancyTruth, grid: BandGrid, duration_samples: int,
                        rng: np.random.Generator, min_samples: int = COSET_L * COSET_N,
                        seed=None) -> WidebandScene:
    """Composite complex baseband at ``grid.f_nyq`` for the given occupancy.

    ``min_samples`` is the shortest scene the downstream sampler accepts; the
    default matches the default coset layout.
    """
    if duration_samples < min_samples:
        raise InvalidArgumentError(
            f"duration_samples={duration_samples} is shorter than the required {min_samples}"
        )
    if len(truth.bits) != grid.num_bands:
        raise InvalidArgumentError(
            f"Occupancy has {len(truth.bits)} bands, grid has {grid.num_bands}"
        )

    baseband = np.zeros(duration_samples, dtype=np.complex128)
    if truth.num_signals == 0:
        return WidebandScene(truth=truth, grid=grid, baseband=baseband, seed=seed)

    sps = samples_per_symbol(grid)
    n = np.arange(duration_samples)
    offsets = grid.band_offsets()
    for band in truth.occupied_bands:
        carrier = shaped_carrier(truth.modulations[band], sps, duration_samples, rng)
        phase = rng.uniform(0.0, 2 * np.pi)
        baseband += carrier * np.exp(1j * (2 * np.pi * offsets[band] * n / grid.f_nyq + phase))

    logger.debug(f"Synthesized scene with bands {truth.occupied_bands} over {duration_samples} samples")
    return WidebandScene(truth=truth, grid=grid, baseband=baseband, seed=seed)


def generate_scene(grid: BandGrid, num_signals: int, duration_samples: int, seed: int,
                   min_samples: int = COSET_L * COSET_N) -> WidebandScene:
    """Occupancy draw followed by synthesis, both from one seeded stream."""
    rng = np.random.default_rng(seed)
    truth = generate_occupancy(grid, num_signals, rng)
    return synthesize_baseband(truth, grid, duration_samples, rng, min_samples=min_samples, seed=seed)
