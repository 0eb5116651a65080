"""
Domain types of the scene generator: the band grid, ground-truth occupancy,
the Nyquist-rate composite scene, and one satellite's channel and received copy.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

import numpy as np

from config.constants import (
    BAND_F_HI,
    BAND_F_LO,
    BAND_WIDTH,
    DEFAULT_PATH_LOSS_DB,
    DOPPLER_MAX_HZ,
    NUM_BANDS,
    SNR_MAX_DB,
    SNR_MIN_DB,
)
from core.exceptions import InvalidArgumentError


class Modulation(str, Enum):
    QPSK = 'QPSK'
    PSK8 = '8PSK'
    QAM16 = '16QAM'

    @classmethod
    def ordered(cls):
        return [cls.QPSK, cls.PSK8, cls.QAM16]


@dataclass(frozen=True)
class BandGrid:
    """Contiguous equal-width sensing bands between ``f_lo`` and ``f_hi`` (Hz)."""

    f_lo: float = BAND_F_LO
    f_hi: float = BAND_F_HI
    band_width: float = BAND_WIDTH
    num_bands: int = NUM_BANDS

    def __post_init__(self):
        if self.band_width <= 0:
            raise InvalidArgumentError(f"band_width must be positive, got {self.band_width}")
        if self.f_hi <= self.f_lo:
            raise InvalidArgumentError(f"f_hi ({self.f_hi}) must exceed f_lo ({self.f_lo})")
        implied = (self.f_hi - self.f_lo) / self.band_width
        if self.num_bands < 1 or not math.isclose(implied, self.num_bands, rel_tol=0, abs_tol=1e-9):
            raise InvalidArgumentError(
                f"num_bands={self.num_bands} does not tile [{self.f_lo}, {self.f_hi}] "
                f"with {self.band_width} Hz bands ({implied} implied)"
            )

    @property
    def f_nyq(self) -> float:
        """Complex Nyquist rate of the span, which is also the sample rate of a scene."""
        return self.f_hi - self.f_lo

    def band_offsets(self) -> np.ndarray:
        """Band centers relative to ``f_lo`` in Hz."""
        return (np.arange(self.num_bands) + 0.5) * self.band_width

    def band_centers(self) -> np.ndarray:
        return self.f_lo + self.band_offsets()

    def band_of(self, offset_hz: float) -> int:
        """Index of the band holding a baseband offset in ``[0, f_nyq)``."""
        return int(np.floor((offset_hz % self.f_nyq) / self.band_width))

    def to_dict(self) -> Dict[str, float]:
        return {
            'f_lo': self.f_lo,
            'f_hi': self.f_hi,
            'band_width': self.band_width,
            'num_bands': self.num_bands,
        }


@dataclass
class OccupancyTruth:
    bits: np.ndarray
    modulations: Dict[int, Modulation] = field(default_factory=dict)

    def __post_init__(self):
        self.bits = np.asarray(self.bits, dtype=np.uint8)
        if self.bits.ndim != 1 or np.any(self.bits > 1):
            raise InvalidArgumentError('Occupancy bits must be a binary vector')
        occupied = set(np.flatnonzero(self.bits).tolist())
        if occupied != set(self.modulations):
            raise InvalidArgumentError(
                f"Modulations must be defined exactly for the occupied bands {sorted(occupied)}"
            )

    @property
    def num_signals(self) -> int:
        return int(self.bits.sum())

    @property
    def occupied_bands(self):
        return sorted(self.modulations)

    def to_dict(self):
        return {
            'bits': self.bits.tolist(),
            'modulations': {str(k): m.value for k, m in sorted(self.modulations.items())},
        }

    @classmethod
    def from_dict(cls, payload) -> 'OccupancyTruth':
        return cls(
            bits=np.asarray(payload['bits'], dtype=np.uint8),
            modulations={int(k): Modulation(v) for k, v in payload['modulations'].items()},
        )


@dataclass
class WidebandScene:
    truth: OccupancyTruth
    grid: BandGrid
    baseband: np.ndarray
    seed: Optional[int] = None

    @property
    def sample_rate(self) -> float:
        return self.grid.f_nyq

    def __len__(self):
        return len(self.baseband)


@dataclass(frozen=True)
class ChannelRealization:
    """One satellite's impairments. ``snr_db=None`` (or +inf) disables the noise."""

    doppler: float = 0.0
    path_loss_db: float = DEFAULT_PATH_LOSS_DB
    snr_db: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if not -DOPPLER_MAX_HZ <= self.doppler <= DOPPLER_MAX_HZ:
            raise InvalidArgumentError(
                f"Doppler {self.doppler} Hz outside [-{DOPPLER_MAX_HZ}, {DOPPLER_MAX_HZ}]"
            )
        if not self.path_loss_db >= 0:
            raise InvalidArgumentError(f"Path loss must be >= 0 dB, got {self.path_loss_db}")
        if self.noise_enabled and not SNR_MIN_DB <= self.snr_db <= SNR_MAX_DB:
            raise InvalidArgumentError(f"SNR {self.snr_db} dB outside [{SNR_MIN_DB}, {SNR_MAX_DB}]")

    @property
    def noise_enabled(self) -> bool:
        return self.snr_db is not None and not math.isinf(self.snr_db)

    def to_dict(self):
        return {
            'doppler': self.doppler,
            'path_loss_db': self.path_loss_db,
            'snr_db': self.snr_db if self.noise_enabled else None,
            'seed': self.seed,
        }

    @classmethod
    def from_dict(cls, payload) -> 'ChannelRealization':
        return cls(
            doppler=float(payload['doppler']),
            path_loss_db=float(payload.get('path_loss_db', DEFAULT_PATH_LOSS_DB)),
            snr_db=payload.get('snr_db'),
            seed=payload.get('seed'),
        )


@dataclass
class ReceivedSignal:
    samples: np.ndarray
    channel: ChannelRealization
    truth: OccupancyTruth
    grid: BandGrid

    def __len__(self):
        return len(self.samples)
