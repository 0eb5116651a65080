from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from config.constants import COSET_L, COSET_N, COSET_P
from core.exceptions import InvalidArgumentError
from scene_gen.types import ChannelRealization

SUBNYQUIST = 'subnyquist'
NYQUIST = 'nyquist'


@dataclass(frozen=True)
class CosetConfig:
    """P cosets at 1/L of the Nyquist rate, offsets ``c_j`` on the Nyquist grid.

    ``full_rate`` marks the Nyquist arm, where every one of the L phases is
    kept (P = L, offsets 0..L-1).
    """

    P: int = COSET_P
    L: int = COSET_L
    offsets: Tuple[int, ...] = ()
    N: int = COSET_N
    full_rate: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'offsets', tuple(int(c) for c in self.offsets))
        if self.N < 1:
            raise InvalidArgumentError(f"N must be >= 1, got {self.N}")
        if self.full_rate:
            if self.P != self.L or self.offsets != tuple(range(self.L)):
                raise InvalidArgumentError('A full-rate layout keeps all L phases in order')
            return
        if not 1 <= self.P < self.L:
            raise InvalidArgumentError(f"Need 1 <= P < L, got P={self.P}, L={self.L}")
        if len(self.offsets) != self.P:
            raise InvalidArgumentError(f"Expected {self.P} offsets, got {len(self.offsets)}")
        if any(not 0 <= c < self.L for c in self.offsets):
            raise InvalidArgumentError(f"Offsets must lie in [0, {self.L}), got {self.offsets}")
        if len(set(self.offsets)) != self.P:
            raise InvalidArgumentError(f"Offsets must be distinct, got {self.offsets}")

    @classmethod
    def nyquist(cls, L: int = COSET_L, N: int = COSET_N) -> 'CosetConfig':
        return cls(P=L, L=L, offsets=tuple(range(L)), N=N, full_rate=True)

    @property
    def rows(self) -> int:
        return 2 * self.P

    @property
    def flat_dim(self) -> int:
        """Length 2PN of a flattened observation."""
        return 2 * self.P * self.N

    @property
    def required_length(self) -> int:
        """Shortest Nyquist stream that covers every sample instant."""
        return (self.N - 1) * self.L + max(self.offsets) + 1

    @property
    def mode(self) -> str:
        return NYQUIST if self.full_rate else SUBNYQUIST

    def to_dict(self):
        return {'P': self.P, 'L': self.L, 'offsets': list(self.offsets), 'N': self.N, 'full_rate': self.full_rate}

    @classmethod
    def from_dict(cls, payload) -> 'CosetConfig':
        return cls(
            P=int(payload['P']),
            L=int(payload['L']),
            offsets=tuple(payload['offsets']),
            N=int(payload['N']),
            full_rate=bool(payload.get('full_rate', False)),
        )


@dataclass
class SatObservation:
    """One satellite's 2P×N real sample matrix.

    Rows 0..P-1 hold real parts, rows P..2P-1 imaginary parts. After
    normalization ``mean`` and ``std`` record the removed statistics.
    """

    values: np.ndarray
    config: CosetConfig
    normalized: bool = False
    channel: Optional[ChannelRealization] = None
    mean: Optional[float] = None
    std: Optional[float] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        expected = (self.config.rows, self.config.N)
        if self.values.shape != expected:
            raise InvalidArgumentError(f"Observation shape {self.values.shape} != {expected}")

    def flatten(self) -> np.ndarray:
        return self.values.reshape(-1)
