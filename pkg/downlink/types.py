from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from config.constants import TS_HEADER_SIZE, TS_MAX_SEQUENCE, TS_PACKET_SIZE, TS_PAYLOAD_SIZE, TS_SYNC_BYTE
from core.exceptions import CorruptStreamError, InvalidArgumentError


@dataclass(frozen=True)
class TsPacket:
    """188-byte transport packet.

    Header: sync byte 0x47, then the 13-bit sequence id in the PID position
    of bytes 1-2; all other header bits are zero.
    """

    sequence_id: int
    payload: bytes

    def __post_init__(self):
        if not 0 <= self.sequence_id <= TS_MAX_SEQUENCE:
            raise InvalidArgumentError(f"Sequence id {self.sequence_id} exceeds 13 bits")
        if len(self.payload) != TS_PAYLOAD_SIZE:
            raise InvalidArgumentError(f"Payload must be {TS_PAYLOAD_SIZE} bytes, got {len(self.payload)}")

    @property
    def header(self) -> bytes:
        return bytes([
            TS_SYNC_BYTE,
            (self.sequence_id >> 8) & 0x1F,
            self.sequence_id & 0xFF,
            0x00,
        ])

    def to_bytes(self) -> bytes:
        return self.header + self.payload

    @classmethod
    def from_bytes(cls, raw: bytes) -> 'TsPacket':
        if len(raw) != TS_PACKET_SIZE:
            raise CorruptStreamError(f"Packet is {len(raw)} bytes, expected {TS_PACKET_SIZE}")
        if raw[0] != TS_SYNC_BYTE:
            raise CorruptStreamError(f"Bad sync byte 0x{raw[0]:02X}")
        sequence_id = ((raw[1] & 0x1F) << 8) | raw[2]
        return cls(sequence_id=sequence_id, payload=bytes(raw[TS_HEADER_SIZE:]))


@dataclass
class PacketStream:
    packets: List[bytes]
    dropped: np.ndarray = None
    payload_len: int = 0

    def __post_init__(self):
        if self.dropped is None:
            self.dropped = np.zeros(len(self.packets), dtype=bool)
        self.dropped = np.asarray(self.dropped, dtype=bool)
        if len(self.dropped) != len(self.packets):
            raise InvalidArgumentError('One drop flag per packet is required')
        if self.payload_len > TS_PAYLOAD_SIZE * len(self.packets):
            raise InvalidArgumentError('Payload length exceeds the packet capacity')

    def __len__(self):
        return len(self.packets)

    @property
    def num_dropped(self) -> int:
        return int(self.dropped.sum())


@dataclass(frozen=True)
class LossChannelConfig:
    rate: float = 0.0
    seed: Optional[int] = None

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise InvalidArgumentError(f"Loss rate must lie in [0, 1], got {self.rate}")
