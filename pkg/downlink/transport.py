"""
Downlink simulator: embeddings travel as little-endian float32 bytes split
over 188-byte transport packets, packets are dropped independently, and the
receiver zero-fills whatever did not arrive.
"""
import logging
import math
from typing import List, Tuple

import numpy as np

from compressor.types import Embedding
from config.constants import FLOAT_BYTES, TS_MAX_SEQUENCE, TS_PAYLOAD_SIZE
from core.exceptions import CorruptStreamError, InvalidArgumentError
from downlink.types import LossChannelConfig, PacketStream, TsPacket

logger = logging.getLogger(__name__)

WIRE_DTYPE = np.dtype('<f4')


def packet_count(M: int) -> int:
    """Packets needed for an M-element embedding."""
    return math.ceil(M * FLOAT_BYTES / TS_PAYLOAD_SIZE)


def packetize(z: Embedding) -> PacketStream:
    if z.corrupted:
        raise InvalidArgumentError('Cannot packetize a corrupted embedding')
    body = z.values.astype(WIRE_DTYPE).tobytes()
    count = packet_count(z.dim)
    if count - 1 > TS_MAX_SEQUENCE:
        raise InvalidArgumentError(f"Embedding needs {count} packets, sequence ids allow {TS_MAX_SEQUENCE + 1}")
    body = body.ljust(count * TS_PAYLOAD_SIZE, b'\x00')
    packets = [
        TsPacket(sequence_id=i, payload=body[i * TS_PAYLOAD_SIZE:(i + 1) * TS_PAYLOAD_SIZE]).to_bytes()
        for i in range(count)
    ]
    return PacketStream(packets=packets, payload_len=z.dim * FLOAT_BYTES)


def drop_packets(s: PacketStream, cfg: LossChannelConfig, rng: np.random.Generator = None) -> PacketStream:
    """Independent Bernoulli drops; dropped payloads are erased."""
    if s.num_dropped:
        raise InvalidArgumentError('Stream already carries drop flags')
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    dropped = rng.random(len(s)) < cfg.rate
    packets = [
        TsPacket.from_bytes(raw).header + bytes(TS_PAYLOAD_SIZE) if lost else raw
        for raw, lost in zip(s.packets, dropped)
    ]
    logger.debug(f"Dropped {int(dropped.sum())} of {len(s)} packets at rate {cfg.rate}")
    return PacketStream(packets=packets, dropped=dropped, payload_len=s.payload_len)


def loss_mask_for_drops(M: int, dropped: np.ndarray) -> np.ndarray:
    """Elements of an M-element embedding that overlap a dropped payload byte."""
    dropped = np.asarray(dropped, dtype=bool)
    if len(dropped) < packet_count(M):
        raise InvalidArgumentError(f"{len(dropped)} drop flags cannot cover {M} elements")
    byte_lost = np.repeat(dropped, TS_PAYLOAD_SIZE)[:M * FLOAT_BYTES]
    return byte_lost.reshape(M, FLOAT_BYTES).any(axis=1)


def depacketize(s: PacketStream, M: int) -> Embedding:
    """Reassemble by sequence id, zero-filling payloads of dropped packets."""
    if s.payload_len != M * FLOAT_BYTES:
        raise InvalidArgumentError(f"Stream carries {s.payload_len} bytes, expected {M * FLOAT_BYTES}")
    parsed = [TsPacket.from_bytes(raw) for raw in s.packets]
    order = sorted(range(len(parsed)), key=lambda i: parsed[i].sequence_id)
    if [parsed[i].sequence_id for i in order] != list(range(len(parsed))):
        raise CorruptStreamError('Sequence ids are not a contiguous run from 0')

    body = bytearray(len(parsed) * TS_PAYLOAD_SIZE)
    dropped_by_seq = np.zeros(len(parsed), dtype=bool)
    for i in order:
        packet = parsed[i]
        if s.dropped[i]:
            dropped_by_seq[packet.sequence_id] = True
            continue
        start = packet.sequence_id * TS_PAYLOAD_SIZE
        body[start:start + TS_PAYLOAD_SIZE] = packet.payload

    values = np.frombuffer(bytes(body[:M * FLOAT_BYTES]), dtype=WIRE_DTYPE).astype(np.float32)
    mask = loss_mask_for_drops(M, dropped_by_seq)
    values = np.where(mask, np.float32(0.0), values)
    return Embedding(values=values, corrupted=bool(dropped_by_seq.any()), loss_mask=mask)


def transmit(z: Embedding, cfg: LossChannelConfig, rng: np.random.Generator = None) -> Embedding:
    """packetize, drop and depacketize in one step."""
    return depacketize(drop_packets(packetize(z), cfg, rng), z.dim)


def drop_masks(batch_size: int, M: int, rate: float, rng: np.random.Generator) -> np.ndarray:
    """Element loss masks (batch_size×M) for independent packet drops per row.

    Equivalent to running each row through :func:`transmit` with the same
    drop draws, without building the packets.
    """
    if not 0.0 <= rate <= 1.0:
        raise InvalidArgumentError(f"Loss rate must lie in [0, 1], got {rate}")
    dropped = rng.random((batch_size, packet_count(M))) < rate
    # 184-byte payloads hold whole floats, so each element lives in one packet
    element_packet = (np.arange(M) * FLOAT_BYTES) // TS_PAYLOAD_SIZE
    return dropped[:, element_packet]


def corrupt_batch(z: np.ndarray, rate: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized corruption of a batch of embeddings; returns ``(z_hat, masks)``."""
    z = np.asarray(z)
    if z.ndim != 2:
        raise InvalidArgumentError(f"Expected a batch×M array, got shape {z.shape}")
    masks = drop_masks(z.shape[0], z.shape[1], rate, rng)
    return np.where(masks, np.zeros((), dtype=z.dtype), z), masks


def hexdump(s: PacketStream, width: int = 32) -> List[str]:
    """Printable hex of every packet, ``width`` bytes per line."""
    lines = []
    for index, (raw, lost) in enumerate(zip(s.packets, s.dropped)):
        packet = TsPacket.from_bytes(raw)
        state = 'DROPPED' if lost else 'ok'
        lines.append(f"packet {index} seq={packet.sequence_id} {state}")
        for offset in range(0, len(raw), width):
            chunk = raw[offset:offset + width]
            lines.append(f"  {offset:04x}  {chunk.hex(' ')}")
    return lines
