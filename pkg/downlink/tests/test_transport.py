import numpy as np
from django.test import SimpleTestCase

from compressor.types import Embedding
from core.exceptions import CorruptStreamError, InvalidArgumentError
from downlink.transport import (
    corrupt_batch,
    depacketize,
    drop_masks,
    drop_packets,
    hexdump,
    loss_mask_for_drops,
    packet_count,
    packetize,
    transmit,
)
from downlink.types import LossChannelConfig, PacketStream, TsPacket


def embedding(M, seed=0):
    return Embedding(values=np.random.default_rng(seed).standard_normal(M))


class PacketFormatTestCase(SimpleTestCase):
    """Test cases for the 188-byte packet layout"""

    def test_header_layout(self):
        """Test sync byte, 13-bit sequence id and zero reserved bits"""
        packet = TsPacket(sequence_id=0x1ABC, payload=bytes(184))
        raw = packet.to_bytes()
        self.assertEqual(len(raw), 188)
        self.assertEqual(raw[:4], bytes([0x47, 0x1A, 0xBC, 0x00]))
        self.assertEqual(TsPacket.from_bytes(raw), packet)

    def test_sequence_id_range(self):
        """Test sequence ids beyond 13 bits are rejected"""
        with self.assertRaises(InvalidArgumentError):
            TsPacket(sequence_id=8192, payload=bytes(184))

    def test_bad_sync(self):
        """Test a wrong sync byte is a corrupt stream"""
        raw = bytearray(TsPacket(sequence_id=0, payload=bytes(184)).to_bytes())
        raw[0] = 0x48
        with self.assertRaises(CorruptStreamError):
            TsPacket.from_bytes(bytes(raw))


class PacketizeTestCase(SimpleTestCase):
    """Test cases for packetizing embeddings"""

    def test_packet_counts(self):
        """Test M=640 needs 14 packets and M=46 exactly one"""
        self.assertEqual(len(packetize(embedding(640))), 14)
        self.assertEqual(packet_count(640), 14)
        single = packetize(embedding(46))
        self.assertEqual(len(single), 1)
        self.assertEqual(single.payload_len, 184)

    def test_payload_bytes(self):
        """Test payloads carry little-endian float32 with a zero-padded tail"""
        z = embedding(50, seed=3)
        stream = packetize(z)
        body = b''.join(raw[4:] for raw in stream.packets)
        self.assertEqual(body[:200], z.values.astype('<f4').tobytes())
        self.assertEqual(body[200:], bytes(2 * 184 - 200))
        self.assertEqual([raw[2] for raw in stream.packets], [0, 1])

    def test_lossless_roundtrip(self):
        """Test depacketize inverts packetize bit-exactly without loss"""
        for M in (1, 46, 47, 640):
            z = embedding(M, seed=M)
            restored = depacketize(packetize(z), M)
            self.assertEqual(restored.values.tobytes(), z.values.tobytes())
            self.assertFalse(restored.corrupted)
            self.assertFalse(restored.loss_mask.any())

    def test_corrupted_embedding_rejected(self):
        """Test corrupted embeddings cannot be sent again"""
        z = Embedding(values=np.zeros(4), corrupted=True, loss_mask=np.array([True, False, False, False]))
        with self.assertRaises(InvalidArgumentError):
            packetize(z)


class DropChannelTestCase(SimpleTestCase):
    """Test cases for the Bernoulli packet-drop channel"""

    def test_extreme_rates(self):
        """Test rate 0 drops nothing and rate 1 drops everything"""
        stream = packetize(embedding(640))
        self.assertEqual(drop_packets(stream, LossChannelConfig(rate=0.0, seed=1)).num_dropped, 0)
        self.assertEqual(drop_packets(stream, LossChannelConfig(rate=1.0, seed=1)).num_dropped, 14)

    def test_empirical_rate(self):
        """Test drop fractions over 10^5 packets stay within 3 sigma"""
        n = 100_000
        payload = bytes(184)
        stream = PacketStream(
            packets=[TsPacket(sequence_id=i % 8192, payload=payload).to_bytes() for i in range(n)],
            payload_len=0,
        )
        for rate, seed in ((0.01, 1), (0.02, 2), (0.03, 3)):
            dropped = drop_packets(stream, LossChannelConfig(rate=rate, seed=seed))
            sigma = np.sqrt(rate * (1 - rate) / n)
            self.assertLess(abs(dropped.num_dropped / n - rate), 3 * sigma)

    def test_seeded(self):
        """Test a fixed seed reproduces the drop pattern"""
        stream = packetize(embedding(640))
        a = drop_packets(stream, LossChannelConfig(rate=0.3, seed=11))
        b = drop_packets(stream, LossChannelConfig(rate=0.3, seed=11))
        np.testing.assert_array_equal(a.dropped, b.dropped)

    def test_dropped_payload_erased(self):
        """Test dropped packets keep the header but lose the payload"""
        dropped = drop_packets(packetize(embedding(640)), LossChannelConfig(rate=1.0, seed=0))
        for index, raw in enumerate(dropped.packets):
            self.assertEqual(raw[0], 0x47)
            self.assertEqual(raw[2], index)
            self.assertEqual(raw[4:], bytes(184))

    def test_invalid_rate(self):
        """Test rates outside [0, 1] are rejected"""
        with self.assertRaises(InvalidArgumentError):
            LossChannelConfig(rate=1.5)


class DepacketizeTestCase(SimpleTestCase):
    """Test cases for reassembly with zero-fill"""

    def test_first_packet_lost(self):
        """Test losing packet 0 of a 640-element stream zeroes elements 0..45 only"""
        z = embedding(640, seed=5)
        stream = packetize(z)
        flags = np.zeros(14, dtype=bool)
        flags[0] = True
        lossy = PacketStream(
            packets=[stream.packets[0][:4] + bytes(184)] + stream.packets[1:],
            dropped=flags,
            payload_len=stream.payload_len,
        )
        restored = depacketize(lossy, 640)
        self.assertTrue(restored.corrupted)
        self.assertEqual(list(np.flatnonzero(restored.loss_mask)), list(range(46)))
        self.assertFalse(np.any(restored.values[:46]))
        np.testing.assert_array_equal(restored.values[46:], z.values[46:])

    def test_all_lost(self):
        """Test losing every packet yields a zero vector and a full mask"""
        z = embedding(640, seed=6)
        restored = transmit(z, LossChannelConfig(rate=1.0, seed=0))
        self.assertFalse(np.any(restored.values))
        self.assertTrue(restored.loss_mask.all())

    def test_mask_and_zero_coherence(self):
        """Test masked elements are zero and the rest are untouched"""
        z = embedding(640, seed=7)
        restored = transmit(z, LossChannelConfig(rate=0.3, seed=4))
        self.assertFalse(np.any(restored.values[restored.loss_mask]))
        np.testing.assert_array_equal(restored.values[~restored.loss_mask], z.values[~restored.loss_mask])

    def test_reordered_packets(self):
        """Test packets are placed by sequence id, not arrival order"""
        z = embedding(100, seed=8)
        stream = packetize(z)
        shuffled = PacketStream(packets=stream.packets[::-1], payload_len=stream.payload_len)
        self.assertEqual(depacketize(shuffled, 100).values.tobytes(), z.values.tobytes())

    def test_corrupt_header(self):
        """Test a bad sync byte or a gap in sequence ids is a corrupt stream"""
        stream = packetize(embedding(100))
        broken = bytearray(stream.packets[1])
        broken[0] = 0x00
        with self.assertRaises(CorruptStreamError):
            depacketize(PacketStream(packets=[stream.packets[0], bytes(broken), stream.packets[2]],
                                     payload_len=stream.payload_len), 100)
        with self.assertRaises(CorruptStreamError):
            depacketize(PacketStream(packets=[stream.packets[0], stream.packets[0], stream.packets[2]],
                                     payload_len=stream.payload_len), 100)

    def test_mask_helper_matches_depacketize(self):
        """Test the element mask helper agrees with reassembly"""
        z = embedding(640, seed=9)
        dropped = drop_packets(packetize(z), LossChannelConfig(rate=0.4, seed=2))
        restored = depacketize(dropped, 640)
        np.testing.assert_array_equal(loss_mask_for_drops(640, dropped.dropped), restored.loss_mask)

    def test_element_fraction_tracks_rate(self):
        """Test the corrupted-element fraction follows the drop rate"""
        masks = drop_masks(20_000, 640, 0.03, np.random.default_rng(1))
        self.assertAlmostEqual(masks.mean(), 0.03, delta=0.002)


class CorruptBatchTestCase(SimpleTestCase):
    """Test cases for vectorized batch corruption"""

    def test_matches_packet_path(self):
        """Test batch corruption equals per-row packet transmission under the same draws"""
        z = np.random.default_rng(0).standard_normal((1, 640)).astype(np.float32)
        z_hat, masks = corrupt_batch(z, 0.3, np.random.default_rng(42))
        via_packets = transmit(Embedding(values=z[0]), LossChannelConfig(rate=0.3), np.random.default_rng(42))
        np.testing.assert_array_equal(masks[0], via_packets.loss_mask)
        np.testing.assert_array_equal(z_hat[0], via_packets.values)

    def test_zero_rate(self):
        """Test rate 0 leaves the batch unchanged"""
        z = np.random.default_rng(1).standard_normal((8, 640)).astype(np.float32)
        z_hat, masks = corrupt_batch(z, 0.0, np.random.default_rng(0))
        np.testing.assert_array_equal(z_hat, z)
        self.assertFalse(masks.any())

    def test_rejects_vectors(self):
        """Test a single vector must be passed as a batch of one"""
        with self.assertRaises(InvalidArgumentError):
            corrupt_batch(np.zeros(640), 0.1, np.random.default_rng(0))


class HexdumpTestCase(SimpleTestCase):
    """Test cases for the packet hex dump"""

    def test_lines(self):
        """Test each packet gets a title line and its bytes in hex"""
        stream = drop_packets(packetize(embedding(46)), LossChannelConfig(rate=1.0, seed=0))
        lines = hexdump(stream)
        self.assertEqual(lines[0], 'packet 0 seq=0 DROPPED')
        self.assertTrue(lines[1].startswith('  0000  47 00 00 00'))
        self.assertEqual(len(lines), 1 + 6)
