import numpy as np
from django.test import SimpleTestCase
from scipy import stats

from core.exceptions import InvalidArgumentError
from scene_gen.analysis import band_energy_fractions
from scene_gen.synthesis import (
    constellation,
    generate_occupancy,
    generate_scene,
    rrc_taps,
    samples_per_symbol,
    synthesize_baseband,
)
from scene_gen.types import BandGrid, Modulation, OccupancyTruth


def single_band_truth(band, modulation=Modulation.QPSK, num_bands=40):
    bits = np.zeros(num_bands, dtype=np.uint8)
    bits[band] = 1
    return OccupancyTruth(bits=bits, modulations={band: modulation})


class BandGridTestCase(SimpleTestCase):
    """Test cases for the sensing band grid"""

    def test_default_grid(self):
        """Test the default grid tiles 800 MHz with 40 bands"""
        grid = BandGrid()
        self.assertEqual(grid.num_bands, 40)
        self.assertEqual(grid.f_nyq, 800e6)
        offsets = grid.band_offsets()
        self.assertEqual(offsets[0], 10e6)
        self.assertEqual(offsets[-1], 790e6)
        self.assertAlmostEqual(grid.band_centers()[0], 13.035e9)
        self.assertAlmostEqual(grid.band_centers()[-1], 13.815e9)

    def test_inconsistent_grid_rejected(self):
        """Test grids that do not tile the span are rejected"""
        with self.assertRaises(InvalidArgumentError):
            BandGrid(num_bands=39)
        with self.assertRaises(InvalidArgumentError):
            BandGrid(band_width=0)
        with self.assertRaises(InvalidArgumentError):
            BandGrid(f_lo=13.825e9, f_hi=13.025e9)

    def test_band_of_wraps_offsets(self):
        """Test offsets map to band indices modulo the span"""
        grid = BandGrid()
        self.assertEqual(grid.band_of(15e6), 0)
        self.assertEqual(grid.band_of(-10e6), 39)


class OccupancyTestCase(SimpleTestCase):
    """Test cases for occupancy draws"""

    def setUp(self):
        self.grid = BandGrid()

    def test_popcount_matches_num_signals(self):
        """Test exactly num_signals distinct bands are set"""
        rng = np.random.default_rng(1)
        for num_signals in (2, 3):
            truth = generate_occupancy(self.grid, num_signals, rng)
            self.assertEqual(int(truth.bits.sum()), num_signals)
            self.assertEqual(sorted(truth.modulations), list(np.flatnonzero(truth.bits)))
            for modulation in truth.modulations.values():
                self.assertIn(modulation, Modulation.ordered())

    def test_all_bands(self):
        """Test num_signals equal to the band count fills the grid"""
        truth = generate_occupancy(self.grid, 40, np.random.default_rng(2))
        self.assertTrue(np.all(truth.bits == 1))

    def test_out_of_range_rejected(self):
        """Test zero or too many signals are invalid"""
        rng = np.random.default_rng(3)
        with self.assertRaises(InvalidArgumentError):
            generate_occupancy(self.grid, 0, rng)
        with self.assertRaises(InvalidArgumentError):
            generate_occupancy(self.grid, 41, rng)

    def test_band_choice_is_uniform(self):
        """Test band frequencies over many draws agree with a uniform subset choice"""
        rng = np.random.default_rng(4)
        draws = 100_000
        counts = np.zeros(self.grid.num_bands)
        for _ in range(draws):
            counts += generate_occupancy(self.grid, 2, rng).bits
        expected = draws * 2 / self.grid.num_bands
        _, p_value = stats.chisquare(counts, np.full(self.grid.num_bands, expected))
        self.assertGreater(p_value, 1e-3)
        sigma = np.sqrt(draws * (2 / 40) * (1 - 2 / 40))
        self.assertTrue(np.all(np.abs(counts - expected) < 4.5 * sigma))

    def test_truth_requires_matching_modulations(self):
        """Test modulation keys must equal the occupied bands"""
        bits = np.zeros(40, dtype=np.uint8)
        bits[3] = 1
        with self.assertRaises(InvalidArgumentError):
            OccupancyTruth(bits=bits, modulations={4: Modulation.QPSK})


class PulseShapingTestCase(SimpleTestCase):
    """Test cases for the root-raised-cosine pulse"""

    def test_taps(self):
        """Test RRC taps are symmetric with unit energy"""
        taps = rrc_taps(0.25, 50)
        self.assertEqual(len(taps), 2 * 8 * 50 + 1)
        np.testing.assert_allclose(taps, taps[::-1], atol=1e-12)
        self.assertAlmostEqual(float(np.sum(taps ** 2)), 1.0, places=12)
        self.assertTrue(np.all(np.isfinite(taps)))

    def test_symbol_rate_fills_band(self):
        """Test 20 MHz bands with roll-off 0.25 give 16 MHz symbols, 50 samples each"""
        self.assertEqual(samples_per_symbol(BandGrid()), 50)

    def test_constellations_have_unit_power(self):
        """Test every constellation has unit average power"""
        for modulation in Modulation.ordered():
            points = constellation(modulation)
            self.assertAlmostEqual(float(np.mean(np.abs(points) ** 2)), 1.0, places=12)
        self.assertEqual(len(constellation(Modulation.QAM16)), 16)
        self.assertEqual(len(constellation(Modulation.PSK8)), 8)


class SynthesisTestCase(SimpleTestCase):
    """Test cases for baseband synthesis"""

    def setUp(self):
        self.grid = BandGrid()

    def test_empty_occupancy_is_silent(self):
        """Test an all-zero occupancy produces all-zero samples"""
        truth = OccupancyTruth(bits=np.zeros(40, dtype=np.uint8), modulations={})
        scene = synthesize_baseband(truth, self.grid, 6400, np.random.default_rng(0))
        self.assertEqual(len(scene.baseband), 6400)
        self.assertFalse(np.any(scene.baseband))

    def test_single_carrier_energy_in_band(self):
        """Test a lone carrier keeps at least 99% of its energy in its band"""
        for band, modulation in ((0, Modulation.QPSK), (17, Modulation.PSK8), (39, Modulation.QAM16)):
            truth = single_band_truth(band, modulation)
            scene = synthesize_baseband(truth, self.grid, 16384, np.random.default_rng(band))
            fractions = band_energy_fractions(scene.baseband, self.grid)
            self.assertGreaterEqual(fractions[band], 0.99, msg=f"band {band}")

    def test_multi_carrier_out_of_band_energy(self):
        """Test out-of-band energy stays below 1% for random occupancies"""
        for seed in range(5):
            scene = generate_scene(self.grid, 3, 16384, seed)
            fractions = band_energy_fractions(scene.baseband, self.grid)
            self.assertLessEqual(1.0 - fractions[scene.truth.bits == 1].sum(), 0.01)

    def test_carrier_power(self):
        """Test a single carrier has unit average power"""
        scene = synthesize_baseband(single_band_truth(5), self.grid, 6400, np.random.default_rng(9))
        self.assertAlmostEqual(float(np.mean(np.abs(scene.baseband) ** 2)), 1.0, places=9)

    def test_deterministic(self):
        """Test identical seeds give bit-identical scenes"""
        a = generate_scene(self.grid, 2, 6400, seed=123)
        b = generate_scene(self.grid, 2, 6400, seed=123)
        np.testing.assert_array_equal(a.baseband, b.baseband)
        np.testing.assert_array_equal(a.truth.bits, b.truth.bits)

    def test_too_short_rejected(self):
        """Test scenes shorter than the sampler needs are rejected"""
        with self.assertRaises(InvalidArgumentError):
            synthesize_baseband(single_band_truth(1), self.grid, 6399, np.random.default_rng(0))
        scene = synthesize_baseband(single_band_truth(1), self.grid, 1600, np.random.default_rng(0),
                                    min_samples=1600)
        self.assertEqual(len(scene), 1600)
