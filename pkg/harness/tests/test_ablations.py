from django.test import SimpleTestCase

from core.exceptions import ConfigurationError
from harness.ablations import ablate, axis_overlay
from harness.config import load_config
from harness.tests.factories import TemporaryStorageMixin, tiny_config


class AxisOverlayTestCase(SimpleTestCase):
    """Test cases for mapping ablation axes onto config keys"""

    def test_nested_and_flat_axes(self):
        """Test each axis lands on its config key"""
        self.assertEqual(axis_overlay('heads', 4), {'fusion': {'heads': 4}})
        self.assertEqual(axis_overlay('num_satellites', 5), {'num_satellites': 5})
        self.assertEqual(axis_overlay('sampling_mode', 'nyquist'), {'sampler': {'mode': 'nyquist'}})

    def test_unknown_axis(self):
        """Test an unknown axis is refused"""
        with self.assertRaises(ConfigurationError):
            axis_overlay('dropout', 0.1)

    def test_default_grids(self):
        """Test the default sweep grids"""
        cfg = load_config('default')
        self.assertEqual(cfg.ablation_values('heads'), [2, 4, 6, 8])
        self.assertEqual(cfg.ablation_values('num_satellites'), [3, 5, 7, 10])
        self.assertEqual(cfg.ablation_values('embedding_dim'), [200, 640])
        self.assertEqual(cfg.ablation_values('num_cosets'), [4, 6, 8])


class AblateTestCase(TemporaryStorageMixin, SimpleTestCase):
    """Test cases for running sweeps"""

    def test_heads_sweep(self):
        """Test every sweep point is tagged and only GLSS and CAE are evaluated"""
        table = ablate(tiny_config(), 'heads')
        frame = table.to_frame()
        self.assertEqual(set(frame['variant']), {'heads=1', 'heads=2'})
        self.assertEqual(set(frame['model']), {'cae', 'glss'})

    def test_embedding_sweep_records_compression(self):
        """Test the embedding sweep reports its compression factor"""
        frame = ablate(tiny_config(), 'embedding_dim').select(metric='compression_factor')
        factors = dict(zip(frame['variant'], frame['value']))
        self.assertAlmostEqual(factors['embedding_dim=46'], 128 / 46)
        self.assertAlmostEqual(factors['embedding_dim=92'], 128 / 92)

    def test_sweep_reproducible(self):
        """Test a sweep point gives the same rows when repeated"""
        cfg = tiny_config('ablation.num_satellites=[2]')
        self.assertEqual(ablate(cfg, 'num_satellites').rows, ablate(cfg, 'num_satellites').rows)

    def test_sampling_mode_sweep(self):
        """Test the Nyquist arm runs through the same pipeline"""
        frame = ablate(tiny_config(), 'sampling_mode').to_frame()
        self.assertEqual(set(frame['variant']), {'sampling_mode=nyquist', 'sampling_mode=subnyquist'})
