import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from core.exceptions import ConfigurationError
from harness.config import deep_merge, load_config, parse_overrides
from harness.tests.factories import tiny_config
from sampler.types import NYQUIST


class OverrideParsingTestCase(SimpleTestCase):
    """Test cases for dotted-key overrides"""

    def test_nested_keys_and_json_values(self):
        """Test values are parsed as JSON and keys nest on dots"""
        overlay = parse_overrides(['fusion.heads=4', 'snr_grid_db=[0, 5]', 'name=run-a', 'fusion.merge=mean'])
        self.assertEqual(overlay, {'fusion': {'heads': 4, 'merge': 'mean'}, 'snr_grid_db': [0, 5], 'name': 'run-a'})

    def test_malformed_assignment(self):
        """Test an assignment without '=' is a configuration error"""
        with self.assertRaises(ConfigurationError):
            parse_overrides(['fusion.heads'])

    def test_deep_merge_keeps_siblings(self):
        """Test merging a nested overlay leaves other keys alone"""
        merged = deep_merge({'a': {'b': 1, 'c': 2}}, {'a': {'c': 3}})
        self.assertEqual(merged, {'a': {'b': 1, 'c': 3}})


class LoadConfigTestCase(SimpleTestCase):
    """Test cases for profile, file and flag layering"""

    def test_default_profile(self):
        """Test the desk-scale defaults"""
        cfg = load_config('default')
        self.assertEqual(cfg.num_satellites, 10)
        self.assertEqual(cfg.coset_config.P, 8)
        self.assertEqual(cfg.coset_config.flat_dim, 6400)
        self.assertEqual(cfg['fusion']['heads'], 6)
        self.assertEqual(cfg['dataset'], {'train': 8000, 'val': 1000, 'test': 1000})

    def test_quick_profile(self):
        """Test the CI-scale profile"""
        cfg = load_config('quick')
        self.assertEqual(cfg.num_satellites, 5)
        self.assertEqual((cfg.coset_config.P, cfg.coset_config.N), (4, 100))
        self.assertEqual(sum(cfg['dataset'].values()), 2000)

    def test_unknown_profile(self):
        """Test an unknown profile name is refused"""
        with self.assertRaises(ConfigurationError):
            load_config('enormous')

    def test_layering_order(self):
        """Test file overlays the profile and flags overlay the file"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'exp.json'
            path.write_text(json.dumps({'seed': 5, 'fusion': {'heads': 4}, 'schedule': {'epochs': 9}}))
            cfg = load_config('quick', path=path, overrides=['fusion.heads=2'], epochs=3)
        self.assertEqual(cfg.seed, 5)
        self.assertEqual(cfg['fusion']['heads'], 2)
        self.assertEqual(cfg['schedule']['epochs'], 3)

    def test_invalid_values_rejected(self):
        """Test serializer validation failures become configuration errors"""
        for override in ('loss_rates=[]', 'fusion.merge=max', 'sampler.P=16', 'snr_grid_db=[20]',
                         'num_satellites=1'):
            with self.subTest(override=override):
                with self.assertRaises(ConfigurationError):
                    load_config('default', overrides=[override])

    def test_ablation_grids_validated(self):
        """Test sweep grids reject unknown axes, unsupported sampling modes and bad values"""
        for override in ('ablation.sampling_mode=["oversampled"]', 'ablation.dropout=[0.1]',
                         'ablation.heads=[0]', 'ablation.num_satellites=[]'):
            with self.subTest(override=override):
                with self.assertRaises(ConfigurationError):
                    load_config('default', overrides=[override])

    def test_ablation_grid_accepted(self):
        """Test a valid partial sweep grid keeps the defaults for other axes"""
        cfg = load_config('default', overrides=['ablation.sampling_mode=["nyquist"]'])
        self.assertEqual(cfg.ablation_values('sampling_mode'), [NYQUIST])
        self.assertEqual(cfg.ablation_values('heads'), [2, 4, 6, 8])

    def test_nyquist_mode(self):
        """Test the full-rate arm keeps every phase"""
        cfg = load_config('default', overrides=['sampler.mode=nyquist'])
        self.assertEqual(cfg.coset_config.mode, NYQUIST)
        self.assertEqual(cfg.coset_config.rows, 32)

    def test_compression_factor(self):
        """Test a 200-element embedding compresses 6400 values 32 times"""
        cfg = load_config('default', overrides=['compressor.embedding_dim=200'])
        self.assertEqual(cfg.compression_factor, 32)


class ModelKeyTestCase(SimpleTestCase):
    """Test cases for checkpoint keys"""

    def test_fusion_change_keeps_compressor_key(self):
        """Test changing the head count retrains GLSS but not the CAE"""
        base = tiny_config()
        changed = base.with_overrides({'fusion': {'heads': 1}})
        self.assertEqual(base.model_key('cae'), changed.model_key('cae'))
        self.assertNotEqual(base.model_key('glss'), changed.model_key('glss'))

    def test_model_selection_does_not_change_keys(self):
        """Test restricting the evaluated models reuses checkpoints"""
        base = tiny_config()
        changed = base.with_overrides({'models': {'compressors': ['cae'], 'classifiers': ['glss']}})
        self.assertEqual(base.model_key('glss'), changed.model_key('glss'))

    def test_data_change_changes_every_key(self):
        """Test a different seed invalidates both datasets and models"""
        base = tiny_config()
        changed = base.with_overrides({'seed': 1})
        self.assertNotEqual(base.data_key(), changed.data_key())
        self.assertNotEqual(base.model_key('cae'), changed.model_key('cae'))
