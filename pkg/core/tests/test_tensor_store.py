import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ConfigurationError
from core.tensor_store import load_tensor, read_json, save_tensor, tensor_exists, write_json


class TensorStoreTestCase(SimpleTestCase):
    """Test cases for the float32 tensor container"""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.directory = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def test_file_layout(self):
        """Test the tensor file is raw little-endian float32, row-major"""
        array = np.arange(6, dtype=np.float64).reshape(2, 3)
        path = save_tensor(self.directory, 'grid', array, {'P': 8})
        raw = path.read_bytes()
        self.assertEqual(len(raw), 6 * 4)
        self.assertEqual(raw[4:8], b'\x00\x00\x80\x3f')
        sidecar = read_json(self.directory / 'grid.json')
        self.assertEqual(sidecar['shape'], [2, 3])
        self.assertEqual(sidecar['byte_order'], 'little')
        self.assertEqual(sidecar['metadata'], {'P': 8})

    def test_load_restores_shape_and_metadata(self):
        """Test loading returns the stored values and metadata"""
        array = np.random.default_rng(3).standard_normal((4, 5)).astype(np.float32)
        save_tensor(self.directory, 'obs', array, {'seed': 3})
        loaded, metadata = load_tensor(self.directory, 'obs')
        np.testing.assert_array_equal(loaded, array)
        self.assertEqual(metadata['seed'], 3)
        self.assertTrue(tensor_exists(self.directory, 'obs'))

    def test_missing_tensor(self):
        """Test a missing tensor is a configuration error"""
        with self.assertRaises(ConfigurationError):
            load_tensor(self.directory, 'absent')

    def test_size_mismatch(self):
        """Test a truncated tensor file is rejected"""
        save_tensor(self.directory, 'cut', np.ones((3, 3)))
        path = self.directory / 'cut.f32'
        path.write_bytes(path.read_bytes()[:8])
        with self.assertRaises(ConfigurationError):
            load_tensor(self.directory, 'cut')

    def test_json_is_stable(self):
        """Test structured text is written with sorted keys and numpy values converted"""
        write_json(self.directory / 'doc.json', {'b': np.int64(2), 'a': np.array([1.5])})
        text = (self.directory / 'doc.json').read_text()
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(read_json(self.directory / 'doc.json'), {'a': [1.5], 'b': 2})
