import math

import numpy as np
import torch
from django.test import SimpleTestCase

from compressor.losses import ae_loss, cae_loss, contrastive_term, cosine
from core.exceptions import InvalidArgumentError, UndefinedCosineError


def loop_cae_loss(x, x_hat, r, r_hat, alpha1=1.0, alpha2=3.0):
    mse = sum((a - b) ** 2 for a, b in zip(x, x_hat)) / len(x)
    dot = sum(a * b for a, b in zip(r, r_hat))
    norm = math.sqrt(sum(a * a for a in r)) * math.sqrt(sum(b * b for b in r_hat))
    return alpha1 * mse + alpha2 * (1.0 - dot / norm)


FIXED_CASES = [
    ([1.0, 0.0], [0.0, 0.0], [1.0, 0.0], [1 / math.sqrt(2), 1 / math.sqrt(2)]),
    ([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], [0.2, 0.4], [0.2, 0.4]),
    ([0.5, -0.5], [0.5, -0.5], [1.0, 0.0], [0.0, 2.0]),
    ([1.0, 1.0], [0.0, 0.0], [3.0, 4.0], [4.0, 3.0]),
    ([-1.0, 2.0, 0.5, 0.0], [0.0, 1.5, 0.5, 0.25], [1.0, 2.0, 3.0], [3.0, 2.0, 1.0]),
    ([2.0], [-1.0], [1.0, 1.0, 1.0], [1.0, 0.0, 0.0]),
    ([0.1, 0.2, 0.3], [0.3, 0.2, 0.1], [5.0, 0.0], [5.0, 1e-3]),
    ([4.0, -4.0], [0.0, 0.0], [1.0, -1.0], [-1.0, 1.0]),
    ([0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [0.5, 0.5, 0.5, 0.5], [1.0, 1.0, 1.0, 1.0]),
    ([3.0, 1.0, -2.0, 7.0, 0.0], [2.5, 1.5, -2.0, 6.0, 0.5], [1.0, 0.0, 2.0], [0.0, 1.0, 2.0]),
    ([1.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]),
]


class CaeLossTestCase(SimpleTestCase):
    """Test cases for the weighted MSE + cosine loss"""

    def test_zero_loss(self):
        """Test identical reconstruction and features give zero loss"""
        x = [0.3, -1.2, 4.0]
        r = [1.0, 2.0]
        self.assertAlmostEqual(cae_loss(x, x, r, r).item(), 0.0, places=12)

    def test_orthogonal_features(self):
        """Test orthogonal features with exact reconstruction cost alpha2 = 3"""
        self.assertAlmostEqual(cae_loss([1.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]).item(), 3.0, places=12)

    def test_worked_example(self):
        """Test x=(1,0), x_hat=0, r=(1,0), r_hat=(1,1)/sqrt2 gives 0.5 + 3(1 - 1/sqrt2)"""
        value = cae_loss(*FIXED_CASES[0]).item()
        self.assertAlmostEqual(value, 1.3786796564403576, delta=1e-9)

    def test_fixed_vectors_match_hand_formula(self):
        """Test the loss against a plain-Python calculation on fixed vectors"""
        for case in FIXED_CASES:
            self.assertAlmostEqual(cae_loss(*case).item(), loop_cae_loss(*case), delta=1e-9, msg=str(case))

    def test_alpha2_zero_reduces_to_mse(self):
        """Test alpha2 = 0 leaves alpha1 times the MSE"""
        rng = np.random.default_rng(0)
        x, x_hat = rng.standard_normal(20), rng.standard_normal(20)
        r, r_hat = rng.standard_normal(6), rng.standard_normal(6)
        self.assertAlmostEqual(cae_loss(x, x_hat, r, r_hat, alpha1=2.0, alpha2=0.0).item(),
                               2.0 * ae_loss(x, x_hat).item(), places=14)

    def test_cosine_term_range(self):
        """Test the cosine term stays in [0, 2] and vanishes for positive multiples"""
        rng = np.random.default_rng(1)
        for _ in range(200):
            r, r_hat = rng.standard_normal(5), rng.standard_normal(5)
            term = contrastive_term(r, r_hat).item()
            self.assertGreaterEqual(term, 0.0)
            self.assertLessEqual(term, 2.0)
        r = rng.standard_normal(5)
        self.assertAlmostEqual(contrastive_term(r, 2.5 * r).item(), 0.0, places=12)
        self.assertAlmostEqual(contrastive_term(r, -r).item(), 2.0, places=12)

    def test_dissimilar_branch(self):
        """Test k = -1 scores max(0, cos - margin)"""
        self.assertAlmostEqual(contrastive_term([1.0, 0.0], [1.0, 1.0], k=-1, margin=0.2).item(),
                               1 / math.sqrt(2) - 0.2, places=12)
        self.assertEqual(contrastive_term([1.0, 0.0], [-1.0, 0.0], k=-1).item(), 0.0)
        with self.assertRaises(InvalidArgumentError):
            contrastive_term([1.0], [1.0], k=0)

    def test_zero_norm(self):
        """Test a zero-norm feature vector makes the cosine undefined"""
        with self.assertRaises(UndefinedCosineError):
            cae_loss([1.0], [1.0], [0.0, 0.0], [1.0, 0.0])
        self.assertEqual(cosine([0.0, 0.0], [1.0, 0.0], strict=False).item(), 0.0)

    def test_batched(self):
        """Test a batch loss is the mean of per-sample losses"""
        rng = np.random.default_rng(2)
        xs, xhs = rng.standard_normal((4, 6)), rng.standard_normal((4, 6))
        rs, rhs = rng.standard_normal((4, 3)), rng.standard_normal((4, 3))
        batched = cae_loss(xs, xhs, rs, rhs).item()
        single = np.mean([loop_cae_loss(*args) for args in zip(xs, xhs, rs, rhs)])
        self.assertAlmostEqual(batched, single, delta=1e-12)


class AeLossTestCase(SimpleTestCase):
    """Test cases for the MSE loss"""

    def test_values(self):
        """Test identical vectors give 0 and (1,1) vs (0,0) gives 1"""
        self.assertEqual(ae_loss([1.0, 2.0], [1.0, 2.0]).item(), 0.0)
        self.assertEqual(ae_loss([1.0, 1.0], [0.0, 0.0]).item(), 1.0)

    def test_loop_oracle(self):
        """Test random pairs against an element loop"""
        rng = np.random.default_rng(3)
        x, x_hat = rng.standard_normal(100), rng.standard_normal(100)
        expected = sum((a - b) ** 2 for a, b in zip(x, x_hat)) / 100
        self.assertAlmostEqual(ae_loss(x, x_hat).item(), expected, delta=1e-12)

    def test_shape_mismatch(self):
        """Test mismatched lengths are rejected"""
        with self.assertRaises(InvalidArgumentError):
            ae_loss(torch.zeros(3), torch.zeros(4))
