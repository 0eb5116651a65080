import numpy as np
import torch
from django.test import SimpleTestCase

from core.exceptions import InvalidArgumentError
from fusion.layers import GatLayer, attention_coefficients, gat_layer_forward
from fusion.tests.oracles import brute_force_gat


def build_layer(in_dim, out_dim, heads=2, merge='concat', seed=0):
    torch.manual_seed(seed)
    return GatLayer(in_dim, out_dim, heads=heads, merge=merge).double()


class AttentionTestCase(SimpleTestCase):
    """Test cases for GAT attention coefficients"""

    def test_identical_features_give_uniform_attention(self):
        """Test every coefficient is 1/K when all nodes carry the same features"""
        layer = build_layer(5, 4, heads=3)
        X = np.tile(np.random.default_rng(0).standard_normal(5), (4, 1))
        for head in range(3):
            np.testing.assert_allclose(attention_coefficients(X, layer, head), np.full((4, 4), 0.25), atol=1e-12)

    def test_rows_sum_to_one(self):
        """Test attention rows are distributions over 1000 random graphs"""
        layer = build_layer(6, 3, heads=2)
        rng = np.random.default_rng(1)
        for _ in range(1000):
            K = int(rng.integers(2, 11))
            X = rng.standard_normal((K, 6)) * rng.uniform(0.1, 10)
            alpha = attention_coefficients(X, layer, int(rng.integers(0, 2)))
            self.assertTrue(np.all(alpha >= 0))
            np.testing.assert_allclose(alpha.sum(axis=1), np.ones(K), atol=1e-9)

    def test_head_out_of_range(self):
        """Test asking for a missing head fails"""
        layer = build_layer(3, 2, heads=2)
        with self.assertRaises(InvalidArgumentError):
            attention_coefficients(np.ones((2, 3)), layer, 2)


class GatForwardTestCase(SimpleTestCase):
    """Test cases for the GAT layer forward pass"""

    def test_matches_brute_force_three_nodes(self):
        """Test the vectorized layer against explicit loops on a 3-node graph"""
        layer = build_layer(4, 3, heads=2, seed=3)
        X = np.random.default_rng(3).standard_normal((3, 4))
        np.testing.assert_allclose(gat_layer_forward(X, layer), brute_force_gat(X, layer), atol=1e-10)

    def test_matches_brute_force_four_nodes_mean_merge(self):
        """Test head averaging against explicit loops on a 4-node graph"""
        layer = build_layer(5, 2, heads=3, merge='mean', seed=4)
        X = np.random.default_rng(4).standard_normal((4, 5))
        out = gat_layer_forward(X, layer)
        self.assertEqual(out.shape, (4, 2))
        np.testing.assert_allclose(out, brute_force_gat(X, layer), atol=1e-10)

    def test_single_node_identity_weight(self):
        """Test one node with W = I and one head returns ELU(h)"""
        layer = build_layer(3, 3, heads=1)
        with torch.no_grad():
            layer.weight.copy_(torch.eye(3, dtype=torch.float64)[None])
        h = np.array([[1.5, -2.0, 0.0]])
        np.testing.assert_allclose(gat_layer_forward(h, layer), [[1.5, np.expm1(-2.0), 0.0]], atol=1e-12)

    def test_identical_heads_concatenate_copies(self):
        """Test heads sharing parameters produce repeated blocks"""
        layer = build_layer(4, 2, heads=3)
        with torch.no_grad():
            layer.weight.copy_(layer.weight[0:1].clone().expand(3, -1, -1))
            layer.att_src.copy_(layer.att_src[0:1].clone().expand(3, -1))
            layer.att_dst.copy_(layer.att_dst[0:1].clone().expand(3, -1))
        out = gat_layer_forward(np.random.default_rng(5).standard_normal((3, 4)), layer)
        np.testing.assert_allclose(out[:, 0:2], out[:, 2:4])
        np.testing.assert_allclose(out[:, 0:2], out[:, 4:6])

    def test_batched_input(self):
        """Test a batch of graphs matches graph-by-graph evaluation"""
        layer = build_layer(4, 3, heads=2)
        X = np.random.default_rng(6).standard_normal((5, 3, 4))
        batched = gat_layer_forward(X, layer)
        for b in range(5):
            np.testing.assert_allclose(batched[b], gat_layer_forward(X[b], layer), atol=1e-12)

    def test_wrong_feature_length(self):
        """Test a feature length mismatch is rejected"""
        layer = build_layer(4, 3)
        with self.assertRaises(InvalidArgumentError):
            gat_layer_forward(np.ones((3, 5)), layer)

    def test_invalid_construction(self):
        """Test bad head counts and merge modes are rejected"""
        with self.assertRaises(InvalidArgumentError):
            GatLayer(4, 3, heads=0)
        with self.assertRaises(InvalidArgumentError):
            GatLayer(4, 3, merge='max')
