"""
Fusion classifiers.

GLSS: per-node dense layer (ReLU) -> two GAT layers -> mean pool over
satellites -> dense -> sigmoid, one score per band.
DCS: the K observations stacked as K channels of 2P×N images -> two padded
3×3 conv + 2×2 max-pool stages -> dense 256 (ReLU) -> dense -> sigmoid.
"""
import logging
from typing import Sequence

import numpy as np
import torch
from torch import nn

from compressor.types import RecoveredObservation
from config.constants import (
    DCS_CONV1_FILTERS,
    DCS_CONV2_FILTERS,
    DCS_DENSE_DIM,
    GLSS_DENSE_DIM,
    GLSS_GAT1_DIM,
    GLSS_GAT2_DIM,
    GLSS_HEADS,
    NUM_BANDS,
    WEIGHT_INIT_SEED,
)
from core.exceptions import InvalidArgumentError
from fusion.layers import GatLayer
from fusion.types import OccupancyPrediction, SensingGraph

logger = logging.getLogger(__name__)


class GlssModel(nn.Module):

    def __init__(self, input_dim: int, num_bands: int = NUM_BANDS, dense_dim: int = GLSS_DENSE_DIM,
                 gat1_dim: int = GLSS_GAT1_DIM, gat2_dim: int = GLSS_GAT2_DIM, heads: int = GLSS_HEADS,
                 merge: str = 'concat'):
        super().__init__()
        self.input_dim = input_dim
        self.num_bands = num_bands
        self.dense1 = nn.Linear(input_dim, dense_dim)
        self.gat1 = GatLayer(dense_dim, gat1_dim, heads, merge)
        self.gat2 = GatLayer(self.gat1.output_dim, gat2_dim, heads, merge)
        self.dense2 = nn.Linear(self.gat2.output_dim, num_bands)

    def embed_nodes(self, X: torch.Tensor) -> torch.Tensor:
        if X.shape[-1] != self.input_dim:
            raise InvalidArgumentError(f"GLSS expects {self.input_dim} features per node, got {X.shape[-1]}")
        return self.gat2(self.gat1(torch.relu(self.dense1(X))))

    def forward(self, X: torch.Tensor) -> torch.Tensor:
        """(..., K, 2PN) node features -> (..., num_bands) scores."""
        pooled = self.embed_nodes(X).mean(dim=-2)
        return torch.sigmoid(self.dense2(pooled))

    def dims(self):
        return {
            'input_dim': self.input_dim,
            'num_bands': self.num_bands,
            'dense_dim': self.dense1.out_features,
            'gat1_dim': self.gat1.out_dim,
            'gat2_dim': self.gat2.out_dim,
            'heads': self.gat1.heads,
            'merge': self.gat1.merge,
        }


class DcsModel(nn.Module):

    def __init__(self, num_satellites: int, rows: int, cols: int, num_bands: int = NUM_BANDS,
                 conv1_filters: int = DCS_CONV1_FILTERS, conv2_filters: int = DCS_CONV2_FILTERS,
                 dense_dim: int = DCS_DENSE_DIM):
        super().__init__()
        if rows < 4 or cols < 4:
            raise InvalidArgumentError(f"DCS needs at least 4×4 images, got {rows}×{cols}")
        self.num_satellites = num_satellites
        self.rows = rows
        self.cols = cols
        self.num_bands = num_bands
        self.conv1 = nn.Conv2d(num_satellites, conv1_filters, kernel_size=3, padding=1)
        self.conv2 = nn.Conv2d(conv1_filters, conv2_filters, kernel_size=3, padding=1)
        self.pool = nn.MaxPool2d(2)
        flat = conv2_filters * (rows // 2 // 2) * (cols // 2 // 2)
        self.dense1 = nn.Linear(flat, dense_dim)
        self.dense2 = nn.Linear(dense_dim, num_bands)

    @property
    def input_dim(self) -> int:
        return self.num_satellites * self.rows * self.cols

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        """(B, K·2P·N) concatenated observations -> (B, num_bands) scores."""
        if x.shape[-1] != self.input_dim:
            raise InvalidArgumentError(f"DCS expects {self.input_dim} inputs, got {x.shape[-1]}")
        images = x.reshape(-1, self.num_satellites, self.rows, self.cols)
        h = self.pool(torch.relu(self.conv1(images)))
        h = self.pool(torch.relu(self.conv2(h)))
        h = torch.relu(self.dense1(h.flatten(start_dim=1)))
        return torch.sigmoid(self.dense2(h))

    def dims(self):
        return {
            'num_satellites': self.num_satellites,
            'rows': self.rows,
            'cols': self.cols,
            'num_bands': self.num_bands,
            'conv1_filters': self.conv1.out_channels,
            'conv2_filters': self.conv2.out_channels,
            'dense_dim': self.dense1.out_features,
        }


def build_glss(input_dim: int, seed: int = WEIGHT_INIT_SEED, **kwargs) -> GlssModel:
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        return GlssModel(input_dim, **kwargs)


def build_dcs(num_satellites: int, rows: int, cols: int, seed: int = WEIGHT_INIT_SEED, **kwargs) -> DcsModel:
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        return DcsModel(num_satellites, rows, cols, **kwargs)


def build_graph(recovered: Sequence) -> SensingGraph:
    """Stack recovered observations (satellite order) into node features."""
    rows = [r.values if isinstance(r, RecoveredObservation) else np.asarray(r).reshape(-1) for r in recovered]
    lengths = {len(row) for row in rows}
    if len(lengths) > 1:
        raise InvalidArgumentError(f"Recovered observations have mixed lengths {sorted(lengths)}")
    return SensingGraph(X=np.stack(rows) if rows else np.zeros((0, 0)))


def glss_forward(g: SensingGraph, m: GlssModel) -> OccupancyPrediction:
    if g.feature_dim != m.input_dim:
        raise InvalidArgumentError(f"Graph features {g.feature_dim} != model input {m.input_dim}")
    dtype = next(m.parameters()).dtype
    with torch.no_grad():
        scores = m(torch.as_tensor(g.X, dtype=dtype))
    return OccupancyPrediction(scores=scores.numpy())


def dcs_forward(concatenated, m: DcsModel) -> OccupancyPrediction:
    x = np.asarray(concatenated).reshape(-1)
    if len(x) != m.input_dim:
        raise InvalidArgumentError(f"DCS expects {m.input_dim} inputs, got {len(x)}")
    dtype = next(m.parameters()).dtype
    with torch.no_grad():
        scores = m(torch.as_tensor(x[None, :], dtype=dtype))[0]
    return OccupancyPrediction(scores=scores.numpy())


def predict_scores(model: nn.Module, inputs: np.ndarray, batch_size: int = 256) -> np.ndarray:
    """Batched scores for GLSS (S×K×D) or DCS (S×K·D) inputs."""
    dtype = next(model.parameters()).dtype
    chunks = []
    model.eval()
    with torch.no_grad():
        for start in range(0, len(inputs), batch_size):
            chunks.append(model(torch.as_tensor(inputs[start:start + batch_size], dtype=dtype)).numpy())
    if not chunks:
        return np.zeros((0, model.num_bands))
    return np.concatenate(chunks)
