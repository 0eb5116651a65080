"""
Multi-head graph attention layer over a fully connected graph with self-loops.

For head t, scores e_ij = a_t · [W_t h_i ‖ W_t h_j] are split into a source
and a destination part; the LeakyReLU(0.2) is applied inside the softmax over
j, and each node aggregates h_i' = ELU(Σ_j α_ij W_t h_j). Heads are
concatenated (default) or averaged.
"""
import logging

import numpy as np
import torch
import torch.nn.functional as F
from torch import nn

from config.constants import GAT_LEAKY_SLOPE, GLSS_HEADS
from core.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

HEAD_MERGES = ('concat', 'mean')


class GatLayer(nn.Module):

    def __init__(self, in_dim: int, out_dim: int, heads: int = GLSS_HEADS, merge: str = 'concat',
                 leaky_slope: float = GAT_LEAKY_SLOPE):
        super().__init__()
        if heads < 1:
            raise InvalidArgumentError(f"heads must be >= 1, got {heads}")
        if merge not in HEAD_MERGES:
            raise InvalidArgumentError(f"Unknown head merge '{merge}'")
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.heads = heads
        self.merge = merge
        self.leaky_slope = leaky_slope
        self.weight = nn.Parameter(torch.empty(heads, in_dim, out_dim))
        self.att_src = nn.Parameter(torch.empty(heads, out_dim))
        self.att_dst = nn.Parameter(torch.empty(heads, out_dim))
        self.reset_parameters()

    def reset_parameters(self):
        for t in range(self.heads):
            nn.init.xavier_uniform_(self.weight.data[t])
        bound = 1.0 / np.sqrt(self.out_dim)
        nn.init.uniform_(self.att_src, -bound, bound)
        nn.init.uniform_(self.att_dst, -bound, bound)

    @property
    def output_dim(self) -> int:
        return self.out_dim * self.heads if self.merge == 'concat' else self.out_dim

    def project(self, h: torch.Tensor) -> torch.Tensor:
        """W_t h for every head: (..., K, in) -> (..., T, K, out)."""
        if h.shape[-1] != self.in_dim:
            raise InvalidArgumentError(f"GAT layer expects {self.in_dim} features, got {h.shape[-1]}")
        return torch.einsum('...ki,tio->...tko', h, self.weight)

    def attention(self, projected: torch.Tensor) -> torch.Tensor:
        """α over (..., T, K, K); row i is a softmax over neighbours j."""
        source = (projected * self.att_src[:, None, :]).sum(dim=-1)
        target = (projected * self.att_dst[:, None, :]).sum(dim=-1)
        scores = source[..., :, None] + target[..., None, :]
        return torch.softmax(F.leaky_relu(scores, self.leaky_slope), dim=-1)

    def forward(self, h: torch.Tensor) -> torch.Tensor:
        projected = self.project(h)
        heads_out = F.elu(self.attention(projected) @ projected)
        if self.merge == 'mean':
            return heads_out.mean(dim=-3)
        # (..., T, K, out) -> (..., K, T*out), head-major within each node
        moved = heads_out.movedim(-3, -2)
        return moved.reshape(*moved.shape[:-2], self.heads * self.out_dim)


def attention_coefficients(h, layer: GatLayer, head: int) -> np.ndarray:
    """K×K attention matrix of one head for node features ``h`` (K×in)."""
    if not 0 <= head < layer.heads:
        raise InvalidArgumentError(f"Head {head} outside [0, {layer.heads})")
    dtype = layer.weight.dtype
    with torch.no_grad():
        alpha = layer.attention(layer.project(torch.as_tensor(np.asarray(h), dtype=dtype)))
    return alpha[head].numpy()


def gat_layer_forward(X, layer: GatLayer) -> np.ndarray:
    with torch.no_grad():
        return layer(torch.as_tensor(np.asarray(X), dtype=layer.weight.dtype)).numpy()
