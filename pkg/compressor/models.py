"""
Encoder and decoder networks shared by the contrastive autoencoder and the
plain autoencoder baseline. Both variants use the same architecture; they
differ only in how they are trained.
"""
import logging

import torch
from torch import nn

from config.constants import CAE_EMBEDDING_DIM, CAE_HIDDEN_DIM, CAE_INTERMEDIATE_DIM, WEIGHT_INIT_SEED
from core.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

OUTPUT_ACTIVATIONS = ('relu', 'identity')
VARIANTS = ('cae', 'ae')


class Encoder(nn.Module):
    """z = ReLU(W2 · ReLU(W1 · x + b1) + b2)."""

    def __init__(self, input_dim: int, hidden_dim: int = CAE_HIDDEN_DIM, embedding_dim: int = CAE_EMBEDDING_DIM):
        super().__init__()
        self.input_dim = input_dim
        self.hidden_dim = hidden_dim
        self.embedding_dim = embedding_dim
        self.hidden = nn.Linear(input_dim, hidden_dim)
        self.embed = nn.Linear(hidden_dim, embedding_dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if x.shape[-1] != self.input_dim:
            raise InvalidArgumentError(f"Encoder expects {self.input_dim} inputs, got {x.shape[-1]}")
        return torch.relu(self.embed(torch.relu(self.hidden(x))))


class Decoder(nn.Module):
    """Intermediate layer r = ReLU(W3 · z + b3), then x_hat = act(Wd · r + bd).

    ``intermediate`` is exposed separately because the contrastive loss
    compares r from the clean embedding with r from the corrupted one.
    """

    def __init__(self, output_dim: int, embedding_dim: int = CAE_EMBEDDING_DIM,
                 intermediate_dim: int = CAE_INTERMEDIATE_DIM, output_activation: str = 'relu'):
        super().__init__()
        if output_activation not in OUTPUT_ACTIVATIONS:
            raise InvalidArgumentError(f"Unknown output activation '{output_activation}'")
        self.output_dim = output_dim
        self.embedding_dim = embedding_dim
        self.intermediate_dim = intermediate_dim
        self.output_activation = output_activation
        self.expand = nn.Linear(embedding_dim, intermediate_dim)
        self.output = nn.Linear(intermediate_dim, output_dim)

    def intermediate(self, z: torch.Tensor) -> torch.Tensor:
        if z.shape[-1] != self.embedding_dim:
            raise InvalidArgumentError(f"Decoder expects {self.embedding_dim} inputs, got {z.shape[-1]}")
        return torch.relu(self.expand(z))

    def reconstruct(self, r: torch.Tensor) -> torch.Tensor:
        out = self.output(r)
        if self.output_activation == 'relu':
            out = torch.relu(out)
        return out

    def forward(self, z: torch.Tensor):
        r = self.intermediate(z)
        return self.reconstruct(r), r


class Compressor(nn.Module):
    """Encoder/decoder pair with the metadata a checkpoint needs."""

    def __init__(self, input_dim: int, hidden_dim: int = CAE_HIDDEN_DIM, embedding_dim: int = CAE_EMBEDDING_DIM,
                 intermediate_dim: int = CAE_INTERMEDIATE_DIM, output_activation: str = 'relu',
                 variant: str = 'cae'):
        super().__init__()
        if variant not in VARIANTS:
            raise InvalidArgumentError(f"Unknown compressor variant '{variant}'")
        self.variant = variant
        self.encoder = Encoder(input_dim, hidden_dim, embedding_dim)
        self.decoder = Decoder(input_dim, embedding_dim, intermediate_dim, output_activation)

    def forward(self, x: torch.Tensor):
        x_hat, _ = self.decoder(self.encoder(x))
        return x_hat

    def dims(self):
        return {
            'input_dim': self.encoder.input_dim,
            'hidden_dim': self.encoder.hidden_dim,
            'embedding_dim': self.encoder.embedding_dim,
            'intermediate_dim': self.decoder.intermediate_dim,
            'output_activation': self.decoder.output_activation,
            'variant': self.variant,
        }


def build_compressor(input_dim: int, hidden_dim: int = CAE_HIDDEN_DIM, embedding_dim: int = CAE_EMBEDDING_DIM,
                     intermediate_dim: int = CAE_INTERMEDIATE_DIM, output_activation: str = 'relu',
                     variant: str = 'cae', seed: int = WEIGHT_INIT_SEED) -> Compressor:
    """Seeded construction; torch's default Linear init is uniform in ±1/sqrt(fan_in)."""
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        model = Compressor(input_dim, hidden_dim, embedding_dim, intermediate_dim, output_activation, variant)
    logger.debug(f"Built {variant} compressor {model.dims()}")
    return model
