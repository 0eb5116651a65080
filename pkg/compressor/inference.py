"""
Inference helpers: single-observation encode/decode returning domain types,
and batched numpy wrappers used by the pipeline.
"""
from typing import Tuple

import numpy as np
import torch

from compressor.models import Decoder, Encoder
from compressor.types import Embedding, RecoveredObservation
from core.exceptions import InvalidArgumentError

INFERENCE_BATCH = 512


def _param_dtype(module: torch.nn.Module) -> torch.dtype:
    return next(module.parameters()).dtype


def encode(x_flat, p: Encoder) -> Embedding:
    x = torch.as_tensor(np.asarray(x_flat).reshape(-1), dtype=_param_dtype(p))
    if x.shape[0] != p.input_dim:
        raise InvalidArgumentError(f"Expected a {p.input_dim}-element observation, got {x.shape[0]}")
    with torch.no_grad():
        z = p(x)
    return Embedding(values=z.numpy())


def decode(z: Embedding, p: Decoder) -> Tuple[RecoveredObservation, np.ndarray]:
    """Returns the recovered observation and the intermediate features r."""
    if z.dim != p.embedding_dim:
        raise InvalidArgumentError(f"Expected a {p.embedding_dim}-element embedding, got {z.dim}")
    values = torch.as_tensor(z.values, dtype=_param_dtype(p))
    with torch.no_grad():
        x_hat, r = p(values)
    return RecoveredObservation(values=x_hat.numpy(), source=z), r.numpy()


def compress_batch(encoder: Encoder, observations: np.ndarray) -> np.ndarray:
    """Encode a batch×2PN array into batch×M float32 embeddings."""
    observations = np.asarray(observations)
    if observations.ndim != 2 or observations.shape[1] != encoder.input_dim:
        raise InvalidArgumentError(f"Expected batch×{encoder.input_dim}, got {observations.shape}")
    dtype = _param_dtype(encoder)
    chunks = []
    with torch.no_grad():
        for start in range(0, len(observations), INFERENCE_BATCH):
            x = torch.as_tensor(observations[start:start + INFERENCE_BATCH], dtype=dtype)
            chunks.append(encoder(x).numpy().astype(np.float32))
    if not chunks:
        return np.zeros((0, encoder.embedding_dim), dtype=np.float32)
    return np.concatenate(chunks)


def recover_batch(decoder: Decoder, embeddings: np.ndarray) -> np.ndarray:
    """Decode a batch×M array into batch×2PN float32 observations."""
    embeddings = np.asarray(embeddings)
    if embeddings.ndim != 2 or embeddings.shape[1] != decoder.embedding_dim:
        raise InvalidArgumentError(f"Expected batch×{decoder.embedding_dim}, got {embeddings.shape}")
    dtype = _param_dtype(decoder)
    chunks = []
    with torch.no_grad():
        for start in range(0, len(embeddings), INFERENCE_BATCH):
            z = torch.as_tensor(embeddings[start:start + INFERENCE_BATCH], dtype=dtype)
            x_hat, _ = decoder(z)
            chunks.append(x_hat.numpy().astype(np.float32))
    if not chunks:
        return np.zeros((0, decoder.output_dim), dtype=np.float32)
    return np.concatenate(chunks)
