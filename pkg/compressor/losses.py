"""
Reconstruction and contrastive losses.

The contrastive term is a cosine loss on the decoder's intermediate features:
for similar pairs (k = 1) it is ``1 - cos(r, r_hat)``; for dissimilar pairs
(k = -1) it is ``max(0, cos(r, r_hat) - margin)``. Training always uses k = 1.
"""
import torch
import torch.nn.functional as F

from config.constants import CAE_ALPHA1, CAE_ALPHA2
from core.exceptions import InvalidArgumentError, UndefinedCosineError


def _as_tensor(value) -> torch.Tensor:
    if isinstance(value, torch.Tensor):
        return value
    return torch.as_tensor(value, dtype=torch.float64)


def _check_pair(a: torch.Tensor, b: torch.Tensor, what: str):
    if a.shape != b.shape:
        raise InvalidArgumentError(f"{what} shapes differ: {tuple(a.shape)} vs {tuple(b.shape)}")


def ae_loss(x, x_hat) -> torch.Tensor:
    """Mean squared error over the last axis, averaged over any batch axes."""
    x, x_hat = _as_tensor(x), _as_tensor(x_hat)
    _check_pair(x, x_hat, 'Reconstruction')
    return ((x - x_hat) ** 2).mean(dim=-1).mean()


def cosine(r, r_hat, strict: bool = True) -> torch.Tensor:
    """Cosine similarity along the last axis.

    With ``strict`` a zero-norm vector raises; otherwise it scores 0.
    """
    r, r_hat = _as_tensor(r), _as_tensor(r_hat)
    _check_pair(r, r_hat, 'Intermediate feature')
    if strict:
        norms = torch.linalg.vector_norm(r, dim=-1) * torch.linalg.vector_norm(r_hat, dim=-1)
        if torch.any(norms == 0):
            raise UndefinedCosineError()
        return (r * r_hat).sum(dim=-1) / norms
    return F.cosine_similarity(r, r_hat, dim=-1, eps=1e-8)


def contrastive_term(r, r_hat, k: int = 1, margin: float = 0.0, strict: bool = True) -> torch.Tensor:
    cos = cosine(r, r_hat, strict=strict)
    if k == 1:
        term = 1.0 - cos
    elif k == -1:
        term = torch.clamp(cos - margin, min=0.0)
    else:
        raise InvalidArgumentError(f"k must be 1 or -1, got {k}")
    return term.mean()


def cae_loss(x, x_hat, r, r_hat, alpha1: float = CAE_ALPHA1, alpha2: float = CAE_ALPHA2,
             k: int = 1, margin: float = 0.0, strict: bool = True) -> torch.Tensor:
    """alpha1 · MSE(x, x_hat) + alpha2 · cosine term(r, r_hat)."""
    return alpha1 * ae_loss(x, x_hat) + alpha2 * contrastive_term(r, r_hat, k, margin, strict)
