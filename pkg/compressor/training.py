"""
Training loops for the two compressors.

CAE step: encode x to z, corrupt z to z_hat with the downlink packet-drop
model, map both through the decoder's shared intermediate layer to r and
r_hat, decode r_hat to x_hat, and minimise the weighted MSE + cosine loss
against the clean x. The AE baseline uses the same architecture and MSE only.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import torch

from compressor.losses import ae_loss, cae_loss, contrastive_term
from compressor.models import Compressor, build_compressor
from config.constants import (
    CAE_ALPHA1,
    CAE_ALPHA2,
    CAE_EMBEDDING_DIM,
    CAE_HIDDEN_DIM,
    CAE_INTERMEDIATE_DIM,
    TRAIN_LOSS_RATE_MAX,
)
from core.exceptions import InvalidArgumentError
from core.schedules import TrainingSchedule, build_optimizer
from core.seeding import child_rng, configure_torch
from core.training import ensure_finite, iterate_batches
from downlink.transport import drop_masks

logger = logging.getLogger(__name__)

SHUFFLE_STREAM = 1
CORRUPTION_STREAM = 2


@dataclass
class CompressorSettings:
    hidden_dim: int = CAE_HIDDEN_DIM
    embedding_dim: int = CAE_EMBEDDING_DIM
    intermediate_dim: int = CAE_INTERMEDIATE_DIM
    output_activation: str = 'relu'
    alpha1: float = CAE_ALPHA1
    alpha2: float = CAE_ALPHA2
    max_loss_rate: float = TRAIN_LOSS_RATE_MAX


@dataclass
class CompressorTrainingResult:
    model: Compressor
    history: List[dict] = field(default_factory=list)

    @property
    def encoder(self):
        return self.model.encoder

    @property
    def decoder(self):
        return self.model.decoder


def _as_dataset(observations) -> np.ndarray:
    data = np.asarray(observations, dtype=np.float32)
    if data.ndim != 2 or len(data) == 0:
        raise InvalidArgumentError(f"Expected a non-empty samples×2PN array, got shape {data.shape}")
    return data


def _run(variant: str, observations, schedule: TrainingSchedule, settings: CompressorSettings,
         validation=None) -> CompressorTrainingResult:
    data = _as_dataset(observations)
    val = _as_dataset(validation) if validation is not None else None
    configure_torch(schedule.seed)
    model = build_compressor(
        data.shape[1], settings.hidden_dim, settings.embedding_dim, settings.intermediate_dim,
        settings.output_activation, variant, seed=schedule.seed,
    )
    optimizer, scheduler = build_optimizer(model, schedule)
    shuffle_rng = child_rng(schedule.seed, SHUFFLE_STREAM)
    corruption_rng = child_rng(schedule.seed, CORRUPTION_STREAM)
    history = []

    logger.info(f"Training {variant.upper()} on {len(data)} observations for {schedule.epochs} epochs")
    for epoch in range(schedule.epochs):
        model.train()
        lr = optimizer.param_groups[0]['lr']
        totals = {'loss': 0.0, 'mse': 0.0, 'cosine': 0.0}
        seen = 0
        for index in iterate_batches(len(data), schedule.batch_size, shuffle_rng):
            x = torch.from_numpy(data[index])
            z = model.encoder(x)
            if variant == 'cae':
                rate = corruption_rng.uniform(0.0, settings.max_loss_rate)
                mask = torch.from_numpy(drop_masks(len(index), z.shape[1], rate, corruption_rng))
                z_hat = z.masked_fill(mask, 0.0)
                r = model.decoder.intermediate(z)
                r_hat = model.decoder.intermediate(z_hat)
                x_hat = model.decoder.reconstruct(r_hat)
                loss = cae_loss(x, x_hat, r, r_hat, settings.alpha1, settings.alpha2, strict=False)
                cos_term = contrastive_term(r, r_hat, strict=False).item()
            else:
                x_hat, _ = model.decoder(z)
                loss = ae_loss(x, x_hat)
                cos_term = 0.0

            ensure_finite(loss.item(), history)
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()

            batch = len(index)
            seen += batch
            totals['loss'] += loss.item() * batch
            totals['mse'] += ae_loss(x, x_hat).item() * batch
            totals['cosine'] += cos_term * batch

        scheduler.step()
        record = {'epoch': epoch + 1, 'lr': lr, **{k: v / seen for k, v in totals.items()}}
        if val is not None:
            record['val_mse'] = validation_mse(model, val)
        history.append(record)
        logger.debug(f"{variant.upper()} epoch {epoch + 1}: {record}")

    logger.info(f"{variant.upper()} finished, final loss {history[-1]['loss']:.6f}")
    model.eval()
    return CompressorTrainingResult(model=model, history=history)


def validation_mse(model: Compressor, observations: np.ndarray) -> float:
    model.eval()
    with torch.no_grad():
        x = torch.from_numpy(observations)
        return ae_loss(x, model(x)).item()


def train_cae(observations, schedule: TrainingSchedule, settings: Optional[CompressorSettings] = None,
              validation=None) -> CompressorTrainingResult:
    """Corruption-aware training; batches see a loss rate drawn from U[0, max_loss_rate]."""
    return _run('cae', observations, schedule, settings or CompressorSettings(), validation)


def train_ae(observations, schedule: TrainingSchedule, settings: Optional[CompressorSettings] = None,
             validation=None) -> CompressorTrainingResult:
    """MSE-only baseline; never sees corrupted embeddings during training."""
    return _run('ae', observations, schedule, settings or CompressorSettings(), validation)
