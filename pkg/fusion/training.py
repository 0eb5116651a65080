"""
GLSS and DCS training: MSE between sigmoid scores and truth bits, Adam with
linear warmup and cosine annealing.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import torch
from torch import nn

from config.constants import (
    DCS_CONV1_FILTERS,
    DCS_CONV2_FILTERS,
    DCS_DENSE_DIM,
    GLSS_DENSE_DIM,
    GLSS_GAT1_DIM,
    GLSS_GAT2_DIM,
    GLSS_HEADS,
)
from core.exceptions import InvalidArgumentError
from core.schedules import TrainingSchedule, build_optimizer
from core.seeding import child_rng, configure_torch
from core.training import ensure_finite, iterate_batches
from fusion.metrics import accuracy_metric, scores_to_decisions
from fusion.models import build_dcs, build_glss, predict_scores

logger = logging.getLogger(__name__)

SHUFFLE_STREAM = 3


@dataclass
class GlssSettings:
    dense_dim: int = GLSS_DENSE_DIM
    gat1_dim: int = GLSS_GAT1_DIM
    gat2_dim: int = GLSS_GAT2_DIM
    heads: int = GLSS_HEADS
    merge: str = 'concat'


@dataclass
class DcsSettings:
    conv1_filters: int = DCS_CONV1_FILTERS
    conv2_filters: int = DCS_CONV2_FILTERS
    dense_dim: int = DCS_DENSE_DIM


@dataclass
class FusionTrainingResult:
    model: nn.Module
    history: List[dict] = field(default_factory=list)


def _fit(name: str, model: nn.Module, inputs: np.ndarray, labels: np.ndarray, schedule: TrainingSchedule,
         validation=None) -> FusionTrainingResult:
    optimizer, scheduler = build_optimizer(model, schedule)
    shuffle_rng = child_rng(schedule.seed, SHUFFLE_STREAM)
    loss_fn = nn.MSELoss()
    history = []

    logger.info(f"Training {name} on {len(inputs)} samples for {schedule.epochs} epochs")
    for epoch in range(schedule.epochs):
        model.train()
        lr = optimizer.param_groups[0]['lr']
        total, seen = 0.0, 0
        for index in iterate_batches(len(inputs), schedule.batch_size, shuffle_rng):
            x = torch.from_numpy(inputs[index])
            y = torch.from_numpy(labels[index])
            loss = loss_fn(model(x), y)
            ensure_finite(loss.item(), history)
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total += loss.item() * len(index)
            seen += len(index)
        scheduler.step()

        record = {'epoch': epoch + 1, 'lr': lr, 'loss': total / seen}
        record['accuracy'] = accuracy_metric(scores_to_decisions(predict_scores(model, inputs)), labels)
        if validation is not None:
            val_inputs, val_labels = validation
            record['val_accuracy'] = accuracy_metric(
                scores_to_decisions(predict_scores(model, val_inputs)), val_labels
            )
        history.append(record)
        logger.debug(f"{name} epoch {epoch + 1}: {record}")

    logger.info(f"{name} finished, final loss {history[-1]['loss']:.6f}, accuracy {history[-1]['accuracy']:.4f}")
    model.eval()
    return FusionTrainingResult(model=model, history=history)


def _check(inputs, labels, ndim):
    inputs = np.asarray(inputs, dtype=np.float32)
    labels = np.asarray(labels, dtype=np.float32)
    if inputs.ndim != ndim or len(inputs) == 0:
        raise InvalidArgumentError(f"Expected a non-empty {ndim}-d input array, got shape {inputs.shape}")
    if labels.shape[0] != inputs.shape[0] or labels.ndim != 2:
        raise InvalidArgumentError(f"Labels {labels.shape} do not match inputs {inputs.shape}")
    return inputs, labels


def train_glss(graphs, labels, schedule: TrainingSchedule, settings: Optional[GlssSettings] = None,
               validation=None) -> FusionTrainingResult:
    """``graphs`` is S×K×2PN node features, ``labels`` S×num_bands truth bits."""
    graphs, labels = _check(graphs, labels, 3)
    settings = settings or GlssSettings()
    configure_torch(schedule.seed)
    model = build_glss(
        graphs.shape[2], seed=schedule.seed, num_bands=labels.shape[1], dense_dim=settings.dense_dim,
        gat1_dim=settings.gat1_dim, gat2_dim=settings.gat2_dim, heads=settings.heads, merge=settings.merge,
    )
    if validation is not None:
        validation = _check(*validation, 3)
    return _fit('GLSS', model, graphs, labels, schedule, validation)


def train_dcs(graphs, labels, schedule: TrainingSchedule, rows: int, settings: Optional[DcsSettings] = None,
              validation=None) -> FusionTrainingResult:
    """Same data as GLSS; each sample is flattened to the K·2PN concatenation.

    ``rows`` is 2P, the image height of one observation.
    """
    graphs, labels = _check(graphs, labels, 3)
    settings = settings or DcsSettings()
    num_satellites, feature_dim = graphs.shape[1], graphs.shape[2]
    if feature_dim % rows:
        raise InvalidArgumentError(f"Feature length {feature_dim} is not a multiple of {rows} rows")
    configure_torch(schedule.seed)
    model = build_dcs(
        num_satellites, rows, feature_dim // rows, seed=schedule.seed, num_bands=labels.shape[1],
        conv1_filters=settings.conv1_filters, conv2_filters=settings.conv2_filters, dense_dim=settings.dense_dim,
    )
    flat = graphs.reshape(len(graphs), -1)
    if validation is not None:
        val_graphs, val_labels = _check(*validation, 3)
        validation = (val_graphs.reshape(len(val_graphs), -1), val_labels)
    return _fit('DCS', model, flat, labels, schedule, validation)
