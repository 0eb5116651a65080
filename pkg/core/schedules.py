"""
Learning-rate schedule shared by every trainer: linear warmup followed by
cosine annealing, stepped once per epoch.
"""
import math
from dataclasses import asdict, dataclass

import torch

from config.constants import BATCH_SIZE, LEARNING_RATE, MIN_LR_SCALE, WARMUP_EPOCHS, WEIGHT_INIT_SEED


def lr_scale(epoch: int, warmup_epochs: int, max_epochs: int, min_scale: float = MIN_LR_SCALE) -> float:
    """Multiplier applied to the base learning rate at 0-based ``epoch``.

    The multiplier rises linearly to 1 at the last warmup epoch and then
    follows a half cosine down towards ``min_scale``.
    """
    if warmup_epochs > 0 and epoch < warmup_epochs - 1:
        return (epoch + 1) / warmup_epochs
    peak_epoch = max(warmup_epochs - 1, 0)
    span = max(1, max_epochs - peak_epoch)
    step = min(max(epoch - peak_epoch, 0), span)
    cosine = 0.5 * (1.0 + math.cos(math.pi * step / span))
    return min_scale + (1.0 - min_scale) * cosine


class WarmupCosineScheduler(torch.optim.lr_scheduler.LambdaLR):
    """Linear warmup then cosine annealing.

    Args:
        optimizer: optimizer whose learning rate is scheduled.
        max_epochs: total number of epochs of the run.
        warmup_epochs: epochs of linear warmup; the peak is reached at the
            last of them.
        min_scale: floor of the cosine phase as a fraction of the base rate.
    """

    def __init__(self, optimizer, max_epochs: int, warmup_epochs: int = WARMUP_EPOCHS,
                 min_scale: float = MIN_LR_SCALE, last_epoch: int = -1):
        self.max_epochs = max_epochs
        self.warmup_epochs = warmup_epochs
        self.min_scale = min_scale
        super().__init__(optimizer, lr_lambda=self.scale_lr, last_epoch=last_epoch)

    def scale_lr(self, epoch: int) -> float:
        return lr_scale(epoch, self.warmup_epochs, self.max_epochs, self.min_scale)


def learning_rate_curve(base_lr: float, max_epochs: int, warmup_epochs: int = WARMUP_EPOCHS,
                        min_scale: float = MIN_LR_SCALE):
    """Learning rate used in each epoch (index 0 is epoch 1)."""
    return [base_lr * lr_scale(e, warmup_epochs, max_epochs, min_scale) for e in range(max_epochs)]


@dataclass
class TrainingSchedule:
    """Optimizer and schedule settings shared by every trainer."""

    epochs: int = 50
    batch_size: int = BATCH_SIZE
    learning_rate: float = LEARNING_RATE
    warmup_epochs: int = WARMUP_EPOCHS
    min_lr_scale: float = MIN_LR_SCALE
    seed: int = WEIGHT_INIT_SEED

    def to_dict(self):
        return asdict(self)


def build_optimizer(model: torch.nn.Module, schedule: TrainingSchedule):
    """Adam with the warmup + cosine scheduler, stepped once per epoch."""
    optimizer = torch.optim.Adam(model.parameters(), lr=schedule.learning_rate)
    scheduler = WarmupCosineScheduler(
        optimizer, max_epochs=schedule.epochs,
        warmup_epochs=schedule.warmup_epochs, min_scale=schedule.min_lr_scale,
    )
    return optimizer, scheduler
