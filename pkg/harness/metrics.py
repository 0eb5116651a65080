"""
Recovery metrics between a normalized observation and its reconstruction.
"""
import logging
from typing import Tuple

import numpy as np

from core.exceptions import InvalidArgumentError, UndefinedCorrelationError

logger = logging.getLogger(__name__)


def recovery_metrics(x, x_hat) -> Tuple[float, float]:
    """Unweighted MSE and Pearson correlation of the flattened pair."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    x_hat = np.asarray(x_hat, dtype=np.float64).reshape(-1)
    if x.shape != x_hat.shape:
        raise InvalidArgumentError(f"Shapes differ: {x.shape} vs {x_hat.shape}")
    mse = float(np.mean((x - x_hat) ** 2))
    if np.std(x) == 0 or np.std(x_hat) == 0:
        raise UndefinedCorrelationError()
    return mse, float(np.corrcoef(x, x_hat)[0, 1])


def batch_recovery_metrics(X, X_hat) -> Tuple[np.ndarray, np.ndarray]:
    """Row-wise MSE and Pearson correlation; a constant row gets NaN correlation."""
    X = np.asarray(X, dtype=np.float64)
    X_hat = np.asarray(X_hat, dtype=np.float64)
    if X.shape != X_hat.shape or X.ndim != 2:
        raise InvalidArgumentError(f"Expected matching 2-d arrays, got {X.shape} and {X_hat.shape}")
    mse = np.mean((X - X_hat) ** 2, axis=1)
    xc = X - X.mean(axis=1, keepdims=True)
    yc = X_hat - X_hat.mean(axis=1, keepdims=True)
    denom = np.sqrt((xc ** 2).sum(axis=1) * (yc ** 2).sum(axis=1))
    with np.errstate(invalid='ignore', divide='ignore'):
        pearson = np.where(denom > 0, (xc * yc).sum(axis=1) / denom, np.nan)
    degenerate = int(np.sum(denom == 0))
    if degenerate:
        logger.warning(f"{degenerate} recovered rows are constant; their correlation is left out")
    return mse, pearson
