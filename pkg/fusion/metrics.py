import numpy as np

from config.constants import DECISION_THRESHOLD
from core.exceptions import InvalidArgumentError
from fusion.types import OccupancyPrediction


def decisions_of(predictions) -> np.ndarray:
    if isinstance(predictions, OccupancyPrediction):
        return predictions.decisions[None, :]
    if len(predictions) and isinstance(predictions[0], OccupancyPrediction):
        return np.stack([p.decisions for p in predictions])
    return np.atleast_2d(np.asarray(predictions))


def scores_to_decisions(scores, threshold: float = DECISION_THRESHOLD) -> np.ndarray:
    return (np.asarray(scores) >= threshold).astype(np.uint8)


def accuracy_metric(predictions, truths) -> float:
    """Fraction of (sample, band) pairs whose decision equals the truth bit."""
    decisions = decisions_of(predictions)
    truths = np.atleast_2d(np.asarray(truths))
    if decisions.shape != truths.shape:
        raise InvalidArgumentError(f"Decisions {decisions.shape} and truths {truths.shape} differ")
    if decisions.size == 0:
        raise InvalidArgumentError('Accuracy of an empty set is undefined')
    return float(np.mean(decisions.astype(np.uint8) == truths.astype(np.uint8)))
