import logging
from pathlib import Path
from typing import Optional

from compressor.models import Compressor
from compressor.training import CompressorTrainingResult
from core.checkpoints import load_state, read_manifest, save_state
from core.schedules import TrainingSchedule

logger = logging.getLogger(__name__)


def save_checkpoint(directory: Path, result: CompressorTrainingResult,
                    schedule: Optional[TrainingSchedule] = None, extra: Optional[dict] = None) -> Path:
    manifest = {
        'kind': 'compressor',
        'dims': result.model.dims(),
        'schedule': schedule.to_dict() if schedule else None,
        'history': result.history,
        **(extra or {}),
    }
    return save_state(directory, result.model, manifest)


def load_checkpoint(directory: Path) -> Compressor:
    dims = read_manifest(directory)['dims']
    model = Compressor(
        input_dim=dims['input_dim'],
        hidden_dim=dims['hidden_dim'],
        embedding_dim=dims['embedding_dim'],
        intermediate_dim=dims['intermediate_dim'],
        output_activation=dims['output_activation'],
        variant=dims['variant'],
    )
    return load_state(directory, model)
