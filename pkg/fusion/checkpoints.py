from pathlib import Path
from typing import Optional

from core.checkpoints import load_state, read_manifest, save_state
from core.exceptions import ConfigurationError
from core.schedules import TrainingSchedule
from fusion.models import DcsModel, GlssModel
from fusion.training import FusionTrainingResult


def save_checkpoint(directory: Path, result: FusionTrainingResult,
                    schedule: Optional[TrainingSchedule] = None, extra: Optional[dict] = None) -> Path:
    kind = 'glss' if isinstance(result.model, GlssModel) else 'dcs'
    manifest = {
        'kind': kind,
        'dims': result.model.dims(),
        'schedule': schedule.to_dict() if schedule else None,
        'history': result.history,
        **(extra or {}),
    }
    return save_state(directory, result.model, manifest)


def load_checkpoint(directory: Path):
    manifest = read_manifest(directory)
    dims = manifest['dims']
    if manifest.get('kind') == 'glss':
        model = GlssModel(**dims)
    elif manifest.get('kind') == 'dcs':
        model = DcsModel(**dims)
    else:
        raise ConfigurationError(f"{directory} does not hold a fusion checkpoint")
    return load_state(directory, model)
