"""
Model checkpoints on the tensor container: one ``<param>.f32`` tensor per
state-dict entry plus ``manifest.json`` with dims, schedule and history.
"""
import logging
from pathlib import Path
from typing import Any, Dict

import torch

from config.constants import ERROR_MESSAGES
from core.exceptions import ConfigurationError
from core.tensor_store import load_tensor, read_json, save_tensor, write_json

logger = logging.getLogger(__name__)

MANIFEST_NAME = 'manifest.json'


def save_state(directory: Path, module: torch.nn.Module, manifest: Dict[str, Any]) -> Path:
    directory = Path(directory)
    names = []
    for name, tensor in module.state_dict().items():
        save_tensor(directory, name, tensor.detach().cpu().numpy())
        names.append(name)
    write_json(directory / MANIFEST_NAME, {**manifest, 'parameters': names})
    logger.info(f"Checkpoint written to {directory}")
    return directory


def read_manifest(directory: Path) -> Dict[str, Any]:
    path = Path(directory) / MANIFEST_NAME
    if not path.exists():
        raise ConfigurationError(f"{ERROR_MESSAGES['missing_checkpoint']}: {directory}")
    return read_json(path)


def load_state(directory: Path, module: torch.nn.Module) -> torch.nn.Module:
    manifest = read_manifest(directory)
    state = {}
    for name in manifest['parameters']:
        array, _ = load_tensor(directory, name)
        state[name] = torch.from_numpy(array.copy())
    module.load_state_dict(state)
    module.eval()
    return module
