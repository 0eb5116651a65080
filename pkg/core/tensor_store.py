"""
Binary tensor container.

Each tensor is stored as ``<name>.f32`` (little-endian float32, row-major)
next to a ``<name>.json`` sidecar carrying its shape and caller metadata.
Datasets, observations and model checkpoints all use this layout.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

TENSOR_DTYPE = np.dtype('<f4')
TENSOR_SUFFIX = '.f32'
SIDECAR_SUFFIX = '.json'


def _to_jsonable(value):
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    return value


def write_json(path: Path, payload: Dict[str, Any]) -> None:
    """Write a structured-text document with stable key order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(_to_jsonable(payload), f, indent=2, sort_keys=True)
        f.write('\n')


def read_json(path: Path) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Missing structured-text file: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def save_tensor(directory: Path, name: str, array, metadata: Optional[Dict[str, Any]] = None) -> Path:
    """Store ``array`` as float32 plus a sidecar; returns the tensor path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    data = np.ascontiguousarray(np.asarray(array), dtype=TENSOR_DTYPE)
    tensor_path = directory / f"{name}{TENSOR_SUFFIX}"
    data.tofile(tensor_path)
    write_json(directory / f"{name}{SIDECAR_SUFFIX}", {
        'shape': list(data.shape),
        'dtype': 'float32',
        'byte_order': 'little',
        'layout': 'row-major',
        'metadata': metadata or {},
    })
    logger.debug(f"Saved tensor {name} {data.shape} to {directory}")
    return tensor_path


def load_tensor(directory: Path, name: str) -> Tuple[np.ndarray, Dict[str, Any]]:
    """Inverse of :func:`save_tensor`; returns ``(array, metadata)``."""
    directory = Path(directory)
    tensor_path = directory / f"{name}{TENSOR_SUFFIX}"
    if not tensor_path.exists():
        raise ConfigurationError(f"Missing tensor file: {tensor_path}")
    sidecar = read_json(directory / f"{name}{SIDECAR_SUFFIX}")
    data = np.fromfile(tensor_path, dtype=TENSOR_DTYPE)
    shape = tuple(sidecar['shape'])
    expected = int(np.prod(shape)) if shape else 1
    if data.size != expected:
        raise ConfigurationError(
            f"Tensor {tensor_path} holds {data.size} values, sidecar expects {expected}"
        )
    return data.reshape(shape), sidecar.get('metadata', {})


def tensor_exists(directory: Path, name: str) -> bool:
    directory = Path(directory)
    return (directory / f"{name}{TENSOR_SUFFIX}").exists() and (directory / f"{name}{SIDECAR_SUFFIX}").exists()
