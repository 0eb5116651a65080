"""
Experiment configuration: named profiles, JSON overlays and dotted-key
overrides, validated by ExperimentConfigSerializer.
"""
import copy
import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

from django.conf import settings

from compressor.training import CompressorSettings
from config.constants import (
    ABLATION_GRIDS,
    BAND_F_HI,
    BAND_F_LO,
    BAND_WIDTH,
    BATCH_SIZE,
    CAE_ALPHA1,
    CAE_ALPHA2,
    CAE_EMBEDDING_DIM,
    CAE_HIDDEN_DIM,
    CAE_INTERMEDIATE_DIM,
    COSET_L,
    COSET_N,
    COSET_P,
    DCS_CONV1_FILTERS,
    DCS_CONV2_FILTERS,
    DCS_DENSE_DIM,
    DEFAULT_NUM_SIGNALS,
    EVAL_LOSS_RATES,
    GLSS_DENSE_DIM,
    GLSS_GAT1_DIM,
    GLSS_GAT2_DIM,
    GLSS_HEADS,
    LEARNING_RATE,
    MIN_LR_SCALE,
    MODULATIONS,
    NUM_BANDS,
    NUM_SATELLITES,
    OFFSET_SEED,
    SNR_GRID_DB,
    TRAIN_LOSS_RATE_MAX,
    WARMUP_EPOCHS,
)
from core.exceptions import ConfigurationError
from core.schedules import TrainingSchedule
from core.tensor_store import read_json
from fusion.training import DcsSettings, GlssSettings
from sampler.sampling import default_config
from sampler.types import NYQUIST, SUBNYQUIST, CosetConfig
from scene_gen.types import BandGrid, Modulation

logger = logging.getLogger(__name__)

DEFAULT_PROFILE = {
    'name': 'default',
    'seed': 0,
    'grid': {'f_lo': BAND_F_LO, 'f_hi': BAND_F_HI, 'band_width': BAND_WIDTH, 'num_bands': NUM_BANDS},
    'sampler': {'P': COSET_P, 'L': COSET_L, 'N': COSET_N, 'offset_seed': OFFSET_SEED, 'mode': SUBNYQUIST},
    'num_satellites': NUM_SATELLITES,
    'snr_grid_db': list(SNR_GRID_DB),
    'loss_rates': list(EVAL_LOSS_RATES),
    'num_signals': list(DEFAULT_NUM_SIGNALS),
    'modulations': list(MODULATIONS),
    'dataset': {'train': 8000, 'val': 1000, 'test': 1000},
    'schedule': {
        'epochs': 50,
        'batch_size': BATCH_SIZE,
        'learning_rate': LEARNING_RATE,
        'warmup_epochs': WARMUP_EPOCHS,
        'min_lr_scale': MIN_LR_SCALE,
    },
    'compressor': {
        'hidden_dim': CAE_HIDDEN_DIM,
        'embedding_dim': CAE_EMBEDDING_DIM,
        'intermediate_dim': CAE_INTERMEDIATE_DIM,
        'output_activation': 'relu',
        'alpha1': CAE_ALPHA1,
        'alpha2': CAE_ALPHA2,
        'max_loss_rate': TRAIN_LOSS_RATE_MAX,
    },
    'fusion': {
        'dense_dim': GLSS_DENSE_DIM,
        'gat1_dim': GLSS_GAT1_DIM,
        'gat2_dim': GLSS_GAT2_DIM,
        'heads': GLSS_HEADS,
        'merge': 'concat',
        'conv1_filters': DCS_CONV1_FILTERS,
        'conv2_filters': DCS_CONV2_FILTERS,
        'dcs_dense_dim': DCS_DENSE_DIM,
        'train_loss_rates': list(EVAL_LOSS_RATES),
    },
    'models': {'compressors': ['cae', 'ae'], 'classifiers': ['glss', 'dcs']},
    'ablation': {axis: list(values) for axis, values in ABLATION_GRIDS.items()},
}


def _quick_profile():
    profile = copy.deepcopy(DEFAULT_PROFILE)
    profile['name'] = 'quick'
    profile['num_satellites'] = 5
    profile['sampler'].update({'P': 4, 'N': 100})
    profile['dataset'] = {'train': 1600, 'val': 200, 'test': 200}
    profile['schedule']['epochs'] = 30
    profile['compressor'].update({'hidden_dim': 400, 'embedding_dim': 160, 'intermediate_dim': 512})
    profile['fusion'].update({'dense_dim': 160, 'gat1_dim': 64, 'gat2_dim': 32, 'dcs_dense_dim': 128})
    profile['ablation'].update({'embedding_dim': [50, 160], 'num_satellites': [3, 5]})
    return profile


PROFILES = {
    'default': DEFAULT_PROFILE,
    'quick': _quick_profile(),
}

# Config sections each trained model depends on; a change elsewhere reuses its checkpoint.
MODEL_DEPENDENCIES = {
    'data': ('seed', 'grid', 'sampler', 'num_satellites', 'snr_grid_db', 'num_signals', 'modulations', 'dataset'),
    'compressor': ('schedule', 'compressor'),
    'fusion': ('fusion',),
}


def deep_merge(base: Dict[str, Any], overlay: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in overlay.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_overrides(assignments: Iterable[str]) -> Dict[str, Any]:
    """Turn ``a.b=value`` strings into a nested overlay; values are parsed as JSON when possible."""
    overlay: Dict[str, Any] = {}
    for assignment in assignments or []:
        key, sep, raw = assignment.partition('=')
        if not sep or not key.strip():
            raise ConfigurationError(f"Override '{assignment}' is not of the form key=value")
        node = overlay
        parts = key.strip().split('.')
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigurationError(f"Override '{assignment}' conflicts with an earlier one")
        node[parts[-1]] = _parse_value(raw.strip())
    return overlay


def _digest(document: Dict[str, Any], sections) -> str:
    payload = json.dumps({s: document.get(s) for s in sections}, sort_keys=True)
    return hashlib.sha1(payload.encode('utf-8')).hexdigest()[:12]


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment document with typed accessors for every stage."""

    document: Dict[str, Any]
    profile: str = 'default'

    def __getitem__(self, key):
        return self.document[key]

    @property
    def name(self) -> str:
        return self.document['name']

    @property
    def seed(self) -> int:
        return int(self.document['seed'])

    @property
    def num_satellites(self) -> int:
        return int(self.document['num_satellites'])

    @property
    def grid(self) -> BandGrid:
        return BandGrid(**self.document['grid'])

    @property
    def coset_config(self) -> CosetConfig:
        sampler = self.document['sampler']
        if sampler['mode'] == NYQUIST:
            return CosetConfig.nyquist(L=sampler['L'], N=sampler['N'])
        return default_config(sampler['P'], sampler['L'], sampler['N'], seed=sampler['offset_seed'])

    @property
    def scene_samples(self) -> int:
        """Nyquist samples per scene; one full observation window."""
        sampler = self.document['sampler']
        return sampler['L'] * sampler['N']

    @property
    def modulations(self):
        return [Modulation(m) for m in self.document['modulations']]

    def schedule(self, seed_offset: int = 0) -> TrainingSchedule:
        return TrainingSchedule(seed=self.seed + seed_offset, **self.document['schedule'])

    @property
    def compressor_settings(self) -> CompressorSettings:
        return CompressorSettings(**self.document['compressor'])

    @property
    def glss_settings(self) -> GlssSettings:
        f = self.document['fusion']
        return GlssSettings(dense_dim=f['dense_dim'], gat1_dim=f['gat1_dim'], gat2_dim=f['gat2_dim'],
                            heads=f['heads'], merge=f['merge'])

    @property
    def dcs_settings(self) -> DcsSettings:
        f = self.document['fusion']
        return DcsSettings(conv1_filters=f['conv1_filters'], conv2_filters=f['conv2_filters'],
                           dense_dim=f['dcs_dense_dim'])

    @property
    def compression_factor(self) -> float:
        return self.coset_config.flat_dim / self.document['compressor']['embedding_dim']

    def ablation_values(self, axis: str):
        grid = self.document.get('ablation') or {}
        if axis not in ABLATION_GRIDS:
            raise ConfigurationError(f"Unknown ablation axis '{axis}'")
        return list(grid.get(axis, ABLATION_GRIDS[axis]))

    def data_key(self) -> str:
        return _digest(self.document, MODEL_DEPENDENCIES['data'])

    def model_key(self, kind: str) -> str:
        """Checkpoint key of a trained model; only the sections it depends on count."""
        sections = MODEL_DEPENDENCIES['data'] + MODEL_DEPENDENCIES['compressor']
        if kind in ('glss', 'dcs'):
            sections = sections + MODEL_DEPENDENCIES['fusion']
        return _digest(self.document, sections)

    @property
    def data_dir(self) -> Path:
        return Path(settings.SKYFUSE_DATA_DIR) / f"{self.name}-{self.data_key()}"

    def checkpoint_dir(self, kind: str) -> Path:
        return Path(settings.SKYFUSE_CHECKPOINT_DIR) / f"{kind}-{self.model_key(kind)}"

    def with_overrides(self, overlay: Dict[str, Any]) -> 'ExperimentConfig':
        return build_config(deep_merge(self.document, overlay), profile=self.profile)

    def to_dict(self) -> Dict[str, Any]:
        return copy.deepcopy(self.document)


def build_config(document: Dict[str, Any], profile: str = 'default') -> ExperimentConfig:
    from harness.serializers import ExperimentConfigSerializer

    serializer = ExperimentConfigSerializer(data=document)
    if not serializer.is_valid():
        logger.warning(f"Rejected experiment config: {serializer.errors}")
        raise ConfigurationError(f"Invalid experiment config: {json.dumps(serializer.errors, sort_keys=True)}")
    return ExperimentConfig(document=json.loads(json.dumps(serializer.validated_data)), profile=profile)


def load_config(profile: str = 'default', path: Optional[Path] = None, overrides: Iterable[str] = (),
                **flags) -> ExperimentConfig:
    """Profile, then config file, then CLI flags, then ``--set`` assignments."""
    if profile not in PROFILES:
        raise ConfigurationError(f"Unknown profile '{profile}', expected one of {sorted(PROFILES)}")
    document = PROFILES[profile]
    if path:
        document = deep_merge(document, read_json(Path(path)))
    flag_overlay = {}
    if flags.get('seed') is not None:
        flag_overlay['seed'] = flags['seed']
    if flags.get('epochs') is not None:
        flag_overlay['schedule'] = {'epochs': flags['epochs']}
    if flags.get('name'):
        flag_overlay['name'] = flags['name']
    document = deep_merge(document, flag_overlay)
    document = deep_merge(document, parse_overrides(overrides))
    config = build_config(document, profile=profile)
    logger.info(f"Loaded experiment config '{config.name}' (profile {profile}, seed {config.seed})")
    return config
