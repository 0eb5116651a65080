"""
End-to-end experiment pipeline.

For every test scene each satellite's normalized observation is encoded,
sent through the lossy downlink, decoded, and the recovered observations are
fused into band decisions. The AE and DCS baselines run on the same scenes,
channel draws and packet drop patterns as CAE and GLSS.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from compressor import checkpoints as compressor_checkpoints
from compressor.inference import compress_batch, decode, encode, recover_batch
from compressor.models import Compressor
from compressor.training import train_ae, train_cae
from core.exceptions import ConfigurationError
from core.seeding import child_rng
from downlink.transport import drop_masks, drop_packets, depacketize, packetize
from downlink.types import LossChannelConfig
from fusion import checkpoints as fusion_checkpoints
from fusion.metrics import accuracy_metric, scores_to_decisions
from fusion.models import build_graph, glss_forward, predict_scores
from fusion.training import train_dcs, train_glss
from harness.config import ExperimentConfig
from harness.datasets import SensingDataset, obtain_dataset
from harness.metrics import batch_recovery_metrics
from harness.results import ResultsTable

logger = logging.getLogger(__name__)

COMPRESSOR_KINDS = ('cae', 'ae')
CLASSIFIER_KINDS = ('glss', 'dcs')
EVAL_STREAM = 20
FUSION_TRAIN_STREAM = 21
FUSION_VAL_STREAM = 22

# Seed offsets keep the four trainers on separate weight-init streams.
SEED_OFFSETS = {'cae': 0, 'ae': 0, 'glss': 1, 'dcs': 2}


@dataclass
class ModelBundle:
    cae: Optional[Compressor] = None
    ae: Optional[Compressor] = None
    glss: Optional[object] = None
    dcs: Optional[object] = None

    def get(self, kind: str):
        model = getattr(self, kind)
        if model is None:
            raise ConfigurationError(f"No {kind.upper()} model available")
        return model


def corrupted_recovery(cae: Compressor, observations: np.ndarray, rates, rng: np.random.Generator) -> np.ndarray:
    """Recover S×K×D observations through the CAE with a per-scene loss rate drawn from ``rates``."""
    S, K, D = observations.shape
    z = compress_batch(cae.encoder, observations.reshape(-1, D)).reshape(S, K, -1)
    for s in range(S):
        rate = float(rng.choice(rates))
        z[s] = np.where(drop_masks(K, z.shape[2], rate, rng), np.float32(0.0), z[s])
    return recover_batch(cae.decoder, z.reshape(S * K, -1)).reshape(S, K, D)


def train_model(cfg: ExperimentConfig, kind: str, bundle: Optional[ModelBundle] = None):
    """Train one model from the configured datasets and write its checkpoint."""
    train = obtain_dataset(cfg, 'train')
    val = obtain_dataset(cfg, 'val')
    schedule = cfg.schedule(SEED_OFFSETS[kind])
    extra = {'config_key': cfg.model_key(kind), 'profile': cfg.profile}

    if kind in COMPRESSOR_KINDS:
        trainer = train_cae if kind == 'cae' else train_ae
        result = trainer(train.flat_observations(), schedule, cfg.compressor_settings,
                         validation=val.flat_observations())
        compressor_checkpoints.save_checkpoint(cfg.checkpoint_dir(kind), result, schedule, extra)
        return result

    cae = (bundle.cae if bundle and bundle.cae is not None else obtain_model(cfg, 'cae'))
    rates = cfg['fusion']['train_loss_rates']
    graphs = corrupted_recovery(cae, train.observations, rates, child_rng(cfg.seed, FUSION_TRAIN_STREAM))
    val_graphs = corrupted_recovery(cae, val.observations, rates, child_rng(cfg.seed, FUSION_VAL_STREAM))
    validation = (val_graphs, val.truth.astype(np.float32))
    labels = train.truth.astype(np.float32)
    if kind == 'glss':
        result = train_glss(graphs, labels, schedule, cfg.glss_settings, validation=validation)
    else:
        result = train_dcs(graphs, labels, schedule, rows=cfg.coset_config.rows,
                           settings=cfg.dcs_settings, validation=validation)
    fusion_checkpoints.save_checkpoint(cfg.checkpoint_dir(kind), result, schedule, extra)
    return result


def obtain_model(cfg: ExperimentConfig, kind: str, allow_training: bool = True, bundle=None):
    """Load the checkpoint matching this config, training it first when allowed."""
    directory = cfg.checkpoint_dir(kind)
    loader = compressor_checkpoints if kind in COMPRESSOR_KINDS else fusion_checkpoints
    if (directory / 'manifest.json').exists():
        logger.info(f"Loading {kind.upper()} checkpoint from {directory}")
        return loader.load_checkpoint(directory)
    if not allow_training:
        raise ConfigurationError(f"Missing {kind.upper()} checkpoint at {directory}")
    return train_model(cfg, kind, bundle).model


def obtain_models(cfg: ExperimentConfig, allow_training: bool = True) -> ModelBundle:
    bundle = ModelBundle()
    selection = cfg['models']
    needed = list(selection['compressors'])
    if selection['classifiers'] and 'cae' not in needed:
        needed.insert(0, 'cae')
    for kind in needed + list(selection['classifiers']):
        setattr(bundle, kind, obtain_model(cfg, kind, allow_training, bundle))
    return bundle


def _cells(dataset: SensingDataset):
    for snr in sorted(set(dataset.snr_db.tolist())):
        for count in sorted(set(dataset.num_signals.tolist())):
            index = np.flatnonzero((dataset.snr_db == snr) & (dataset.num_signals == count))
            if len(index):
                yield snr, count, index


def evaluate(cfg: ExperimentConfig, models: ModelBundle, dataset: SensingDataset,
             variant: str = '') -> ResultsTable:
    """Paired evaluation of every selected model at every configured loss rate."""
    table = ResultsTable()
    selection = cfg['models']
    S, K, D = dataset.observations.shape
    flat = dataset.flat_observations()
    embeddings = {kind: compress_batch(models.get(kind).encoder, flat)
                  for kind in set(selection['compressors']) | ({'cae'} if selection['classifiers'] else set())}
    dims = {z.shape[1] for z in embeddings.values()}
    if len(dims) > 1:
        raise ConfigurationError(f"Paired evaluation needs one embedding size, got {sorted(dims)}")
    M = dims.pop()

    for rate_index, rate in enumerate(cfg['loss_rates']):
        rng = child_rng(cfg.seed, EVAL_STREAM, rate_index)
        masks = drop_masks(S * K, M, rate, rng)
        recovered = {}
        for kind, z in embeddings.items():
            z_hat = np.where(masks, np.float32(0.0), z)
            recovered[kind] = recover_batch(models.get(kind).decoder, z_hat)

        mse, pearson = {}, {}
        for kind in selection['compressors']:
            mse[kind], pearson[kind] = batch_recovery_metrics(flat, recovered[kind])

        decisions = {}
        if selection['classifiers']:
            graphs = recovered['cae'].reshape(S, K, D)
            for kind in selection['classifiers']:
                inputs = graphs if kind == 'glss' else graphs.reshape(S, K * D)
                decisions[kind] = scores_to_decisions(predict_scores(models.get(kind), inputs))

        for snr, count, index in _cells(dataset):
            rows = (index[:, None] * K + np.arange(K)[None, :]).reshape(-1)
            cell = {'variant': variant, 'snr_db': snr, 'loss_rate': rate, 'num_signals': count, 'seed': cfg.seed}
            for kind in selection['compressors']:
                table.append(model=kind, metric='mse', value=float(np.mean(mse[kind][rows])), **cell)
                table.append(model=kind, metric='pearson', value=float(np.nanmean(pearson[kind][rows])), **cell)
            for kind in selection['classifiers']:
                value = accuracy_metric(decisions[kind][index], dataset.truth[index])
                table.append(model=kind, metric='accuracy', value=value, **cell)
        logger.info(f"Evaluated {S} scenes at loss rate {rate}")
    return table


def run_pipeline(cfg: ExperimentConfig, models: Optional[ModelBundle] = None, allow_training: bool = True,
                 variant: str = '') -> ResultsTable:
    models = models or obtain_models(cfg, allow_training)
    test = obtain_dataset(cfg, 'test')
    return evaluate(cfg, models, test, variant)


def trace_scene(observations: np.ndarray, models: ModelBundle, rate: float,
                rng: np.random.Generator, kind: str = 'cae') -> Dict[str, object]:
    """Run one scene through the packet-level chain, stage by stage.

    Draws from ``rng`` in the same order as :func:`drop_masks`, so the drop
    pattern matches the batched evaluation for the same generator state.
    """
    compressor = models.get(kind)
    recovered, embeddings = [], []
    for x in observations:
        z = encode(x, compressor.encoder)
        received = depacketize(drop_packets(packetize(z), LossChannelConfig(rate=rate), rng), z.dim)
        x_hat, _ = decode(received, compressor.decoder)
        embeddings.append(received)
        recovered.append(x_hat)
    trace = {'embeddings': embeddings, 'recovered': recovered}
    if models.glss is not None:
        trace['prediction'] = glss_forward(build_graph(recovered), models.glss)
    return trace
