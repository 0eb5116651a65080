"""
Analytic GLSS cost: multiply-accumulates of every layer, doubled to FLOPs.
Activations, softmax and pooling are not counted.
"""
from typing import Dict

from config.constants import REFERENCE_GLSS_MFLOPS
from fusion.layers import GatLayer
from fusion.models import GlssModel


def gat_layer_macs(layer: GatLayer, K: int) -> int:
    per_head = K * layer.in_dim * layer.out_dim + 2 * K * layer.out_dim + K * K * layer.out_dim
    return layer.heads * per_head


def flops_report(model: GlssModel, K: int) -> Dict[str, float]:
    dense1 = K * model.dense1.in_features * model.dense1.out_features
    gat1 = gat_layer_macs(model.gat1, K)
    gat2 = gat_layer_macs(model.gat2, K)
    dense2 = model.dense2.in_features * model.dense2.out_features
    macs = {'dense1': dense1, 'gat1': gat1, 'gat2': gat2, 'dense2': dense2}
    report = {f"{name}_flops": 2 * value for name, value in macs.items()}
    report['total_flops'] = 2 * sum(macs.values())
    report['num_satellites'] = K
    report['reference_mflops'] = REFERENCE_GLSS_MFLOPS.get(K)
    return report
