"""
Data volume of one second of sensing per satellite, and the time needed to
send it over the downlink, for raw Nyquist, sub-Nyquist and embedding
representations.
"""
from typing import List

from config.constants import ADC_BITS, DOWNLINK_RATE_BPS, FLOAT_BYTES
from harness.config import ExperimentConfig


def link_budget(cfg: ExperimentConfig, downlink_rate_bps: float = DOWNLINK_RATE_BPS,
                adc_bits: int = ADC_BITS) -> List[dict]:
    f_nyq = cfg.grid.f_nyq
    coset = cfg.coset_config
    sampler = cfg['sampler']
    nyquist_bps = f_nyq * 2 * adc_bits
    subnyquist_bps = nyquist_bps * coset.P / coset.L
    windows_per_second = f_nyq / (sampler['L'] * sampler['N'])
    embedding_bps = windows_per_second * cfg['compressor']['embedding_dim'] * FLOAT_BYTES * 8

    rows = []
    for name, bps in (('nyquist', nyquist_bps), ('subnyquist', subnyquist_bps), ('embedding', embedding_bps)):
        rows.append({
            'representation': name,
            'bits_per_second': bps,
            'megabytes_per_second': bps / 8 / 1e6,
            'transfer_seconds': bps / downlink_rate_bps,
        })
    return rows
