"""
Configuration constants for SkyFuse.
This file centralizes all hardcoded values and configuration constants.
"""

# Sensing band grid (Hz)
BAND_F_LO = 13.025e9
BAND_F_HI = 13.825e9
BAND_WIDTH = 20e6
NUM_BANDS = 40

# Scene synthesis
MODULATIONS = ('QPSK', '8PSK', '16QAM')
RRC_ROLLOFF = 0.25
RRC_SPAN_SYMBOLS = 8  # filter half-span in symbols
DEFAULT_NUM_SIGNALS = (2, 3)

# Satellite channel
DOPPLER_MAX_HZ = 480e3
SNR_MIN_DB = -10.0
SNR_MAX_DB = 10.0
SATELLITE_SNR_SPREAD_DB = 3.0
DEFAULT_PATH_LOSS_DB = 0.0

# Multi-coset sampler
COSET_P = 8
COSET_L = 16
COSET_N = 400
OFFSET_SEED = 43

# Compressor widths
CAE_HIDDEN_DIM = 1600      # K1
CAE_EMBEDDING_DIM = 640    # M
CAE_INTERMEDIATE_DIM = 2048  # K2
CAE_ALPHA1 = 1.0
CAE_ALPHA2 = 3.0
TRAIN_LOSS_RATE_MAX = 0.03

# Downlink packets (MPEG-TS sizing)
TS_PACKET_SIZE = 188
TS_HEADER_SIZE = 4
TS_PAYLOAD_SIZE = TS_PACKET_SIZE - TS_HEADER_SIZE
TS_SYNC_BYTE = 0x47
TS_MAX_SEQUENCE = (1 << 13) - 1
FLOAT_BYTES = 4
EVAL_LOSS_RATES = (0.01, 0.02, 0.03)
MEASURED_LOSS_RATE = 0.0173
DOWNLINK_RATE_BPS = 100e6

# Fusion (GLSS) widths
NUM_SATELLITES = 10
GLSS_DENSE_DIM = 640
GLSS_GAT1_DIM = 256
GLSS_GAT2_DIM = 128
GLSS_HEADS = 6
GAT_LEAKY_SLOPE = 0.2
DECISION_THRESHOLD = 0.5

# DCS baseline
DCS_CONV1_FILTERS = 16
DCS_CONV2_FILTERS = 32
DCS_DENSE_DIM = 256

# Optimisation
LEARNING_RATE = 1e-3
WARMUP_EPOCHS = 5
MIN_LR_SCALE = 0.0
BATCH_SIZE = 128
WEIGHT_INIT_SEED = 0

# Experiment grids
SNR_GRID_DB = (-10, -5, 0, 5, 10)
ABLATION_GRIDS = {
    'heads': (2, 4, 6, 8),
    'embedding_dim': (200, 640),
    'num_satellites': (3, 5, 7, 10),
    'num_cosets': (4, 6, 8),
    'sampling_mode': ('nyquist', 'subnyquist'),
}

# Reference GLSS cost in MFLOPs by satellite count, reported next to our own count.
REFERENCE_GLSS_MFLOPS = {10: 220.61, 7: 110.19, 5: 58.23, 3: 23.59}
REFERENCE_CAE_SECONDS = 0.6576

# Precision of raw IQ samples used by the link budget (bits per real component)
ADC_BITS = 16

# Error messages
ERROR_MESSAGES = {
    'invalid_argument': 'Invalid argument provided',
    'degenerate_input': 'Input has zero variance',
    'undefined_correlation': 'Correlation is undefined for a zero-variance stream',
    'undefined_cosine': 'Cosine similarity is undefined for a zero-norm vector',
    'corrupt_stream': 'Packet stream is malformed',
    'training_failure': 'Training diverged (non-finite loss)',
    'missing_checkpoint': 'Required checkpoint is missing',
    'invalid_config': 'Experiment configuration is invalid',
}

# Exit codes of the management commands
EXIT_CONFIG_ERROR = 2
EXIT_TRAINING_FAILURE = 3
