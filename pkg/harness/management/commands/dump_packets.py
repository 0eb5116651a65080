import numpy as np

from compressor.types import Embedding
from core.seeding import child_rng
from downlink.transport import drop_packets, hexdump, packetize
from downlink.types import LossChannelConfig
from harness.management.base import ExperimentCommand

DUMP_STREAM = 40


class Command(ExperimentCommand):
    help = 'Packetizes an embedding, applies packet loss and prints a hex dump of every packet'
    command_name = 'dump_packets'
    records_run = False

    def add_experiment_arguments(self, parser):
        parser.add_argument('--length', type=int, default=None, help='Embedding length M')
        parser.add_argument('--rate', type=float, default=0.0, help='Packet loss rate')
        parser.add_argument('--width', type=int, default=32, help='Bytes per hex line')

    def run_experiment(self, cfg, options):
        M = options['length'] or cfg['compressor']['embedding_dim']
        rng = child_rng(cfg.seed, DUMP_STREAM)
        z = Embedding(values=np.maximum(rng.standard_normal(M), 0.0))
        stream = drop_packets(packetize(z), LossChannelConfig(rate=options['rate']), rng)
        for line in hexdump(stream, options['width']):
            self.stdout.write(line)
        self.stdout.write(f"{len(stream)} packets, {stream.num_dropped} dropped")
        return None, None
