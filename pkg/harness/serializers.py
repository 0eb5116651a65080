from rest_framework import serializers

from config.constants import ABLATION_GRIDS, MODULATIONS
from harness.models import ExperimentRun, ResultRow
from sampler.types import NYQUIST, SUBNYQUIST


class GridSerializer(serializers.Serializer):
    f_lo = serializers.FloatField()
    f_hi = serializers.FloatField()
    band_width = serializers.FloatField(min_value=1.0)
    num_bands = serializers.IntegerField(min_value=1)

    def validate(self, attrs):
        if attrs['f_hi'] <= attrs['f_lo']:
            raise serializers.ValidationError('f_hi must exceed f_lo')
        implied = (attrs['f_hi'] - attrs['f_lo']) / attrs['band_width']
        if abs(implied - attrs['num_bands']) > 1e-9:
            raise serializers.ValidationError('num_bands does not tile the span')
        return attrs


class SamplerSerializer(serializers.Serializer):
    P = serializers.IntegerField(min_value=1)
    L = serializers.IntegerField(min_value=2)
    N = serializers.IntegerField(min_value=4)
    offset_seed = serializers.IntegerField(min_value=0)
    mode = serializers.ChoiceField(choices=[SUBNYQUIST, NYQUIST])

    def validate(self, attrs):
        if attrs['mode'] == SUBNYQUIST and attrs['P'] >= attrs['L']:
            raise serializers.ValidationError('Sub-Nyquist sampling needs P < L')
        return attrs


class DatasetSizeSerializer(serializers.Serializer):
    train = serializers.IntegerField(min_value=1)
    val = serializers.IntegerField(min_value=1)
    test = serializers.IntegerField(min_value=1)


class ScheduleSerializer(serializers.Serializer):
    epochs = serializers.IntegerField(min_value=1)
    batch_size = serializers.IntegerField(min_value=1)
    learning_rate = serializers.FloatField(min_value=0.0)
    warmup_epochs = serializers.IntegerField(min_value=0)
    min_lr_scale = serializers.FloatField(min_value=0.0, max_value=1.0)


class CompressorSerializer(serializers.Serializer):
    hidden_dim = serializers.IntegerField(min_value=1)
    embedding_dim = serializers.IntegerField(min_value=1)
    intermediate_dim = serializers.IntegerField(min_value=1)
    output_activation = serializers.ChoiceField(choices=['relu', 'identity'])
    alpha1 = serializers.FloatField(min_value=0.0)
    alpha2 = serializers.FloatField(min_value=0.0)
    max_loss_rate = serializers.FloatField(min_value=0.0, max_value=1.0)


class FusionSerializer(serializers.Serializer):
    dense_dim = serializers.IntegerField(min_value=1)
    gat1_dim = serializers.IntegerField(min_value=1)
    gat2_dim = serializers.IntegerField(min_value=1)
    heads = serializers.IntegerField(min_value=1)
    merge = serializers.ChoiceField(choices=['concat', 'mean'])
    conv1_filters = serializers.IntegerField(min_value=1)
    conv2_filters = serializers.IntegerField(min_value=1)
    dcs_dense_dim = serializers.IntegerField(min_value=1)
    train_loss_rates = serializers.ListField(
        child=serializers.FloatField(min_value=0.0, max_value=1.0), allow_empty=False
    )


class ModelSelectionSerializer(serializers.Serializer):
    compressors = serializers.ListField(
        child=serializers.ChoiceField(choices=['cae', 'ae']), allow_empty=False
    )
    classifiers = serializers.ListField(
        child=serializers.ChoiceField(choices=['glss', 'dcs']), allow_empty=True
    )


class AblationSerializer(serializers.Serializer):
    heads = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False, required=False)
    embedding_dim = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False,
                                          required=False)
    num_satellites = serializers.ListField(child=serializers.IntegerField(min_value=2), allow_empty=False,
                                           required=False)
    num_cosets = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False,
                                       required=False)
    sampling_mode = serializers.ListField(child=serializers.ChoiceField(choices=[NYQUIST, SUBNYQUIST]),
                                          allow_empty=False, required=False)

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = set(data) - set(ABLATION_GRIDS)
            if unknown:
                raise serializers.ValidationError(f"Unknown ablation axes: {sorted(unknown)}")
        return super().to_internal_value(data)


class ExperimentConfigSerializer(serializers.Serializer):
    """Validates a merged experiment document before it becomes an ExperimentConfig."""

    name = serializers.SlugField(max_length=64)
    seed = serializers.IntegerField(min_value=0)
    grid = GridSerializer()
    sampler = SamplerSerializer()
    num_satellites = serializers.IntegerField(min_value=2)
    snr_grid_db = serializers.ListField(
        child=serializers.FloatField(min_value=-10.0, max_value=10.0), allow_empty=False
    )
    loss_rates = serializers.ListField(
        child=serializers.FloatField(min_value=0.0, max_value=1.0), allow_empty=False
    )
    num_signals = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False)
    modulations = serializers.ListField(child=serializers.ChoiceField(choices=list(MODULATIONS)), allow_empty=False)
    dataset = DatasetSizeSerializer()
    schedule = ScheduleSerializer()
    compressor = CompressorSerializer()
    fusion = FusionSerializer()
    models = ModelSelectionSerializer()
    ablation = AblationSerializer(required=False)

    def validate(self, attrs):
        if max(attrs['num_signals']) > attrs['grid']['num_bands']:
            raise serializers.ValidationError('num_signals cannot exceed the number of bands')
        return attrs


class ResultRowSerializer(serializers.ModelSerializer):
    class Meta:
        model = ResultRow
        fields = ['id', 'run', 'model', 'variant', 'snr_db', 'loss_rate', 'num_signals', 'metric', 'value', 'seed']
        read_only_fields = fields


class ExperimentRunSerializer(serializers.ModelSerializer):
    row_count = serializers.SerializerMethodField()

    class Meta:
        model = ExperimentRun
        fields = [
            'id', 'name', 'command', 'profile', 'seed', 'config', 'status', 'wall_clock_seconds',
            'csv_path', 'error', 'row_count', 'created_at', 'finished_at',
        ]
        read_only_fields = fields

    def get_row_count(self, obj):
        return obj.rows.count()
