from rest_framework import serializers

from core.formatting import SignificantFloatField

from .models import ExperimentCell, ExperimentRun


class CellSummarySerializer(serializers.Serializer):
    """
    Serializer for one aggregated cell of an in-memory report
    """
    kind = serializers.CharField(source='kind.value')
    scheme = serializers.CharField(source='scheme.value')
    sample_size = serializers.IntegerField()
    exact_index = SignificantFloatField()
    index_median = SignificantFloatField()
    index_q1 = SignificantFloatField()
    index_q3 = SignificantFloatField()
    index_mse = SignificantFloatField()
    curve_mise = SignificantFloatField()
    replications = serializers.IntegerField()


class SimulationReportSerializer(serializers.Serializer):
    experiment = serializers.CharField(source='config.name')
    distribution = serializers.SerializerMethodField()
    master_seed = serializers.CharField(source='config.master_seed')
    replications = serializers.IntegerField(source='config.replications')
    mise_grid = serializers.IntegerField(source='config.mise_grid')
    exact_index = serializers.SerializerMethodField()
    cells = CellSummarySerializer(many=True)

    def get_distribution(self, report):
        return str(report.config.dist)

    def get_exact_index(self, report):
        field = SignificantFloatField()
        field.bind('exact_index', self)
        return {kind.value: field.to_representation(value) for kind, value in report.exact_index.items()}


class ExperimentCellSerializer(serializers.ModelSerializer):
    """
    Serializer for recorded experiment cells
    """
    mise_x1000 = serializers.FloatField(read_only=True)

    class Meta:
        model = ExperimentCell
        fields = (
            'kind', 'scheme', 'sample_size', 'exact_index', 'index_median',
            'index_q1', 'index_q3', 'index_mse', 'curve_mise', 'mise_x1000',
        )
        read_only_fields = fields


class ExperimentRunSerializer(serializers.ModelSerializer):
    """
    Serializer for recorded runs, list view
    """
    cell_count = serializers.IntegerField(source='cells.count', read_only=True)

    class Meta:
        model = ExperimentRun
        fields = (
            'id', 'name', 'distribution', 'sample_sizes', 'schemes', 'kinds',
            'replications', 'mise_grid', 'master_seed', 'status', 'elapsed_seconds',
            'created_at', 'cell_count',
        )
        read_only_fields = fields


class ExperimentRunDetailSerializer(ExperimentRunSerializer):
    cells = ExperimentCellSerializer(many=True, read_only=True)

    class Meta(ExperimentRunSerializer.Meta):
        fields = ExperimentRunSerializer.Meta.fields + ('exact_indices', 'error_message', 'cells')
        read_only_fields = fields
