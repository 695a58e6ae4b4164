from rest_framework import serializers

from core.formatting import SignificantFloatField


class VarianceResultSerializer(serializers.Serializer):
    kind = serializers.CharField()
    dist = serializers.CharField()
    value = SignificantFloatField()
    epsilon = serializers.FloatField()
    nodes = serializers.IntegerField()


class VarianceSweepRowSerializer(serializers.Serializer):
    """
    One row of a Dagum shape-parameter sweep
    """
    a = SignificantFloatField()
    qZI = SignificantFloatField()
    sigma2_Z = SignificantFloatField()
    qDI = SignificantFloatField()
    sigma2_D = SignificantFloatField()
