from rest_framework import serializers

from core.formatting import SignificantFloatField


class IndexEstimateSerializer(serializers.Serializer):
    """
    Serializer for index estimates; std_error only appears for Monte Carlo values
    """
    kind = serializers.CharField(source='kind.value')
    value = SignificantFloatField()
    scheme = serializers.CharField()
    method = serializers.CharField(source='method.value')
    n = serializers.IntegerField()
    std_error = SignificantFloatField(allow_null=True)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        if data.get('std_error') is None:
            data.pop('std_error', None)
        return data


class GroupIndexSerializer(serializers.Serializer):
    group = serializers.CharField()
    n = serializers.IntegerField()
    zero_count = serializers.IntegerField()
    estimates = IndexEstimateSerializer(many=True)
