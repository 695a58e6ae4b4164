from rest_framework import serializers

from core.formatting import SignificantFloatField


class CurvePointSerializer(serializers.Serializer):
    p = SignificantFloatField()
    value = SignificantFloatField()


class CurveTableSerializer(serializers.Serializer):
    """
    Serializer for a tabulated curve; points render as [p, value] pairs
    """
    kind = serializers.CharField(source='kind.value')
    source = serializers.CharField()
    scheme = serializers.CharField()
    points = serializers.SerializerMethodField()

    def get_points(self, table):
        rows = CurvePointSerializer(
            [{'p': p, 'value': v} for p, v in table.as_pairs()],
            many=True,
            context=self.context,
        ).data
        return [[row['p'], row['value']] for row in rows]
