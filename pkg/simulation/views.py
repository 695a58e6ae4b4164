from rest_framework import generics
from rest_framework.permissions import AllowAny

from .models import ExperimentRun
from .serializers import ExperimentRunDetailSerializer, ExperimentRunSerializer


class ExperimentRunListView(generics.ListAPIView):
    """
    Recorded experiment runs, newest first
    """
    queryset = ExperimentRun.objects.all()
    serializer_class = ExperimentRunSerializer
    permission_classes = [AllowAny]

    def get_queryset(self):
        queryset = super().get_queryset()
        status = self.request.query_params.get('status')
        if status:
            queryset = queryset.filter(status=status.upper())
        return queryset


class ExperimentRunDetailView(generics.RetrieveAPIView):
    """
    One recorded run with its cells
    """
    queryset = ExperimentRun.objects.prefetch_related('cells')
    serializer_class = ExperimentRunDetailSerializer
    permission_classes = [AllowAny]
