from django.conf import settings
from django.db import DatabaseError, connection
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView
import logging

logger = logging.getLogger(__name__)

VERSION = '1.0.0'


class HealthCheckView(APIView):
    """
    Health check endpoint for monitoring
    """
    permission_classes = [AllowAny]

    def get(self, request):
        database = 'ok'
        try:
            with connection.cursor() as cursor:
                cursor.execute('SELECT 1')
        except DatabaseError as exc:
            logger.error("Health check database query failed: %s", exc)
            database = 'unavailable'

        healthy = database == 'ok'
        return Response(
            {
                'status': 'healthy' if healthy else 'degraded',
                'service': 'qineq_backend',
                'version': VERSION,
                'database': database,
                'quadrature_abs_tol': settings.QUADRATURE_ABS_TOL,
            },
            status=status.HTTP_200_OK if healthy else status.HTTP_503_SERVICE_UNAVAILABLE,
        )
