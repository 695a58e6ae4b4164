"""
WSGI entry point for the read-only simulation API of qineq_backend.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "qineq_backend.settings")

application = get_wsgi_application()
