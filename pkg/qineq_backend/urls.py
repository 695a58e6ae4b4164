"""
URL configuration for qineq_backend.

Only recorded simulation runs are exposed over HTTP; every computation is
driven through the management commands.
"""
from django.contrib import admin
from django.urls import include, path

urlpatterns = [
    path("admin/", admin.site.urls),

    # API URLs
    path("api/v1/simulation/", include("simulation.urls")),

    # Health check endpoint
    path("health/", include("core.health_urls")),
]
