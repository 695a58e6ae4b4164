from django.apps import AppConfig


class EstimatorsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "estimators"
    verbose_name = "Sample quantile estimators"
