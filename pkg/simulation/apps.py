from django.apps import AppConfig


class SimulationAppConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "simulation"
    verbose_name = "Monte Carlo experiments"
