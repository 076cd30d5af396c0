from django.apps import AppConfig


class RigidityConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "rigidity"
    verbose_name = "Rigidity parameters and estimates"
