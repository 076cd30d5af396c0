from django.apps import AppConfig


class FinitefieldConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "finitefield"
    verbose_name = "Prime-field polynomials and point counting"
