from django.apps import AppConfig


class CertifyConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "certify"
    verbose_name = "Certification checks and commands"

    def ready(self):
        """
        Import checks when the app is ready to ensure they are registered.
        """
        from . import rigidity_checks  # noqa: F401
