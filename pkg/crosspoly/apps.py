from django.apps import AppConfig


class CrosspolyConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "crosspoly"
