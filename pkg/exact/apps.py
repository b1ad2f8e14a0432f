from django.apps import AppConfig


class ExactConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'exact'
