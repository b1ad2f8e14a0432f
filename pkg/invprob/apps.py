from django.apps import AppConfig


class InvprobConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'invprob'
