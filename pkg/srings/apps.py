from django.apps import AppConfig


class SringsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'srings'
    verbose_name = 'Schur rings'
