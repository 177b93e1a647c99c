from django.apps import AppConfig


class ExtremesConfig(AppConfig):
    name = "extremes"
