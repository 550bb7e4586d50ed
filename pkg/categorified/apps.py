from django.apps import AppConfig


class CategorifiedConfig(AppConfig):
    name = "categorified"
    verbose_name = "Leibniz conformal 2-algebras"
