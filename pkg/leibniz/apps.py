from django.apps import AppConfig


class LeibnizConfig(AppConfig):
    name = "leibniz"
    verbose_name = "Leibniz conformal algebras and their cohomology"
