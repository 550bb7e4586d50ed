from django.apps import AppConfig


class TwoTermConfig(AppConfig):
    name = "twoterm"
    verbose_name = "2-term Leib∞-conformal algebras"
