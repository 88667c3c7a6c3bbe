from django.apps import AppConfig


class ConstantTermConfig(AppConfig):
    name = 'constant_term'
    verbose_name = 'Affine Eisenstein constant terms'
