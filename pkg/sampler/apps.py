from django.apps import AppConfig


class SamplerConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'sampler'
    verbose_name = 'Multi-coset Sampler'
