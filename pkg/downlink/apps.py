from django.apps import AppConfig


class DownlinkConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'downlink'
    verbose_name = 'Packetized Downlink'
