from django.apps import AppConfig


class SceneGenConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'scene_gen'
    verbose_name = 'Wideband Scene Synthesis'
