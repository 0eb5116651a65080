from django.urls import include, path
from rest_framework.routers import DefaultRouter

from .views import ExperimentRunViewSet, ResultRowViewSet

router = DefaultRouter()
router.register(r'runs', ExperimentRunViewSet, basename='run')
router.register(r'results', ResultRowViewSet, basename='result')

urlpatterns = [
    path('', include(router.urls)),
]
