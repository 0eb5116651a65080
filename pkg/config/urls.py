"""
URL configuration for SkyFuse: admin, the read-only results API and a
health probe.
"""
import logging

from django.contrib import admin
from django.db import connection
from django.urls import include, path
from rest_framework import status
from rest_framework.decorators import api_view

from core.responses import APIResponse

logger = logging.getLogger(__name__)


@api_view(['GET'])
def health_check(request):
    """Health check endpoint for monitoring"""
    try:
        with connection.cursor() as cursor:
            cursor.execute("SELECT 1")
        db_status = "healthy"
    except Exception as e:
        logger.error(f"Database health check failed: {e}")
        db_status = "unhealthy"

    if db_status == "healthy":
        return APIResponse.success({'status': 'healthy', 'database': db_status})
    return APIResponse.error("Database unavailable", status.HTTP_503_SERVICE_UNAVAILABLE,
                             error_code="UNHEALTHY")


urlpatterns = [
    path('admin/', admin.site.urls),
    path('api/', include('harness.api.urls')),
    path('health/', health_check, name='health_check'),
]
