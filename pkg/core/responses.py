"""
Standardized API envelopes and the exception-mapping decorators shared by
the results API and the management commands.
"""
import functools
import logging
from typing import Any, Dict, List, Optional

from django.core.management.base import CommandError
from django.http import Http404
from rest_framework import status
from rest_framework.exceptions import ValidationError as DRFValidationError
from rest_framework.pagination import PageNumberPagination
from rest_framework.response import Response

from config.constants import EXIT_CONFIG_ERROR, EXIT_TRAINING_FAILURE
from core.exceptions import ConfigurationError, SkyFuseError, TrainingFailure

logger = logging.getLogger(__name__)


class APIResponse:
    """Standardized API response utility class"""

    @staticmethod
    def success(data: Any = None, message: str = "Success", status_code: int = status.HTTP_200_OK,
                meta: Optional[Dict] = None) -> Response:
        response_data = {"success": True, "message": message, "data": data}
        if meta:
            response_data["meta"] = meta
        return Response(response_data, status=status_code)

    @staticmethod
    def error(message: str = "An error occurred", status_code: int = status.HTTP_400_BAD_REQUEST,
              errors: Optional[List] = None, error_code: Optional[str] = None) -> Response:
        response_data = {"success": False, "message": message, "error_code": error_code}
        if errors:
            response_data["errors"] = errors
        return Response(response_data, status=status_code)

    @staticmethod
    def not_found(message: str = "Resource not found") -> Response:
        return APIResponse.error(message, status.HTTP_404_NOT_FOUND, error_code="NOT_FOUND")

    @staticmethod
    def server_error(message: str = "Internal server error") -> Response:
        return APIResponse.error(message, status.HTTP_500_INTERNAL_SERVER_ERROR, error_code="SERVER_ERROR")

    @staticmethod
    def validation_error(errors: List, message: str = "Validation failed") -> Response:
        return APIResponse.error(message, status.HTTP_400_BAD_REQUEST, errors, "VALIDATION_ERROR")


class EnvelopePagination(PageNumberPagination):
    """Page-number pagination answering with the standard envelope."""

    page_size = 50
    page_size_query_param = 'page_size'
    max_page_size = 500

    def get_paginated_response(self, data):
        meta = {
            "pagination": {
                "current_page": self.page.number,
                "total_pages": self.page.paginator.num_pages,
                "total_items": self.page.paginator.count,
                "page_size": self.get_page_size(self.request),
                "has_next": self.page.has_next(),
                "has_previous": self.page.has_previous(),
            }
        }
        return APIResponse.success(data, meta=meta)


def handle_exceptions(func):
    """Decorator for consistent exception handling in API views"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (DRFValidationError, SkyFuseError) as e:
            logger.warning(f"Validation error in {func.__name__}: {str(e)}")
            return APIResponse.validation_error([str(e)])
        except Http404:
            logger.warning(f"Resource not found in {func.__name__}")
            return APIResponse.not_found()
        except Exception as e:
            logger.error(f"Unexpected error in {func.__name__}: {str(e)}", exc_info=True)
            return APIResponse.server_error()
    return wrapper


def command_exit_codes(func):
    """Map domain failures of a management command onto its exit code.

    Configuration problems exit with 2, diverged training with 3; anything
    else is logged and propagates.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ConfigurationError, DRFValidationError) as e:
            logger.error(f"Configuration error in {func.__qualname__}: {str(e)}")
            raise CommandError(str(e), returncode=EXIT_CONFIG_ERROR)
        except TrainingFailure as e:
            logger.error(f"Training failure in {func.__qualname__} after {len(e.history)} epochs: {str(e)}")
            raise CommandError(str(e), returncode=EXIT_TRAINING_FAILURE)
        except CommandError:
            raise
        except Exception as e:
            logger.error(f"Unexpected error in {func.__qualname__}: {str(e)}", exc_info=True)
            raise
    return wrapper
