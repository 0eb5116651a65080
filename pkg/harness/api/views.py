import logging

from django.shortcuts import get_object_or_404
from rest_framework import viewsets
from rest_framework.decorators import action

from core.responses import APIResponse, EnvelopePagination, handle_exceptions
from harness.models import ExperimentRun, ResultRow
from harness.serializers import ExperimentRunSerializer, ResultRowSerializer

logger = logging.getLogger(__name__)


class ExperimentRunViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = ExperimentRun.objects.all()
    serializer_class = ExperimentRunSerializer
    pagination_class = EnvelopePagination
    filterset_fields = ['command', 'status', 'profile', 'name']

    @handle_exceptions
    def retrieve(self, request, *args, **kwargs):
        run = get_object_or_404(ExperimentRun, pk=kwargs['pk'])
        return APIResponse.success(self.get_serializer(run).data)

    @action(detail=True, methods=['get'])
    def rows(self, request, pk=None):
        """Result rows of one run, paginated"""
        run = get_object_or_404(ExperimentRun, pk=pk)
        queryset = ResultRow.objects.filter(run=run)
        page = self.paginate_queryset(queryset)
        return self.get_paginated_response(ResultRowSerializer(page, many=True).data)


class ResultRowViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = ResultRow.objects.select_related('run').all()
    serializer_class = ResultRowSerializer
    pagination_class = EnvelopePagination
    filterset_fields = ['run', 'model', 'metric', 'snr_db', 'loss_rate', 'num_signals', 'variant']

    @handle_exceptions
    def retrieve(self, request, *args, **kwargs):
        row = get_object_or_404(ResultRow, pk=kwargs['pk'])
        return APIResponse.success(self.get_serializer(row).data)
