from django.db import models


class ExperimentRun(models.Model):
    STATUS_CHOICES = (
        ('running', 'Running'),
        ('succeeded', 'Succeeded'),
        ('failed', 'Failed'),
    )

    name = models.CharField(max_length=64, db_index=True)
    command = models.CharField(max_length=32, db_index=True)
    profile = models.CharField(max_length=32, db_index=True)
    seed = models.BigIntegerField()
    config = models.JSONField(default=dict)
    status = models.CharField(max_length=16, choices=STATUS_CHOICES, default='running', db_index=True)
    wall_clock_seconds = models.FloatField(null=True, blank=True)
    csv_path = models.CharField(max_length=512, blank=True)
    error = models.TextField(blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ['-created_at', '-id']

    def __str__(self):
        return f"{self.command} {self.name} ({self.status})"


class ResultRow(models.Model):
    """One row of a results table; rows are only ever appended."""

    run = models.ForeignKey(ExperimentRun, on_delete=models.CASCADE, related_name='rows')
    model = models.CharField(max_length=16, db_index=True)
    variant = models.CharField(max_length=64, blank=True, db_index=True)
    snr_db = models.FloatField(null=True, blank=True, db_index=True)
    loss_rate = models.FloatField(null=True, blank=True, db_index=True)
    num_signals = models.IntegerField(null=True, blank=True)
    metric = models.CharField(max_length=32, db_index=True)
    value = models.FloatField()
    seed = models.BigIntegerField()

    class Meta:
        ordering = ['run_id', 'id']
        indexes = [
            models.Index(fields=['model', 'metric'], name='harness_row_model_metric_idx'),
        ]

    def __str__(self):
        return f"{self.model} {self.metric}={self.value:.6g}"
