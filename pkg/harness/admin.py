from django.contrib import admin

from .models import ExperimentRun, ResultRow


class ResultRowInline(admin.TabularInline):
    model = ResultRow
    extra = 0
    can_delete = False
    readonly_fields = ('model', 'variant', 'snr_db', 'loss_rate', 'num_signals', 'metric', 'value', 'seed')


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    list_display = ('name', 'command', 'profile', 'seed', 'status', 'wall_clock_seconds', 'created_at')
    list_filter = ('command', 'status', 'profile')
    search_fields = ('name', 'csv_path')
    readonly_fields = ('created_at', 'finished_at', 'wall_clock_seconds')
    inlines = [ResultRowInline]

    fieldsets = (
        ('Run', {
            'fields': ('name', 'command', 'profile', 'seed', 'status')
        }),
        ('Outputs', {
            'fields': ('csv_path', 'wall_clock_seconds', 'error')
        }),
        ('Configuration', {
            'fields': ('config',),
            'classes': ('collapse',)
        }),
        ('Timestamps', {
            'fields': ('created_at', 'finished_at'),
            'classes': ('collapse',)
        })
    )


@admin.register(ResultRow)
class ResultRowAdmin(admin.ModelAdmin):
    list_display = ('run', 'model', 'variant', 'metric', 'snr_db', 'loss_rate', 'num_signals', 'value')
    list_filter = ('model', 'metric', 'variant')
    search_fields = ('variant',)
