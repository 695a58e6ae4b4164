from django.contrib import admin

from .models import ExperimentCell, ExperimentRun


class ExperimentCellInline(admin.TabularInline):
    model = ExperimentCell
    extra = 0
    readonly_fields = (
        'kind', 'scheme', 'sample_size', 'exact_index', 'index_median',
        'index_q1', 'index_q3', 'index_mse', 'curve_mise',
    )
    can_delete = False


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    """
    Recorded experiment runs with their cells inline
    """
    list_display = ('name', 'distribution', 'replications', 'master_seed', 'status', 'elapsed_seconds', 'created_at')
    list_filter = ('status', 'created_at')
    search_fields = ('name', 'distribution')
    ordering = ('-created_at',)
    readonly_fields = ('created_at',)
    inlines = [ExperimentCellInline]


@admin.register(ExperimentCell)
class ExperimentCellAdmin(admin.ModelAdmin):
    list_display = ('run', 'kind', 'scheme', 'sample_size', 'index_median', 'curve_mise')
    list_filter = ('kind', 'scheme', 'sample_size')
    search_fields = ('run__name', 'run__distribution')
    raw_id_fields = ('run',)
