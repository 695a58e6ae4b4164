from django.db import models


class ExperimentRun(models.Model):
    """
    A recorded simulation experiment
    """
    STATUS_CHOICES = [
        ('COMPLETED', 'Completed'),
        ('FAILED', 'Failed'),
    ]

    name = models.CharField(max_length=100)
    distribution = models.CharField(max_length=200, help_text="Compact form, e.g. dagum:sigma=1,a=2,b=1")
    sample_sizes = models.JSONField(default=list)
    schemes = models.JSONField(default=list)
    kinds = models.JSONField(default=list)
    replications = models.PositiveIntegerField()
    mise_grid = models.PositiveIntegerField()
    # unsigned 64-bit seeds overflow BigIntegerField
    master_seed = models.CharField(max_length=20)
    exact_indices = models.JSONField(default=dict)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='COMPLETED')
    error_message = models.TextField(blank=True)
    elapsed_seconds = models.FloatField(default=0.0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = 'experiment_runs'
        ordering = ['-created_at']
        verbose_name = 'Experiment run'
        verbose_name_plural = 'Experiment runs'

    def __str__(self):
        return f"{self.name} ({self.distribution})"


class ExperimentCell(models.Model):
    """
    Aggregate results for one (index kind, scheme, sample size) of a run
    """
    KIND_CHOICES = [
        ('qZI', 'qZI'),
        ('qDI', 'qDI'),
    ]
    SCHEME_CHOICES = [
        ('E', 'Empirical (type 1)'),
        ('H', 'Hazen (type 5)'),
        ('HF', 'Hyndman-Fan (type 8)'),
        ('WG', 'Weibull-Gumbel (type 6)'),
    ]

    run = models.ForeignKey(ExperimentRun, on_delete=models.CASCADE, related_name='cells')
    kind = models.CharField(max_length=3, choices=KIND_CHOICES)
    scheme = models.CharField(max_length=2, choices=SCHEME_CHOICES)
    sample_size = models.PositiveIntegerField()
    exact_index = models.FloatField()
    index_median = models.FloatField()
    index_q1 = models.FloatField()
    index_q3 = models.FloatField()
    index_mse = models.FloatField()
    curve_mise = models.FloatField()

    class Meta:
        db_table = 'experiment_cells'
        ordering = ['sample_size', 'kind', 'scheme']
        unique_together = ['run', 'kind', 'scheme', 'sample_size']

    def __str__(self):
        return f"{self.run.name}: {self.kind} {self.scheme} n={self.sample_size}"

    @property
    def mise_x1000(self):
        return self.curve_mise * 1000
