# Generated by Django 4.2.7 on 2026-10-17 09:12

from django.db import migrations, models
import django.db.models.deletion


class Migration(migrations.Migration):
    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ExperimentRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("name", models.CharField(max_length=100)),
                (
                    "distribution",
                    models.CharField(
                        help_text="Compact form, e.g. dagum:sigma=1,a=2,b=1",
                        max_length=200,
                    ),
                ),
                ("sample_sizes", models.JSONField(default=list)),
                ("schemes", models.JSONField(default=list)),
                ("kinds", models.JSONField(default=list)),
                ("replications", models.PositiveIntegerField()),
                ("mise_grid", models.PositiveIntegerField()),
                ("master_seed", models.CharField(max_length=20)),
                ("exact_indices", models.JSONField(default=dict)),
                (
                    "status",
                    models.CharField(
                        choices=[("COMPLETED", "Completed"), ("FAILED", "Failed")],
                        default="COMPLETED",
                        max_length=20,
                    ),
                ),
                ("error_message", models.TextField(blank=True)),
                ("elapsed_seconds", models.FloatField(default=0.0)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
            ],
            options={
                "verbose_name": "Experiment run",
                "verbose_name_plural": "Experiment runs",
                "db_table": "experiment_runs",
                "ordering": ["-created_at"],
            },
        ),
        migrations.CreateModel(
            name="ExperimentCell",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "kind",
                    models.CharField(
                        choices=[("qZI", "qZI"), ("qDI", "qDI")], max_length=3
                    ),
                ),
                (
                    "scheme",
                    models.CharField(
                        choices=[
                            ("E", "Empirical (type 1)"),
                            ("H", "Hazen (type 5)"),
                            ("HF", "Hyndman-Fan (type 8)"),
                            ("WG", "Weibull-Gumbel (type 6)"),
                        ],
                        max_length=2,
                    ),
                ),
                ("sample_size", models.PositiveIntegerField()),
                ("exact_index", models.FloatField()),
                ("index_median", models.FloatField()),
                ("index_q1", models.FloatField()),
                ("index_q3", models.FloatField()),
                ("index_mse", models.FloatField()),
                ("curve_mise", models.FloatField()),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="cells",
                        to="simulation.experimentrun",
                    ),
                ),
            ],
            options={
                "db_table": "experiment_cells",
                "ordering": ["sample_size", "kind", "scheme"],
                "unique_together": {("run", "kind", "scheme", "sample_size")},
            },
        ),
    ]
