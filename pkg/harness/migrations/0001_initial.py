import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(db_index=True, max_length=64)),
                ('command', models.CharField(db_index=True, max_length=32)),
                ('profile', models.CharField(db_index=True, max_length=32)),
                ('seed', models.BigIntegerField()),
                ('config', models.JSONField(default=dict)),
                ('status', models.CharField(choices=[('running', 'Running'), ('succeeded', 'Succeeded'), ('failed', 'Failed')], db_index=True, default='running', max_length=16)),
                ('wall_clock_seconds', models.FloatField(blank=True, null=True)),
                ('csv_path', models.CharField(blank=True, max_length=512)),
                ('error', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
        migrations.CreateModel(
            name='ResultRow',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('model', models.CharField(db_index=True, max_length=16)),
                ('variant', models.CharField(blank=True, db_index=True, max_length=64)),
                ('snr_db', models.FloatField(blank=True, db_index=True, null=True)),
                ('loss_rate', models.FloatField(blank=True, db_index=True, null=True)),
                ('num_signals', models.IntegerField(blank=True, null=True)),
                ('metric', models.CharField(db_index=True, max_length=32)),
                ('value', models.FloatField()),
                ('seed', models.BigIntegerField()),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='rows', to='harness.experimentrun')),
            ],
            options={
                'ordering': ['run_id', 'id'],
                'indexes': [models.Index(fields=['model', 'metric'], name='harness_row_model_metric_idx')],
            },
        ),
    ]
