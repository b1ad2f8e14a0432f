# Generated by Django 5.1.2 on 2024-10-21 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentReport',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('experiment', models.CharField(choices=[('transparency_demo', 'Transparency demo'), ('bernstein_curve', 'Bernstein curve')], max_length=32)),
                ('digest', models.CharField(db_index=True, max_length=64)),
                ('metrics', models.JSONField(default=dict)),
                ('verdicts', models.JSONField(default=list)),
                ('passed', models.BooleanField(default=True)),
                ('wall_time', models.FloatField(verbose_name='Wall time, s')),
                ('created', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created'],
            },
        ),
    ]
