from django.db import models


class ExperimentReport(models.Model):
    experiment_choices = [
        ('transparency_demo', 'Transparency demo'),
        ('bernstein_curve', 'Bernstein curve'),
    ]
    experiment = models.CharField(max_length=32, choices=experiment_choices)
    digest = models.CharField(max_length=64, db_index=True)
    metrics = models.JSONField(default=dict)
    verdicts = models.JSONField(default=list)
    passed = models.BooleanField(default=True)
    wall_time = models.FloatField(verbose_name='Wall time, s')
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created']

    def __str__(self):
        return f"{self.experiment} {self.digest[:12]}"
