import json
from pathlib import Path

from django import forms

from exact.exceptions import RationalFormatError
from exact.rational import parse_rational


class PositiveRationalMixin:

    def _positive_rational(self, name):
        raw = self.cleaned_data.get(name) or self.DEFAULTS[name]
        try:
            value = parse_rational(raw)
        except RationalFormatError as exc:
            raise forms.ValidationError(str(exc))
        if value <= 0:
            raise forms.ValidationError(f"{name} must be positive")
        return value


class ExperimentConfigForm(PositiveRationalMixin, forms.Form):
    """Validates an experiment config (JSON file merged with command-line flags)."""

    DEFAULTS = {
        'seed': 0,
        'precision': 10,
        'variants': 10,
        'generic': 10,
        'epsilon': '1/8',
        'dimension': 1,
        'beta': '1/1',
        'step': '1/4096',
    }

    experiment = forms.ChoiceField(choices=[
        ('transparency_demo', 'Transparency demo'),
        ('bernstein_curve', 'Bernstein curve'),
    ])
    seed = forms.IntegerField(min_value=0, required=False)
    precision = forms.IntegerField(min_value=1, required=False)
    variants = forms.IntegerField(min_value=2, required=False)
    generic = forms.IntegerField(min_value=0, required=False)
    epsilon = forms.CharField(required=False)
    instance = forms.JSONField(required=False)
    instance_file = forms.CharField(required=False)
    dimension = forms.IntegerField(min_value=1, required=False)
    beta = forms.CharField(required=False)
    degrees = forms.JSONField(required=False)
    step = forms.CharField(required=False)
    json_output = forms.CharField(required=False)
    csv_output = forms.CharField(required=False)
    svg_output = forms.CharField(required=False)

    def clean_epsilon(self):
        return self._positive_rational('epsilon')

    def clean_beta(self):
        return self._positive_rational('beta')

    def clean_step(self):
        return self._positive_rational('step')

    def clean_instance_file(self):
        path = self.cleaned_data.get('instance_file')
        if path and not Path(path).is_file():
            raise forms.ValidationError(f"instance file {path} does not exist")
        return path or None

    def clean_degrees(self):
        degrees = self.cleaned_data.get('degrees')
        if degrees is None:
            return None
        if not isinstance(degrees, list) or not all(isinstance(d, int) and d > 0 for d in degrees):
            raise forms.ValidationError("degrees must be a list of positive integers")
        if degrees != sorted(set(degrees)):
            raise forms.ValidationError("degrees must be strictly ascending")
        return degrees

    def clean(self):
        cleaned = super().clean()
        for name, default in self.DEFAULTS.items():
            if cleaned.get(name) is None and name not in self.errors:
                cleaned[name] = default
        if cleaned.get('experiment') == 'bernstein_curve' and not cleaned.get('degrees'):
            self.add_error('degrees', "at least one degree is required")
        return cleaned


class SolveConfigForm(PositiveRationalMixin, forms.Form):
    """BP-A solver parameters for the solve command (JSON file merged with flags)."""

    DEFAULTS = {
        'beta': '1/1',
        'gamma': '1/16',
        'tol': '1/16',
    }

    beta = forms.CharField(required=False)
    gamma = forms.CharField(required=False)
    tol = forms.CharField(required=False)
    node_budget = forms.IntegerField(min_value=1, required=False)
    output = forms.CharField(required=False)

    def clean_beta(self):
        return self._positive_rational('beta')

    def clean_gamma(self):
        return self._positive_rational('gamma')

    def clean_tol(self):
        return self._positive_rational('tol')

    def clean_output(self):
        return self.cleaned_data.get('output') or None


def _merge(config_text, overrides):
    data = json.loads(config_text) if config_text else {}
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    data.update({key: value for key, value in (overrides or {}).items() if value is not None})
    return data


def bind_config(experiment, config_text=None, overrides=None):
    """Config file contents first, then command-line flags that were given."""
    data = _merge(config_text, overrides)
    data['experiment'] = experiment
    return ExperimentConfigForm(data)


def bind_solve_config(config_text=None, overrides=None):
    return SolveConfigForm(_merge(config_text, overrides))
