import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'realsolve.settings')


def pytest_configure(config):
    django.setup()
    from django.test.runner import DiscoverRunner

    runner = DiscoverRunner(verbosity=0, interactive=False)
    runner.setup_test_environment()
    config._django_runner = runner
    config._django_old_config = runner.setup_databases()


def pytest_unconfigure(config):
    runner = getattr(config, '_django_runner', None)
    if runner is None:
        return
    runner.teardown_databases(config._django_old_config)
    runner.teardown_test_environment()
