"""
Django settings for realsolve project.

The project hosts the exact-arithmetic workbench: every solver, runtime and
experiment driver lives in its own app, and the management commands of the
``experiments`` app form the command-line front end.

For more information on this file, see
https://docs.djangoproject.com/en/5.1/topics/settings/
"""

import os
from dotenv import load_dotenv
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


load_dotenv(BASE_DIR / '.env')


def env_int(name, default):
    value = os.getenv(name)
    if value is None or value == '':
        return default
    return int(value)


SECRET_KEY = os.getenv('SECRET_KEY', 'realsolve-local-only')

DEBUG = os.getenv('DEBUG') == 'True'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'exact',
    'turing',
    'bss',
    'neural',
    'invprob',
    'experiments',
]


# Database
# https://docs.djangoproject.com/en/5.1/ref/settings/#databases

if os.getenv('DATABASES_NAME'):
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': os.getenv('DATABASES_NAME'),
            'USER': os.getenv('DATABASES_USER', 'postgres'),
            'PASSWORD': os.getenv('DATABASES_PASSWORD'),
            'HOST': os.getenv('DATABASES_HOST', 'localhost'),
            'PORT': os.getenv('DATABASES_PORT', '5432'),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.getenv('WORKBENCH_LOG_LEVEL', 'INFO'),
    },
}

# Turing-side evaluation: query depth budget is SLOPE * k + OFFSET
WORKBENCH_QUERY_BUDGET_SLOPE = env_int('WORKBENCH_QUERY_BUDGET_SLOPE', 4)
WORKBENCH_QUERY_BUDGET_OFFSET = env_int('WORKBENCH_QUERY_BUDGET_OFFSET', 64)
WORKBENCH_MAX_WORKERS = env_int('WORKBENCH_MAX_WORKERS', 1)

# Snapshot wrappers around exact solvers
WORKBENCH_NAIVE_SNAPSHOT_PRECISION = env_int('WORKBENCH_NAIVE_SNAPSHOT_PRECISION', 8)
WORKBENCH_SNAPSHOT_MARGIN = env_int('WORKBENCH_SNAPSHOT_MARGIN', 24)

# BSS interpreter
WORKBENCH_BSS_MAX_STEPS = env_int('WORKBENCH_BSS_MAX_STEPS', 10 ** 6)

# Inverse problem solvers
WORKBENCH_HOMOTOPY_MAX_STEPS = env_int('WORKBENCH_HOMOTOPY_MAX_STEPS', 10 ** 4)
WORKBENCH_BERNSTEIN_DEGREE_CAP = env_int('WORKBENCH_BERNSTEIN_DEGREE_CAP', 2 ** 20)
WORKBENCH_BERNSTEIN_ENCLOSURE_BITS = env_int('WORKBENCH_BERNSTEIN_ENCLOSURE_BITS', 64)
WORKBENCH_BNB_NODE_BUDGET = env_int('WORKBENCH_BNB_NODE_BUDGET', 10 ** 6)
