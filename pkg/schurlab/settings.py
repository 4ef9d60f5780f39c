"""
Django settings for schurlab project.

This project targets Django 4.2 LTS. There is no web surface: the project
hosts the ``srings`` app, its management commands and the small results
database they write to.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path
import os

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Values from .env never override variables already present in the environment.
load_dotenv(BASE_DIR / '.env')


# SECURITY WARNING: keep the secret key used in production secret!
# Use environment variable in production. This fallback is for development only.
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'django-insecure-dev-only-change-me'
)

DEBUG = os.environ.get('DJANGO_DEBUG', 'True').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "srings",
]

MIDDLEWARE = []


# Database
# https://docs.djangoproject.com/en/4.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('SCHURLAB_DB_PATH', BASE_DIR / 'db.sqlite3'),
    }
}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Default primary key field type
# https://docs.djangoproject.com/en/4.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


def _env_int(name, default):
    return int(os.environ.get(f'SCHURLAB_{name}', default))


# Library knobs, read through srings.conf.get_setting
SCHURLAB = {
    'ENUMERATION_MAX_PRIME': _env_int('ENUMERATION_MAX_PRIME', 13),
    'GROUP_EXHAUSTIVE_CHECK_MAX_PRIME': _env_int('GROUP_EXHAUSTIVE_CHECK_MAX_PRIME', 7),
    'GROUP_SPOT_CHECK_ROWS': _env_int('GROUP_SPOT_CHECK_ROWS', 32),
    'AUT_ENUMERATION_CAP': _env_int('AUT_ENUMERATION_CAP', 10**6),
    'LEMMA_ALL_BASE_POINTS_MAX_ORDER': _env_int('LEMMA_ALL_BASE_POINTS_MAX_ORDER', 343),
    'THREADS': _env_int('THREADS', 1),
}


# Logging configuration
LOG_LEVEL = os.environ.get('SCHURLAB_LOG_LEVEL', 'WARNING').upper()
LOG_FILE = os.environ.get('SCHURLAB_LOG_FILE', '')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'srings': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}

if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'INFO',
        'class': 'logging.FileHandler',
        'filename': LOG_FILE,
        'formatter': 'verbose',
    }
    LOGGING['loggers']['srings']['handlers'].append('file')
