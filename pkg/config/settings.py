"""
Django settings for the rigidity lab project.

The project has no web surface; Django provides configuration, logging,
management commands and the test runner.

For more information on this file, see
https://docs.djangoproject.com/en/5.0/topics/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Nothing is signed or served; Django still requires a key.
SECRET_KEY = os.getenv('SECRET_KEY', 'rigidity-lab-local-only-key')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    # Third party apps
    "rest_framework",
    # Local apps
    "rigidity",
    "finitefield",
    "certify",
]

# Database
# No models are defined; the sqlite entry only satisfies Django's defaults.

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.0/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Django REST Framework (serializers and the JSON renderer only)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}

# Rigidity lab
RIGIDITY_LAB = {
    # Shared cap for explorer candidate tuples and finite-field points.
    'ENUMERATION_CAP': int(os.getenv('RIGIDITY_LAB_CAP', '10000000')),
    'DEFAULT_PRIME': int(os.getenv('RIGIDITY_LAB_PRIME', '5')),
    'THRESHOLD_FACTOR': os.getenv('RIGIDITY_LAB_THRESHOLD_FACTOR', '4'),
    'MIN_PASS_RATE': os.getenv('RIGIDITY_LAB_MIN_PASS_RATE', '1/2'),
    'PARALLEL': int(os.getenv('RIGIDITY_LAB_PARALLEL', '1')),
}

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
        'rigidity': {
            'handlers': ['console'],
            'level': os.getenv('RIGIDITY_LAB_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
        'finitefield': {
            'handlers': ['console'],
            'level': os.getenv('RIGIDITY_LAB_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
        'certify': {
            'handlers': ['console'],
            'level': os.getenv('RIGIDITY_LAB_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}
