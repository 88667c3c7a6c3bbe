"""
Django settings for the ff_eisenstein project.

The project has no web surface: it hosts the constant_term application, whose
management commands compute constant terms of affine Eisenstein series over
function fields and verify the identities they satisfy.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by django.core.signing, which nothing here calls.
SECRET_KEY = 'django-insecure-ff-eisenstein-batch-only'

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'constant_term',
]

# Batch computation only: no database, no URLs, no templates.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging goes to stderr so JSON and CSV on stdout stay machine-readable.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'constant_term': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}


# Constant-term computation

# Overrides for the defaults in constant_term/conf.py, e.g. {'NUMERIC_DPS': 60}
CONSTANT_TERM = {}
