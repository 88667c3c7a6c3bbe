"""Configure Django for pytest with the project settings, as manage.py does."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ff_eisenstein.settings')
django.setup()
