#!/usr/bin/env python
"""Django's command-line utility for the constant-term commands."""
import os
import sys


def main():
    """Run a command and exit with its status."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ff_eisenstein.settings')
    try:
        from constant_term.cli import run
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
