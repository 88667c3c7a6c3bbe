"""Entry point shared by manage.py and scripts: run a command and return its exit status."""
import os
import sys

from django.core.management import ManagementUtility


def run(argv=None):
    """
    Run `argv` (without the program name) as a management command.

    Returns 0 on success, 1 when a computation or verification fails and 2
    for an invalid configuration.
    """
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ff_eisenstein.settings')
    argv = list(sys.argv[1:] if argv is None else argv)
    utility = ManagementUtility(['manage.py', *argv])
    try:
        utility.execute()
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0
