#!/usr/bin/env python
"""Command-line entry point: `python manage.py <subcommand>`, e.g. hull, diameter, bounds or verify."""
import os
import sys


def main(argv=None):
    """Run a subcommand; exit status 1 means a violation, 2 a usage error, 3 an exhausted budget."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'latdiam.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    execute_from_command_line(sys.argv if argv is None else argv)


if __name__ == '__main__':
    main()
