"""
Settings for the latdiam command-line project.

There is no database and no web surface; the settings only configure the
lattice app, its logging and the defaults of the search and verify commands.
"""

from pathlib import Path

from environs import Env

env = Env()
env.read_env()

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = env.str('SECRET_KEY', default='latdiam-command-line-only')

DEBUG = env.bool('DEBUG', default=False)

INSTALLED_APPS = [
    'lattice.apps.LatticeConfig',
]

DATABASES = {}

USE_TZ = True


# Search and verification defaults (command-line flags take precedence)

LATDIAM_SEED = env.int('LATDIAM_SEED', default=0)
LATDIAM_WORKERS = env.int('LATDIAM_WORKERS', default=1)
LATDIAM_BUDGET_SECONDS = env.float('LATDIAM_BUDGET_SECONDS', default=60.0)
LATDIAM_NODE_BUDGET = env.int('LATDIAM_NODE_BUDGET', default=2_000_000)
LATDIAM_MAX_GENERATORS = env.int('LATDIAM_MAX_GENERATORS', default=20)
LATDIAM_STORE_DIR = env.path('LATDIAM_STORE_DIR', default=None)
LATDIAM_LOG_LEVEL = env.log_level('LATDIAM_LOG_LEVEL', default='WARNING')


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '{levelname} {name}: {message}', 'style': '{'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'plain'},
    },
    'loggers': {
        'lattice': {'handlers': ['console'], 'level': LATDIAM_LOG_LEVEL, 'propagate': False},
    },
}
