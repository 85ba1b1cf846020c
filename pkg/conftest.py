import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'latdiam.settings')
django.setup()
