"""
Django settings for the crossbound project.

Only the pieces Django needs to run management commands and the test runner
are configured; there is no database, no middleware and no URL routing.
Every numerical default can be overridden through a ``CROSSBOUND_*``
environment variable.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def _env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


def _env_float(name: str, default: float) -> float:
    return float(os.environ.get(name, default))


# Not used for signing anything; Django refuses to start without one.
SECRET_KEY = os.environ.get(
    "CROSSBOUND_SECRET_KEY", "django-insecure-crossbound-local-only"
)

DEBUG = os.environ.get("CROSSBOUND_DEBUG", "False") == "True"

ALLOWED_HOSTS: list[str] = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    "numerics",
    "crosspoly",
    "gauges",
    "bounds",
    "cli",
]

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {"context_processors": []},
    },
]

# No persistence beyond the gamma cache and the output files.
DATABASES: dict = {}

USE_I18N = False

USE_TZ = True

TIME_ZONE = "UTC"


# Numerical defaults

QUADRATURE = {
    "PANEL_COUNT": _env_int("CROSSBOUND_PANEL_COUNT", 32),
    "NODES_PER_PANEL": _env_int("CROSSBOUND_NODES_PER_PANEL", 20),
    "UPPER_CUTOFF_TOLERANCE": _env_float("CROSSBOUND_CUTOFF_TOLERANCE", 1e-16),
    "CONVERGENCE_TOLERANCE": _env_float("CROSSBOUND_CONVERGENCE_TOLERANCE", 1e-12),
    "MAX_DOUBLINGS": _env_int("CROSSBOUND_MAX_DOUBLINGS", 4),
}

MAXIMIZER = {
    "GRID_POINTS": _env_int("CROSSBOUND_GRID_POINTS", 2048),
    "REFINE_TOL": _env_float("CROSSBOUND_REFINE_TOL", 1e-12),
}

JACOBI_ROOT_TOLERANCE = _env_float("CROSSBOUND_ROOT_TOLERANCE", 1e-13)

LEVENSHTEIN = {
    "PHI_POINTS": _env_int("CROSSBOUND_LEVENSHTEIN_PHI_POINTS", 64),
}

KL_ASYMPTOTIC = {
    "PHI_POINTS": _env_int("CROSSBOUND_KL_PHI_POINTS", 16),
}


# Files

GAMMA_CACHE_DIR = Path(os.environ.get("CROSSBOUND_CACHE_DIR", BASE_DIR / ".cache"))
GAMMA_CACHE_FILE = "gamma_cache.csv"

BALL_TABLE_PATH = Path(
    os.environ.get("CROSSBOUND_BALL_TABLE", GAMMA_CACHE_DIR / "ball_table.csv")
)

WORKERS = _env_int("CROSSBOUND_WORKERS", os.cpu_count() or 1)
