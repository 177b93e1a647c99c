import os
from pathlib import Path

from dotenv import load_dotenv


load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv("SECRET_KEY", "lambda-gm-local-only-key")

DEBUG = os.getenv("DEBUG", "False") == "True"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "rest_framework",
    "core.apps.CoreConfig",
    "graphs.apps.GraphsConfig",
    "measures.apps.MeasuresConfig",
    "extremes.apps.ExtremesConfig",
    "sampling.apps.SamplingConfig",
    "api.apps.ApiConfig",
]


# Вычисления не используют базу данных.

DATABASES = {}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

REST_FRAMEWORK = {
    "UNAUTHENTICATED_USER": None,
    "COERCE_DECIMAL_TO_STRING": False,
}


LAMBDA_GM = {
    "THREADS": int(os.getenv("LAMBDA_GM_THREADS", os.cpu_count() or 1)),
    "ORACLE_MAX_LOG2_CELLS": 24,
    "SEMIGRAPHOID_MAX_DIM": 5,
    "SUBGRAPH_MAX_VERTICES": 24,
    "SEPARATION_MAX_VERTICES": 12,
    "RAY_RTOL": 1e-9,
    "ATOM_RTOL": 1e-12,
    "GRID_ZERO_ATOL": 1e-12,
    "GRID_TOL": 1e-8,
    "MARGIN_RTOL": 1e-3,
    "SURVIVAL_RTOL": 1e-4,
    "QUADRATURE_MAX_POINTS": 2_000_000,
    "MIN_SAMPLES": 10_000,
    "PERMUTATIONS": 500,
    "SAMPLING_BLOCK": 4096,
}


LOG_LEVEL = os.getenv("LAMBDA_GM_LOG_LEVEL", "WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in ("core", "graphs", "measures", "extremes", "sampling", "api")
    },
}
