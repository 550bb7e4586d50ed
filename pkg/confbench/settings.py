import os
import secrets
import sys
from pathlib import Path
from typing import Literal

import sentry_sdk
from pydantic import BaseSettings, Field, validator
from sentry_sdk.integrations.django import DjangoIntegration

from confbench import __version__

BASE_DIR = Path(__file__).resolve().parent.parent


Environments = Literal["development", "production", "test"]

CONFBENCH_ENV_FILE = os.environ.get(
    "CONFBENCH_ENV_FILE", "test.env" if "pytest" in sys.modules else ".env"
)


class Settings(BaseSettings):
    """
    Pydantic-powered settings, to provide consistent error messages, strong
    typing, consistent prefixes, .env support, etc.
    """

    #: The currently running environment, used for things such as sentry
    #: error reporting.
    ENVIRONMENT: Environments = "development"

    #: Should django run in debug mode?
    DEBUG: bool = False

    #: Django insists on one; nothing here is signed.
    SECRET_KEY: str = Field(default_factory=lambda: secrets.token_hex(128))

    #: An optional Sentry DSN for error reporting.
    SENTRY_DSN: str | None = None
    SENTRY_SAMPLE_RATE: float = 1.0
    SENTRY_TRACES_SAMPLE_RATE: float = 0.01
    SENTRY_CAPTURE_MESSAGES: bool = False

    #: Highest arity of homotopy operations, and highest n of the
    #: Leibnizator identities, that the checkers will expand.
    MAX_ARITY: int = 4

    #: Highest cochain degree the coboundary accepts as input.
    MAX_COCHAIN_DEGREE: int = 4

    #: Number of worker threads used for per-tuple identity checks.
    JOBS: int = 1

    #: Default seed for random sampling (oracles, property checks).
    SEED: int = 0

    #: Default degree bounds for the coboundary preimage search.
    PREIMAGE_MAX_DDEG: int = 2
    PREIMAGE_MAX_LDEG: int = 2

    @validator("MAX_ARITY", "JOBS")
    def validate_positive(cls, value):  # noqa
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    class Config:
        env_prefix = "CONFBENCH_"
        env_file = str(BASE_DIR / CONFBENCH_ENV_FILE)
        env_file_encoding = "utf-8"
        # Case sensitivity doesn't work on Windows, so might as well be
        # consistent from the get-go.
        case_sensitive = False


SETUP = Settings()

SECRET_KEY = SETUP.SECRET_KEY
DEBUG = SETUP.DEBUG

# Application definition

INSTALLED_APPS = [
    "core",
    "leibniz",
    "homotopy",
    "twoterm",
    "categorified",
    "frontend",
]

# Everything is computed in memory; there are no models.
DATABASES: dict = {}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

CONFBENCH_MAX_ARITY = SETUP.MAX_ARITY
CONFBENCH_MAX_COCHAIN_DEGREE = SETUP.MAX_COCHAIN_DEGREE
CONFBENCH_JOBS = SETUP.JOBS
CONFBENCH_SEED = SETUP.SEED
CONFBENCH_PREIMAGE_MAX_DDEG = SETUP.PREIMAGE_MAX_DDEG
CONFBENCH_PREIMAGE_MAX_LDEG = SETUP.PREIMAGE_MAX_LDEG


if SETUP.SENTRY_DSN:
    sentry_sdk.init(
        dsn=SETUP.SENTRY_DSN,
        integrations=[
            DjangoIntegration(),
        ],
        traces_sample_rate=SETUP.SENTRY_TRACES_SAMPLE_RATE,
        sample_rate=SETUP.SENTRY_SAMPLE_RATE,
        environment=SETUP.ENVIRONMENT,
    )
    sentry_sdk.set_tag("confbench.version", __version__)
