"""Base settings for the dalembert_toolkit project.

Derived from the settings generated by Django, stripped down to what a
command-line verification tool needs.
"""

from pathlib import Path

# noinspection PyPackageRequirements
import environ

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Environ setup and casting
env = environ.Env()
environ.Env.read_env(BASE_DIR.parent.parent / ".env")

# Not used for anything security related, but Django refuses to start
# some components without it.
SECRET_KEY = env.str("SECRET_KEY", default="dalembert-toolkit-not-secret")

DEBUG = env.bool("DEBUG", default=False)

# Reported in the envelope of every report
TOOL_VERSION = "0.1.0"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    "core",
]

# The toolkit does not persist anything.
DATABASES = {}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Logging

LOG_LEVEL = env.str("LOG_LEVEL", default="WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        "core": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
    },
}


# Rest Framework

REST_FRAMEWORK = {
    "UNAUTHENTICATED_USER": None,
}


# Run configuration

# Default path of the JSON run config used when `--config` is not given.
DALEMBERT_CONFIG = env.str("DALEMBERT_CONFIG", default=None)


# Solution verification

# Absolute tolerance of the log-form residual gate. The polynomial form
# scales it by max(1, |f|^n).
RESIDUAL_TOLERANCE = env.float("RESIDUAL_TOLERANCE", default=1e-9)

# Random sample points drawn when an input lists none
VERIFY_SAMPLE_COUNT = env.int("VERIFY_SAMPLE_COUNT", default=100)


# Characteristic flow

FLOW_STEP = env.float("FLOW_STEP", default=1e-3)
FLOW_BLOW_UP_BOUND = env.float("FLOW_BLOW_UP_BOUND", default=1e12)


# Average stability

STABILITY_WINDOW_HALF_WIDTH = env.float("STABILITY_WINDOW_HALF_WIDTH", default=5.0)
STABILITY_T_MIN = env.float("STABILITY_T_MIN", default=0.1)
STABILITY_T_MAX = env.float("STABILITY_T_MAX", default=10.0)
STABILITY_T_POINTS = env.int("STABILITY_T_POINTS", default=64)
STABILITY_QUADRATURE_POINTS = env.int("STABILITY_QUADRATURE_POINTS", default=128)
# Smallest fitted decay rate accepted as "some real number c > 0".
STABILITY_DECAY_FLOOR = env.float("STABILITY_DECAY_FLOOR", default=1e-6)
# Largest y sampled by the boundedness check.
STABILITY_BOUNDEDNESS_Y_MAX = env.float("STABILITY_BOUNDEDNESS_Y_MAX", default=1e7)
SELF_ADJOINT_TOLERANCE = env.float("SELF_ADJOINT_TOLERANCE", default=1e-8)


# Conservation laws

CONSERVATION_ALPHA_ORDER = env.int("CONSERVATION_ALPHA_ORDER", default=2)
CONSERVATION_TOLERANCE = env.float("CONSERVATION_TOLERANCE", default=1e-7)
LOOP_TOLERANCE = env.float("LOOP_TOLERANCE", default=1e-8)


# Integral bordism

# Z2-ranks of the coefficient groups Omega_s, s = 0..7. Only s = 7 is
# stated outright; the others reproduce the torus and RP^3 instances.
BORDISM_COEFFICIENTS = env.list(
    "BORDISM_COEFFICIENTS", cast=int, default=[1, 0, 1, 0, 2, 1, 3, 1]
)


# Brieskorn spheres

PROJECTION_TOLERANCE = env.float("PROJECTION_TOLERANCE", default=1e-10)
PROJECTION_MAX_ITERATIONS = env.int("PROJECTION_MAX_ITERATIONS", default=100)
JACOBIAN_RANK_THRESHOLD = env.float("JACOBIAN_RANK_THRESHOLD", default=1e-8)
