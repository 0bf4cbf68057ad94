"""Test settings"""
from .base import *

# Tests must not pick up a run config from the environment.
DALEMBERT_CONFIG = None

# Keep test output quiet unless something goes wrong.
LOGGING["loggers"]["core"]["level"] = "ERROR"
