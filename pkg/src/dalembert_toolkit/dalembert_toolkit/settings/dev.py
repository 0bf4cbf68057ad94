"""Development settings"""
from .base import *

DEBUG = True
LOGGING["loggers"]["core"]["level"] = env.str("LOG_LEVEL", default="DEBUG")
