"""Serializers of run configs, command inputs and reports."""
from .config import *
from .fields import *
from .inputs import *
from .reports import *
