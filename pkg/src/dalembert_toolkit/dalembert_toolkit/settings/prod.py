"""Production settings"""
from .base import *

DEBUG = False
