"""Main app config"""
import logging

from django.apps import AppConfig

logger = logging.getLogger(__name__)


class CoreConfig(AppConfig):
    """Class representing the core app and its config."""

    name = "core"
    verbose_name = "d'Alembert toolkit"

    # docstr-coverage:excused `config method`
    def ready(self):
        from django.conf import settings

        logger.debug("Toolkit %s ready.", settings.TOOL_VERSION)
