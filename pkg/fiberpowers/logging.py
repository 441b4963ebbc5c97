"""
.. module:: fiberpowers.logging
    :synopsis: library for common logging constants
"""

import logging
import sys

# ========== Constants ==========
# ----- Console Formatters -----
_CONSOLE_FORMAT = "==> %(levelname)s %(message)s"
CONSOLE_FORMATTER = logging.Formatter(_CONSOLE_FORMAT)

ROOT_LOGGER_NAME = "fiberpowers"


# ========== Functions ==========
def configure_console_logging(*, debug=False):
    """Attach console handlers to the package logger.

    Progress (up to logging.INFO) and problems (logging.WARNING and up) get one
    handler each. Both write to stderr; stdout carries only command results.
    Handlers attached by an earlier call are replaced, so the CLI can be invoked
    repeatedly from tests without duplicating output.

    :param debug: record logging.DEBUG messages as well (default: ``False``)
    :type debug: bool
    :return: the package logger
    :rtype: ``logging.Logger``
    """
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    progress_level = logging.DEBUG if debug else logging.INFO
    for level, below_warning in ((progress_level, True), (logging.WARNING, False)):
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(level)
        handler.setFormatter(CONSOLE_FORMATTER)
        if below_warning:
            handler.addFilter(lambda record: record.levelno <= logging.INFO)
        logger.addHandler(handler)

    logger.setLevel(progress_level)
    return logger
