"""
Tests for the fiberpowers.logging module.
"""
import io
import logging
import unittest
from unittest.mock import patch

import fiberpowers.logging as fplogging

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers"
TESTING_MODULE = f"{TESTING_PACKAGE}.logging"


# ========== Tests ==========
class TestConfigureConsoleLogging(unittest.TestCase):
    def setUp(self):
        self.mocked_stderr = patch("sys.stderr", new_callable=io.StringIO).start()
        self.logger = logging.getLogger(fplogging.ROOT_LOGGER_NAME)
        self.saved = (list(self.logger.handlers), self.logger.level)

    def tearDown(self):
        patch.stopall()
        handlers, level = self.saved
        self.logger.handlers[:] = handlers
        self.logger.setLevel(level)

    def test_each_record_is_written_once(self):
        logger = fplogging.configure_console_logging()
        logger.info("started")
        logger.warning("slow")
        logger.debug("hidden")

        self.assertEqual(self.mocked_stderr.getvalue(), "==> INFO started\n==> WARNING slow\n")

    def test_debug_level(self):
        logger = fplogging.configure_console_logging(debug=True)
        logger.debug("details")

        self.assertEqual(logger.level, logging.DEBUG)
        self.assertIn("==> DEBUG details", self.mocked_stderr.getvalue())

    def test_repeated_calls_replace_handlers(self):
        fplogging.configure_console_logging()
        logger = fplogging.configure_console_logging()
        self.assertEqual(len(logger.handlers), 2)
