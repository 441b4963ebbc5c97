"""
Tests for the fiberpowers.config module.
"""
import configparser
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import fiberpowers.config.config_files as config

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.config"
TESTING_MODULE = f"{TESTING_PACKAGE}.config_files"


# ========== Functions ==========
def parser_from(text):
    parser = configparser.ConfigParser()
    parser.read_string(text)
    return parser


# ========== Tests ==========
class TestLoadOptions(unittest.TestCase):
    def setUp(self):
        self.parser = parser_from(
            "[main]\nchars = [2, 5]\ns_max = 4\nbroken = [2,\nseed = abc\n"
            'words = ["two"]\nsingle = 2\n'
        )

    def test_chars_option(self):
        self.assertEqual(config.load_chars_from_option(self.parser), [2, 5])

    def test_chars_fallbacks(self):
        self.assertEqual(config.load_chars_from_option(self.parser, option="x"), [])
        with self.assertLogs(TESTING_MODULE, level="WARNING"):
            self.assertEqual(
                config.load_chars_from_option(self.parser, option="broken", fallback=[3]), [3]
            )

    def test_chars_must_be_a_list_of_integers(self):
        for option in ("words", "single"):
            with self.subTest(option=option), self.assertRaises(ValueError):
                config.load_chars_from_option(self.parser, option=option)

    def test_int_option(self):
        self.assertEqual(config.load_int_from_option(self.parser, option="s_max"), 4)
        self.assertIsNone(config.load_int_from_option(self.parser, option="instances"))

    def test_int_option_must_be_an_integer(self):
        with self.assertRaises(ValueError):
            config.load_int_from_option(self.parser, option="seed")


class TestBudgets(unittest.TestCase):
    def test_defaults(self):
        budgets = config.load_budgets(parser_from("[main]\n"))
        self.assertEqual(budgets, config.DEFAULT_BUDGETS)

    def test_overrides(self):
        budgets = config.load_budgets(parser_from("[main]\nclosure_budget = 50\n"))
        self.assertEqual(budgets.closure_budget, 50)
        self.assertEqual(budgets.component_budget, config.DEFAULT_BUDGETS.component_budget)

    def test_time_budget(self):
        self.assertEqual(config.DEFAULT_BUDGETS.time_budget, 300)
        budgets = config.load_budgets(parser_from("[main]\ntime_budget = 5\n"))
        self.assertEqual(budgets.time_budget, 5)

    def test_must_be_positive(self):
        with self.assertRaises(ValueError):
            config.Budgets(retry_budget=0)


class TestCacheDirectory(unittest.TestCase):
    def setUp(self):
        self.patched_environ = patch.dict(os.environ, clear=False)
        self.patched_environ.start()
        os.environ.pop(config.CACHE_DIR_ENV, None)

    def test_environment_wins(self):
        os.environ[config.CACHE_DIR_ENV] = "/tmp/from-env"
        parser = parser_from("[main]\ncache = /tmp/from-file\n")
        self.assertEqual(config.cache_directory(parser), Path("/tmp/from-env"))

    def test_config_file_then_default(self):
        parser = parser_from("[main]\ncache = /tmp/from-file\n")
        self.assertEqual(config.cache_directory(parser), Path("/tmp/from-file"))
        self.assertEqual(config.cache_directory(), config.DEFAULT_CACHE_DIR)

    def tearDown(self):
        self.patched_environ.stop()
        patch.stopall()


class TestParseConfig(unittest.TestCase):
    def setUp(self):
        self.patched_environ = patch.dict(os.environ, clear=False)
        self.patched_environ.start()
        os.environ.pop(config.CONFIG_ENV, None)

        self.patched_config_file = patch(f"{TESTING_MODULE}.MAIN_CONFIG_FILE", spec_set=Path)
        self.mocked_config_file = self.patched_config_file.start()

    def test_missing_default_file_gives_empty_parser(self):
        self.mocked_config_file.is_file.return_value = False

        parser = config.parse_configfile()
        self.assertTrue(parser.has_section(config.MAIN_SECTION))
        self.assertEqual(dict(parser[config.MAIN_SECTION]), {})

    def test_raises_file_not_found_error(self):
        with self.assertRaises(FileNotFoundError):
            config.parse_configfile("/nonexistent/fiberpowers.conf")

    def test_reads_explicit_and_environment_files(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir, "fiberpowers.conf")
            path.write_text("[main]\nseed = 7\n")

            self.assertEqual(config.parse_configfile(path).getint("main", "seed"), 7)

            os.environ[config.CONFIG_ENV] = str(path)
            self.assertEqual(config.parse_configfile().getint("main", "seed"), 7)

    def tearDown(self):
        self.patched_environ.stop()
        patch.stopall()
