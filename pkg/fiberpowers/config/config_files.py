"""
.. module:: fiberpowers.config.config_files
    :synopsis: Functions for handling config files.

The config file is optional. Keys in its ``[main]`` section are named after the
command line flags (``chars``, ``s_max``, ``seed`` ...), list-valued options are
written as JSON, and explicit flags always win over the file.
"""
import configparser
import json
import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
MAIN_SECTION = "main"

# ----- Environment -----
CONFIG_ENV = "FIBERPOWERS_CONFIG"
CACHE_DIR_ENV = "FIBERPOWERS_CACHE_DIR"

# ----- Paths -----
CONFIG_DIR = Path(os.environ.get("XDG_CONFIG_HOME", Path.home() / ".config")) / "fiberpowers"
MAIN_CONFIG_FILE = CONFIG_DIR / "fiberpowers.conf"
DEFAULT_CACHE_DIR = Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "fiberpowers"

# ----- Defaults -----
DEFAULT_CHARS = [2, 3, 101]
DEFAULT_S_MAX = 3
DEFAULT_SEED = 42
DEFAULT_INSTANCES = 500


# ========== Classes ==========
@dataclass(frozen=True)
class Budgets:
    """Resource limits handed down to the kernels.

    :param component_budget: maximum number of nodes visited by irreducible decomposition
    :param closure_budget: maximum number of multidegrees in an lcm-closure
    :param colength_search_bound: largest N tried when certifying p^N A ⊆ B
    :param retry_budget: candidates drawn per instance before generation gives up
    :param time_budget: seconds one Betti table may take inside a check
    """

    component_budget: int = 100_000
    closure_budget: int = 10_000_000
    colength_search_bound: int = 64
    retry_budget: int = 200
    time_budget: int = 300

    def __post_init__(self):
        for field in fields(self):
            if getattr(self, field.name) <= 0:
                raise ValueError(f"{field.name} must be positive")


DEFAULT_BUDGETS = Budgets()


# ========== Functions ==========
def load_chars_from_option(parser, *, section=MAIN_SECTION, option="chars", fallback=None):
    """Load the characteristics to run checks in, written as a JSON list
    such as ``[2, 3, 101]``.

    A value that is not JSON is logged and replaced by fallback. Primality is
    checked later, when each characteristic becomes a field.

    :param parser: the parsed config file
    :type parser: ``ConfigParser`` object
    :param section: section holding the option (default: ``main``)
    :type section: str
    :param option: option name (default: ``chars``)
    :type option: str
    :param fallback: value returned when the option is missing or unreadable
    :type fallback: list
    :return: the characteristics
    :rtype: list of int
    :raises ValueError: if the JSON value is not a list of integers
    """
    fallback = [] if fallback is None else fallback
    if not parser.has_option(section, option):
        return fallback

    text = parser.get(section, option)
    try:
        chars = json.loads(text)
    except json.decoder.JSONDecodeError:
        syslog.warning("Option %s = %r is not a JSON list, using %s", option, text, fallback)
        return fallback

    if not isinstance(chars, list) or not all(
        isinstance(p, int) and not isinstance(p, bool) for p in chars
    ):
        raise ValueError(f"{option} must be a list of characteristics such as [2, 3], got {text}")
    return chars


def load_int_from_option(parser, *, section=MAIN_SECTION, option="", fallback=None):
    """Load an integer option, returning fallback when it is absent.

    :param parser: the parsed config file
    :type parser: ``ConfigParser`` object
    :param section: section holding the option (default: ``main``)
    :type section: str
    :param option: option name
    :type option: str
    :param fallback: value returned when the option is missing
    :type fallback: int or None
    :rtype: int or None
    :raises ValueError: if the option is present but not an integer
    """
    if not parser.has_option(section, option):
        return fallback
    return parser.getint(section, option)


def load_budgets(parser):
    """Build a :class:`Budgets` from the ``[main]`` section of a config file.

    :param parser: the parsed config file
    :type parser: ``ConfigParser`` object
    :rtype: Budgets
    """
    overrides = {}
    for field in fields(Budgets):
        value = load_int_from_option(parser, option=field.name)
        if value is not None:
            overrides[field.name] = value

    return replace(DEFAULT_BUDGETS, **overrides)


def cache_directory(parser=None):
    """Resolve the Betti cache directory.

    Precedence: the environment variable, then the ``cache`` option of the config
    file, then the per-user default.

    :param parser: the parsed config file (default: ``None``)
    :type parser: ``ConfigParser`` object
    :rtype: path-like object
    """
    if os.environ.get(CACHE_DIR_ENV):
        return Path(os.environ[CACHE_DIR_ENV])

    if parser is not None and parser.has_option(MAIN_SECTION, "cache"):
        return Path(parser.get(MAIN_SECTION, "cache")).expanduser()

    return DEFAULT_CACHE_DIR


def parse_configfile(path=None):
    """Parse the main config file and return
    a ``configparser.ConfigParser`` object.

    When no path is given the ``FIBERPOWERS_CONFIG`` variable and then the default
    location are tried; a missing default file yields an empty parser.

    :param path: explicit config file (default: ``None``)
    :type path: str or path-like object
    :return: object used to parse config file
    :rtype: ConfigParser object
    :raises FileNotFoundError: if an explicitly requested path does not exist
    """
    config_reader = configparser.ConfigParser()
    config_reader.add_section(MAIN_SECTION)

    explicit = path if path is not None else os.environ.get(CONFIG_ENV)

    if explicit is not None:
        config_file = Path(explicit)
        if not config_file.is_file():
            raise FileNotFoundError(f"{config_file} does not exist")
    else:
        config_file = MAIN_CONFIG_FILE
        if not config_file.is_file():
            syslog.debug("No config file at %s, using defaults", config_file)
            return config_reader

    syslog.debug("Reading config file %s", config_file)
    config_reader.read(config_file)

    return config_reader
