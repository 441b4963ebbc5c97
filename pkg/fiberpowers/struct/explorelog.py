"""
.. module:: fiberpowers.struct.explorelog
    :synopsis: Append-only line-delimited JSON log of exploration records.
"""
import json
import logging
from pathlib import Path

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
LOG_APPEND = "a"
LOG_READ = "r"


# ========== Classes ==========
class ExplorationLog:
    """One JSON object per line; only ever appended to by a single writer."""

    def __init__(self, path):
        """Default constructor for the ExplorationLog class.

        :param path: the log file, created with its parent directories on first write
        :type path: str or path-like object
        """
        self._path = Path(path)

    def __repr__(self):
        return f"{self.__class__.__name__}('{self._path}')"

    @property
    def path(self):
        return self._path

    def append(self, record):
        """Append one record.

        :param record: JSON-serializable mapping
        :type record: dict
        """
        self._path.parent.mkdir(parents=True, exist_ok=True)
        with self._path.open(mode=LOG_APPEND) as log_file:
            log_file.write(json.dumps(record, sort_keys=True) + "\n")

    def extend(self, records):
        for record in records:
            self.append(record)

    def records(self):
        """Read every record back, in order; a missing file has no records.

        :rtype: list of dict
        """
        if not self._path.exists():
            return []

        with self._path.open(mode=LOG_READ) as log_file:
            return [json.loads(line) for line in log_file if line.strip()]
