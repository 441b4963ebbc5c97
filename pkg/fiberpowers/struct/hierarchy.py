"""
.. module:: fiberpowers.struct.hierarchy
    :synopsis: A directory with a JSON metadata file, the base of the on-disk stores.
"""
import json
import logging
import os
from pathlib import Path

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)


# ========== Constants ==========
DIRMODE = 0o755

METADATA_FILENAME = ".metadata"
METADATA_READ = "r"
METADATA_WRITE = "w"


# ========== Functions ==========
def write_json_atomic(path, data):
    """Serialize data to path through a temporary file and a rename.

    Readers never observe a partially written file. Concurrent writers of the same
    path each use their own temporary file, and the last rename wins.

    :param path: destination file
    :type path: path-like object
    :param data: JSON-serializable data
    :type data: any type
    """
    path = Path(path)
    tmpfile = path.with_name(f"{path.name}.{os.getpid()}.tmp")

    with tmpfile.open(mode=METADATA_WRITE) as mfile:
        json.dump(data, mfile, sort_keys=True)

    tmpfile.replace(path)


def read_json(path):
    """Load a JSON file, or ``None`` if it is missing or truncated.

    :param path: the file
    :type path: path-like object
    :rtype: any type or None
    """
    try:
        with Path(path).open(mode=METADATA_READ) as jfile:
            return json.load(jfile)
    except FileNotFoundError:
        return None
    except json.JSONDecodeError:
        syslog.warning("Ignoring unreadable JSON file %s", path)
        return None


# ========== Classes ==========
class Hierarchy(os.PathLike):
    """A directory of persisted data described by a metadata file.

    **Implementation Details**

    * Subclasses decide what the metadata holds by implementing ``_gen_metadata``
    * The directory is created on instantiation; the metadata file is not
    """

    def __init__(self, dest):
        """Default constructor for the ``Hierarchy`` class.

        :param dest: the root directory of the hierarchy
        :type dest: str or path-like object
        :raises PermissionError: if process does not have permission to write at dest
        """
        self._path = Path(dest)
        self._metadata_path = self._path / METADATA_FILENAME

        self._path.mkdir(DIRMODE, parents=True, exist_ok=True)

    def __fspath__(self):
        return str(self._path)

    def __repr__(self):
        return f"{self.__class__.__name__}('{self._path}')"

    def _gen_metadata(self):
        """Write the initial metadata of this hierarchy."""
        raise NotImplementedError("This method must be called in a child class.")

    @property
    def path(self):
        """
        :return: the base directory of this hierarchy
        :rtype: path-like object
        """
        return self._path

    @property
    def metadata_path(self):
        return self._metadata_path

    def read_metadata(self):
        """This hierarchy's metadata; an empty dict when there is none yet.

        :rtype: dict
        """
        syslog.debug("Reading metadata from %s", self._metadata_path)
        metadata = read_json(self._metadata_path)
        return {} if metadata is None else metadata

    def write_metadata(self, attr):
        """Replace this hierarchy's metadata atomically.

        :param attr: data to write
        :type attr: dict
        """
        syslog.debug("Writing metadata to %s", self._metadata_path)
        write_json_atomic(self._metadata_path, attr)
