"""
.. module:: fiberpowers.struct.cache
    :synopsis: Content-addressed on-disk store of Betti tables.
"""
import hashlib
import json
import logging

from fiberpowers.algebra.resolution import ENGINE_VERSION, BettiTable
from fiberpowers.struct.hierarchy import Hierarchy, read_json, write_json_atomic

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
ENTRIES_DIRNAME = "entries"
ENTRY_SUFFIX = ".json"


# ========== Functions ==========
def cache_key(ideal, char, engine_version=ENGINE_VERSION):
    """SHA-256 digest of (ring, canonical ideal text, characteristic, engine version).

    :param ideal: the ideal
    :type ideal: MonomialIdeal
    :param char: the characteristic
    :type char: FieldChar
    :rtype: str
    """
    payload = json.dumps(
        [list(ideal.ring.variables), str(ideal), char.p, engine_version],
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# ========== Classes ==========
class BettiCache(Hierarchy):
    """Betti tables keyed by canonical ideal, characteristic and engine version.

    **Implementation Details**

    * One JSON file per entry under ``entries/``, named by its key
    * Entries are written atomically; two workers computing the same table can only
      replace an entry with an identical one
    * The engine version is part of the key and is checked again on read, so tables
      written by another engine version are never served

    Example ::

        >>> cache = BettiCache("/tmp/fiberpowers-cache")  # doctest: +SKIP
        >>> table = cache.get_or_compute(ideal, FieldChar(2), compute)  # doctest: +SKIP
    """

    def __init__(self, dest):
        """Default constructor for the BettiCache class.

        :param dest: the root directory of the cache
        :type dest: str or path-like object
        """
        super().__init__(dest)

        self._entries_dir = self.path / ENTRIES_DIRNAME
        self._entries_dir.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

        version = self.read_metadata().get("engine_version")
        if version is None:
            self._gen_metadata()
        elif version != ENGINE_VERSION:
            syslog.info("Betti cache %s was written by engine version %s", self.path, version)
            self._gen_metadata()

    def __len__(self):
        return sum(1 for _ in self._entries_dir.glob(f"*{ENTRY_SUFFIX}"))

    def _gen_metadata(self):
        self.write_metadata({"engine_version": ENGINE_VERSION})

    @property
    def entries_dir(self):
        return self._entries_dir

    def entry_path(self, ideal, char):
        return self._entries_dir / f"{cache_key(ideal, char)}{ENTRY_SUFFIX}"

    def get(self, ideal, char):
        """Return the cached table, or ``None`` on a miss or a stale entry.

        :rtype: BettiTable or None
        """
        path = self.entry_path(ideal, char)
        data = read_json(path)
        if data is None:
            return None

        if data.get("engine_version") != ENGINE_VERSION or data.get("ideal") != str(ideal):
            syslog.debug("Ignoring stale cache entry %s", path.name)
            return None

        return BettiTable.from_records(ideal.ring, char, data["entries"])

    def put(self, ideal, char, table):
        """Store a table atomically."""
        write_json_atomic(
            self.entry_path(ideal, char),
            {
                "engine_version": ENGINE_VERSION,
                "ideal": str(ideal),
                "variables": list(ideal.ring.variables),
                "char": char.p,
                "entries": table.records(),
            },
        )

    def get_or_compute(self, ideal, char, compute):
        """Read-or-compute: serve a cached table or compute and store it.

        :param ideal: the ideal
        :type ideal: MonomialIdeal
        :param char: the characteristic
        :type char: FieldChar
        :param compute: zero-argument callable returning the table
        :type compute: callable
        :rtype: BettiTable
        """
        table = self.get(ideal, char)
        if table is not None:
            self.hits += 1
            return table

        self.misses += 1
        table = compute()
        self.put(ideal, char, table)
        return table

    def clear(self):
        """Remove every entry; the metadata survives."""
        removed = 0
        for entry in self._entries_dir.glob(f"*{ENTRY_SUFFIX}"):
            entry.unlink()
            removed += 1
        syslog.info("Removed %d cache entries from %s", removed, self.path)
        return removed
