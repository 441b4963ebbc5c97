"""
.. module:: fiberpowers.lang.emit
    :synopsis: Render evaluation results as json, tsv or text.

Every format is exact: integers are printed as integers, ``-inf`` as the string
``-inf``, and collections in a fixed order, so equal values always render to
identical output.
"""
import json
import logging
import math

from fiberpowers.algebra.decompose import MonomialPrime, PrimaryDecomposition, sorted_primes
from fiberpowers.algebra.resolution import BettiTable
from fiberpowers.algebra.ring import MonomialIdeal

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
FORMATS = ("json", "tsv", "text")

NEG_INF_TEXT = "-inf"
EMPTY_TABLE_TEXT = "(empty)"
ZERO_ENTRY = "."


# ========== Functions ==========
def _is_prime_set(value):
    return isinstance(value, (set, frozenset)) and all(
        isinstance(p, MonomialPrime) for p in value
    )


def _number(value):
    if isinstance(value, float) and math.isinf(value) and value < 0:
        return NEG_INF_TEXT
    return value


def jsonable(value):
    """Convert a result into plain JSON data.

    :rtype: dict, list, str or int
    """
    if isinstance(value, MonomialIdeal):
        return {"gens": [list(g) for g in value.gens]}
    if isinstance(value, BettiTable):
        return value.records()
    if isinstance(value, MonomialPrime):
        return list(value.names)
    if _is_prime_set(value):
        return [list(p.names) for p in sorted_primes(value)]
    if isinstance(value, PrimaryDecomposition):
        return [
            {"component": jsonable(component), "radical": list(prime.names)}
            for component, prime in value
        ]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return _number(value)


def betti_text(table):
    """The total-degree Betti diagram: row j - i, column i, ``.`` for zero.

    ::

               0 1
        total: 3 2
            2: 3 2
    """
    if table.is_empty:
        return EMPTY_TABLE_TEXT

    totals = table.total_degrees()
    columns = range(max(i for i, _ in totals) + 1)
    rows = range(min(j - i for i, j in totals), max(j - i for i, j in totals) + 1)

    cells = {(j - i, i): rank for (i, j), rank in totals.items()}
    column_sums = [sum(r for (i, _), r in totals.items() if i == c) for c in columns]

    labels = ["", "total:"] + [f"{row}:" for row in rows]
    body = [[str(c) for c in columns], [str(n) if n else ZERO_ENTRY for n in column_sums]]
    for row in rows:
        body.append([str(cells[(row, c)]) if (row, c) in cells else ZERO_ENTRY for c in columns])

    label_width = max(len(label) for label in labels)
    widths = [max(len(line[c]) for line in body) for c in columns]
    lines = []
    for label, line in zip(labels, body):
        cells_text = " ".join(cell.rjust(width) for cell, width in zip(line, widths))
        lines.append(f"{label.rjust(label_width)} {cells_text}".rstrip())
    return "\n".join(lines)


def text(value):
    """Human readable rendering, e.g. ``(x^2, x*y)`` for an ideal."""
    if isinstance(value, MonomialIdeal):
        return str(value)
    if isinstance(value, BettiTable):
        return betti_text(value)
    if isinstance(value, MonomialPrime):
        return str(value)
    if _is_prime_set(value):
        return "{" + ", ".join(str(p) for p in sorted_primes(value)) + "}"
    if isinstance(value, PrimaryDecomposition):
        return " & ".join(str(component) for component, _ in value)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {text(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(text(v) for v in value) + "]"
    return str(_number(value))


def tsv(value):
    """One entry per line, fields separated by tabs."""
    if isinstance(value, MonomialIdeal):
        return "\n".join("\t".join(str(e) for e in g) for g in value.gens)
    if isinstance(value, BettiTable):
        return "\n".join(
            f"{i}\t({','.join(str(e) for e in a)})\t{rank}"
            for (i, a), rank in value.entries.items()
        )
    if _is_prime_set(value):
        return "\n".join("\t".join(p.names) for p in sorted_primes(value))
    if isinstance(value, PrimaryDecomposition):
        return "\n".join(f"{component}\t{prime}" for component, prime in value)
    if isinstance(value, dict):
        return "\n".join(f"{k}\t{text(v)}" for k, v in value.items())
    return text(value)


def emit(value, fmt="text"):
    """Render a value in one of ``FORMATS``.

    >>> from fiberpowers.algebra.ring import Ring
    >>> emit(MonomialIdeal.zero(Ring(["x"])), "json")
    '{"gens": []}\\n'

    :param value: an evaluation result or a dictionary of results
    :param fmt: ``json``, ``tsv`` or ``text`` (default: ``text``)
    :type fmt: str
    :return: the rendering, newline terminated unless empty
    :rtype: str
    :raises ValueError: on an unknown format
    """
    if fmt == "json":
        out = json.dumps(jsonable(value), sort_keys=True)
    elif fmt == "tsv":
        out = tsv(value)
    elif fmt == "text":
        out = text(value)
    else:
        raise ValueError(f"unknown format '{fmt}', expected one of {FORMATS}")

    return out + "\n" if out else out
