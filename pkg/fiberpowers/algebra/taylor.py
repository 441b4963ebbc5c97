"""
.. module:: fiberpowers.algebra.taylor
    :synopsis: Betti numbers from the Taylor complex, an independent cross-check.

The Taylor complex has one basis element per non-empty set of generators, placed
in the multidegree of their lcm. After tensoring with the field only the
differential entries between sets with equal lcm survive, so every multidegree
is an independent small complex. Ranks are taken with ``sympy`` over GF(p), a
code path that shares nothing with the Koszul engine.
"""
import logging

from sympy import GF, Matrix
from sympy.polys.matrices import DomainMatrix

from fiberpowers.algebra.resolution import BettiTable, as_field_char
from fiberpowers.errors import ResourceError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
MAX_TAYLOR_GENERATORS = 12


# ========== Functions ==========
def _rank(rows, columns, entries, p):
    if not rows or not columns:
        return 0
    dense = [[0] * len(columns) for _ in rows]
    for (r, c), value in entries.items():
        dense[r][c] = value
    return DomainMatrix.from_Matrix(Matrix(dense)).convert_to(GF(p)).rank()


def _subset_lcms(gens):
    nvars = len(gens[0])
    lcms = {0: (0,) * nvars}
    for mask in range(1, 1 << len(gens)):
        low = mask & -mask
        rest = lcms[mask ^ low]
        g = gens[low.bit_length() - 1]
        lcms[mask] = tuple(max(a, b) for a, b in zip(rest, g))
    del lcms[0]
    return lcms


def taylor_betti_table(ideal, p):
    """Betti table of a monomial ideal from its Taylor complex.

    :param ideal: the ideal, with at most ``MAX_TAYLOR_GENERATORS`` generators
    :type ideal: MonomialIdeal
    :param p: the characteristic
    :type p: FieldChar or int
    :rtype: BettiTable
    :raises ResourceError: if the ideal has too many generators
    """
    char = as_field_char(p)
    if ideal.is_zero:
        return BettiTable(ideal.ring, char, {})
    if len(ideal) > MAX_TAYLOR_GENERATORS:
        raise ResourceError(
            f"the Taylor complex of {len(ideal)} generators is too large "
            f"(limit {MAX_TAYLOR_GENERATORS})"
        )

    lcms = _subset_lcms(ideal.gens)

    # multidegree -> homological degree -> sorted subset masks
    strata = {}
    for mask, lcm in lcms.items():
        strata.setdefault(lcm, {}).setdefault(bin(mask).count("1") - 1, []).append(mask)

    entries = {}
    for multidegree, by_degree in strata.items():
        index = {
            i: {mask: n for n, mask in enumerate(sorted(masks))} for i, masks in by_degree.items()
        }

        ranks = {}
        for i, columns in index.items():
            if i == 0 or i - 1 not in index:
                continue
            rows = index[i - 1]
            matrix = {}
            for mask, col in columns.items():
                bits = [b for b in range(mask.bit_length()) if mask >> b & 1]
                for position, bit in enumerate(bits):
                    face = mask & ~(1 << bit)
                    if face in rows:
                        matrix[(rows[face], col)] = -1 if position % 2 else 1
            ranks[i] = _rank(rows, columns, matrix, char.p)

        for i, columns in index.items():
            rank = len(columns) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if rank:
                entries[(i, multidegree)] = rank

    syslog.debug("taylor: %d subsets in %d multidegrees", len(lcms), len(strata))
    return BettiTable(ideal.ring, char, entries)
