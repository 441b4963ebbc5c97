"""
.. module:: fiberpowers.algebra.ring
    :synopsis: Rings, monomials, and canonical monomial-ideal arithmetic.

Every other kernel module builds on the three classes defined here.

**Implementation Details**

* A ``MonomialIdeal`` stores its minimal generators as a tuple of exponent tuples,
  sorted by ascending total degree and then by descending lexicographic order
  (so ``x^2`` comes before ``x*y``). Structural equality is mathematical equality.
* The zero ideal has no generators, the unit ideal has the single generator ``1``.
* Arithmetic runs on ``numpy`` int64 arrays; exponents above ``EXPONENT_LIMIT``
  raise ``ExponentOverflowError`` instead of wrapping.
* Blocks live on the ``Ring``: extending an ideal to a tensor ring is a reindexing
  by variable name.
"""
import logging
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from fiberpowers.errors import DomainError, ExponentOverflowError, StructuralError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
EXPONENT_DTYPE = np.int64
EXPONENT_LIMIT = 2**31 - 1
NEG_INF = float("-inf")

# number of int64 cells materialized at once by pairwise kernels
CHUNK_ELEMENTS = 1 << 22

COMBINE_MODES = ("sum", "product", "intersect", "colon")
DEFAULT_BLOCK_PREFIX = "b"


# ========== Helpers ==========
def _check_overflow(rows):
    if rows.size and int(rows.max()) > EXPONENT_LIMIT:
        raise ExponentOverflowError(
            f"exponent {int(rows.max())} exceeds the limit {EXPONENT_LIMIT}"
        )


def _chunk_rows(points_count, partner_count, width):
    """Number of rows of the first operand to process per chunk."""
    per_row = max(1, partner_count * max(1, width))
    return max(1, CHUNK_ELEMENTS // per_row) if points_count else 1


def divisible_mask(points, gens):
    """For each row of points, is it divisible by some row of gens?

    :param points: exponent vectors to test, shape (P, n)
    :type points: ``numpy.ndarray``
    :param gens: candidate divisors, shape (G, n)
    :type gens: ``numpy.ndarray``
    :rtype: ``numpy.ndarray`` of bool, shape (P,)
    """
    result = np.zeros(points.shape[0], dtype=bool)
    if not gens.shape[0] or not points.shape[0]:
        return result

    step = _chunk_rows(points.shape[0], gens.shape[0], points.shape[1])
    for start in range(0, points.shape[0], step):
        chunk = points[start : start + step]
        result[start : start + step] = np.all(
            gens[None, :, :] <= chunk[:, None, :], axis=2
        ).any(axis=1)

    return result


def canonical_order(rows):
    """Return rows sorted by ascending degree, then descending lex order."""
    if rows.shape[0] <= 1:
        return rows
    keys = tuple(-rows[:, j] for j in range(rows.shape[1] - 1, -1, -1))
    order = np.lexsort(keys + (rows.sum(axis=1),))
    return rows[order]


def minimal_rows(rows):
    """Drop duplicates and every row divisible by another row.

    Rows are processed one degree layer at a time: distinct rows of equal degree
    never divide each other, so each layer is only tested against the kept rows
    of smaller degree.

    :param rows: exponent vectors, shape (N, n)
    :type rows: ``numpy.ndarray``
    :return: the minimal rows in canonical order
    :rtype: ``numpy.ndarray``
    """
    if rows.shape[0] == 0:
        return rows.reshape(0, rows.shape[1])

    rows = np.unique(rows, axis=0)
    degrees = rows.sum(axis=1)
    kept = np.empty((0, rows.shape[1]), dtype=EXPONENT_DTYPE)

    for degree in np.unique(degrees):
        layer = rows[degrees == degree]
        if kept.shape[0]:
            layer = layer[~divisible_mask(layer, kept)]
        kept = np.concatenate([kept, layer])

    return canonical_order(kept)


def _rows_to_gens(rows):
    return tuple(tuple(int(e) for e in row) for row in rows)


def pairwise(a_rows, b_rows, op):
    """Apply op to every pair (a, b) and return all results as one array."""
    out = []
    step = _chunk_rows(a_rows.shape[0], b_rows.shape[0], a_rows.shape[1])
    for start in range(0, a_rows.shape[0], step):
        chunk = a_rows[start : start + step]
        out.append(op(chunk[:, None, :], b_rows[None, :, :]).reshape(-1, a_rows.shape[1]))
    return np.concatenate(out) if out else np.empty((0, a_rows.shape[1]), EXPONENT_DTYPE)


# ========== Classes ==========
class Ring:
    """A polynomial ring described by its ordered variables and a block partition.

    The coefficient field is not part of the ring; characteristics only matter when
    Betti numbers are computed.

    ::

        >>> R = Ring(["x", "y"])
        >>> T = R.tensor(Ring(["u"]))
        >>> T.variables
        ('x', 'y', 'u')
        >>> T.block_names
        ('b0', 'b1')
    """

    __slots__ = ("_variables", "_blocks", "_index")

    def __init__(self, variables, blocks=None):
        """Default constructor for the Ring class.

        :param variables: distinct variable names, in order
        :type variables: iterable of str
        :param blocks: contiguous named blocks as ``(name, [variables])`` pairs
            covering every variable once (default: a single block)
        :type blocks: iterable of tuple
        :raises StructuralError: on duplicate names or an invalid partition
        """
        self._variables = tuple(variables)
        if len(set(self._variables)) != len(self._variables):
            raise StructuralError(f"duplicate variable names in {self._variables}")

        if blocks is None:
            blocks = [(f"{DEFAULT_BLOCK_PREFIX}0", self._variables)]
        self._blocks = tuple((str(name), tuple(names)) for name, names in blocks)

        flattened = tuple(v for _, names in self._blocks for v in names)
        if flattened != self._variables:
            raise StructuralError(
                "blocks must cover the variables contiguously and exactly once"
            )
        if len({name for name, _ in self._blocks}) != len(self._blocks):
            raise StructuralError("block names must be unique")

        self._index = {v: i for i, v in enumerate(self._variables)}

    def __eq__(self, other):
        if not isinstance(other, Ring):
            return NotImplemented
        return self._variables == other._variables and self._blocks == other._blocks

    def __hash__(self):
        return hash((self._variables, self._blocks))

    def __repr__(self):
        blocks = " | ".join(" ".join(names) for _, names in self._blocks)
        return f"{self.__class__.__name__}([{blocks}])"

    @property
    def variables(self):
        """
        :return: the variable names, in order
        :rtype: tuple of str
        """
        return self._variables

    @property
    def nvars(self):
        """
        :return: the number of variables, i.e. the Krull dimension
        :rtype: int
        """
        return len(self._variables)

    @property
    def blocks(self):
        """
        :return: ``(name, variables)`` pairs
        :rtype: tuple of tuple
        """
        return self._blocks

    @property
    def block_names(self):
        return tuple(name for name, _ in self._blocks)

    def index(self, variable):
        """Position of a variable.

        :raises StructuralError: if the variable is not in this ring
        """
        try:
            return self._index[variable]
        except KeyError:
            raise StructuralError(f"'{variable}' is not a variable of {self!r}") from None

    def has_variable(self, variable):
        return variable in self._index

    def block_indices(self, block):
        """Indices of the variables of a block, given by name or position.

        :param block: block name or index
        :type block: str or int
        :rtype: tuple of int
        """
        if isinstance(block, int):
            names = self._blocks[block][1]
        else:
            matches = [names for name, names in self._blocks if name == block]
            if not matches:
                raise StructuralError(f"no block named '{block}' in {self!r}")
            names = matches[0]
        return tuple(self._index[v] for v in names)

    def block_of(self, variable):
        """Position of the block holding a variable."""
        idx = self.index(variable)
        position = 0
        for b, (_, names) in enumerate(self._blocks):
            if idx < position + len(names):
                return b
            position += len(names)
        raise StructuralError(f"'{variable}' is in no block")  # pragma: no cover

    def subring(self, block):
        """The polynomial ring on one block's variables."""
        name, names = self._blocks[block] if isinstance(block, int) else next(
            (n, v) for n, v in self._blocks if n == block
        )
        return Ring(names, [(name, names)])

    def tensor(self, other):
        """The tensor ring: this ring's blocks followed by the other's.

        Block names are renumbered when the two rings use the same names.

        :param other: the second factor
        :type other: Ring
        :rtype: Ring
        :raises StructuralError: if the rings share a variable name
        """
        if set(self._variables) & set(other._variables):
            raise StructuralError("tensor factors must have disjoint variables")

        blocks = list(self._blocks) + list(other._blocks)
        if len({name for name, _ in blocks}) != len(blocks):
            blocks = [(f"{DEFAULT_BLOCK_PREFIX}{i}", names) for i, (_, names) in enumerate(blocks)]

        return Ring(self._variables + other._variables, blocks)

    def one(self):
        """The monomial 1."""
        return Monomial(self, (0,) * self.nvars)

    def variable(self, name):
        """The monomial given by a single variable."""
        exponents = [0] * self.nvars
        exponents[self.index(name)] = 1
        return Monomial(self, tuple(exponents))

    def monomial(self, powers):
        """Build a monomial from a ``{variable: exponent}`` mapping."""
        exponents = [0] * self.nvars
        for name, exponent in powers.items():
            exponents[self.index(name)] += exponent
        return Monomial(self, tuple(exponents))

    def maximal_ideal(self, block=None):
        """The ideal generated by one block's variables, or by all of them.

        :param block: block name or index (default: the graded maximal ideal)
        :rtype: MonomialIdeal
        """
        indices = range(self.nvars) if block is None else self.block_indices(block)
        return variables_ideal(self, indices)


@dataclass(frozen=True)
class Monomial:
    """A monomial of a ring, stored as its exponent vector."""

    ring: Ring
    exponents: tuple

    def __post_init__(self):
        exponents = tuple(int(e) for e in self.exponents)
        if len(exponents) != self.ring.nvars:
            raise StructuralError(
                f"exponent vector of length {len(exponents)} for a ring with "
                f"{self.ring.nvars} variables"
            )
        if any(e < 0 for e in exponents):
            raise StructuralError(f"negative exponent in {exponents}")
        if any(e > EXPONENT_LIMIT for e in exponents):
            raise ExponentOverflowError(f"exponent exceeds {EXPONENT_LIMIT} in {exponents}")
        object.__setattr__(self, "exponents", exponents)

    def __str__(self):
        return monomial_text(self.ring, self.exponents)

    def __mul__(self, other):
        _require_same_ring(self.ring, other.ring)
        return Monomial(self.ring, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    @property
    def degree(self):
        return sum(self.exponents)

    @property
    def block_degrees(self):
        """Degree in each block; the standard multigrading of a tensor ring."""
        out = []
        position = 0
        for _, names in self.ring.blocks:
            out.append(sum(self.exponents[position : position + len(names)]))
            position += len(names)
        return tuple(out)

    @property
    def support(self):
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    def divides(self, other):
        _require_same_ring(self.ring, other.ring)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other):
        _require_same_ring(self.ring, other.ring)
        pairs = zip(self.exponents, other.exponents)
        return Monomial(self.ring, tuple(max(a, b) for a, b in pairs))

    def gcd(self, other):
        _require_same_ring(self.ring, other.ring)
        pairs = zip(self.exponents, other.exponents)
        return Monomial(self.ring, tuple(min(a, b) for a, b in pairs))

    def power(self, s):
        return Monomial(self.ring, tuple(s * e for e in self.exponents))


class MonomialIdeal:
    """An ideal generated by monomials, kept in canonical form.

    Instances are immutable and hashable, so they can be shared between workers
    and used as cache keys.

    ::

        >>> R = Ring(["x", "y"])
        >>> I = MonomialIdeal(R, [(2, 0), (3, 0), (1, 1)])
        >>> str(I)
        '(x^2, x*y)'
        >>> I == MonomialIdeal(R, [(1, 1), (2, 0)])
        True
    """

    __slots__ = ("_ring", "_gens", "_matrix")

    def __init__(self, ring, gens=(), *, canonical=False):
        """Default constructor for the MonomialIdeal class.

        :param ring: the ambient ring
        :type ring: Ring
        :param gens: generators as ``Monomial`` objects, exponent tuples or an array
        :type gens: iterable
        :param canonical: skip minimalization, gens are already canonical
            (default: ``False``)
        :type canonical: bool
        :raises StructuralError: if a generator does not fit the ring
        """
        self._ring = ring
        self._matrix = None

        if canonical:
            self._gens = tuple(tuple(int(e) for e in g) for g in gens)
        else:
            self._gens = _rows_to_gens(minimal_rows(_as_rows(gens, ring)))

    @classmethod
    def from_rows(cls, ring, rows):
        """Build an ideal from an already-minimal, canonically ordered array."""
        ideal = cls(ring, _rows_to_gens(rows), canonical=True)
        ideal._matrix = rows
        return ideal

    @classmethod
    def zero(cls, ring):
        return cls(ring, (), canonical=True)

    @classmethod
    def unit(cls, ring):
        return cls(ring, ((0,) * ring.nvars,), canonical=True)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self._ring == other._ring and self._gens == other._gens

    def __hash__(self):
        return hash((self._ring, self._gens))

    def __len__(self):
        return len(self._gens)

    def __iter__(self):
        return (Monomial(self._ring, g) for g in self._gens)

    def __contains__(self, monomial):
        return membership(monomial, self)

    def __repr__(self):
        return f"{self.__class__.__name__}({self})"

    def __str__(self):
        return ideal_text(self)

    def __add__(self, other):
        return combine(self, other, "sum")

    def __mul__(self, other):
        return combine(self, other, "product")

    def __and__(self, other):
        return combine(self, other, "intersect")

    def __pow__(self, s):
        return power(self, s)

    def __le__(self, other):
        return self.issubset(other)

    @property
    def ring(self):
        return self._ring

    @property
    def gens(self):
        """
        :return: the canonical minimal generators as exponent tuples
        :rtype: tuple of tuple
        """
        return self._gens

    @property
    def matrix(self):
        """
        :return: the generators as an int64 array of shape (len(self), nvars)
        :rtype: ``numpy.ndarray``
        """
        if self._matrix is None:
            self._matrix = np.array(self._gens, dtype=EXPONENT_DTYPE).reshape(
                len(self._gens), self._ring.nvars
            )
        return self._matrix

    @property
    def is_zero(self):
        return not self._gens

    @property
    def is_unit(self):
        return len(self._gens) == 1 and not any(self._gens[0])

    @property
    def is_proper(self):
        return not self.is_unit

    @property
    def degrees(self):
        return tuple(sum(g) for g in self._gens)

    @property
    def is_equigenerated(self):
        return len(set(self.degrees)) <= 1

    def support(self):
        """Indices of the variables occurring in some generator."""
        return frozenset(i for g in self._gens for i, e in enumerate(g) if e)

    def issubset(self, other):
        """Containment of ideals: every generator of self lies in other."""
        _require_same_ring(self._ring, other._ring)
        if self.is_zero:
            return True
        return bool(divisible_mask(self.matrix, other.matrix).all())

    def colon(self, other):
        return combine(self, other, "colon")

    def extend_to(self, ring):
        """The extension of this ideal to a ring containing all its variables.

        :param ring: the target ring, e.g. a tensor ring
        :type ring: Ring
        :rtype: MonomialIdeal
        """
        if ring == self._ring:
            return self
        columns = [ring.index(v) for v in self._ring.variables]
        rows = np.zeros((len(self._gens), ring.nvars), dtype=EXPONENT_DTYPE)
        rows[:, columns] = self.matrix
        return MonomialIdeal.from_rows(ring, canonical_order(rows))

    def restrict_to(self, ring):
        """Contraction to a subring: keep the generators living in its variables.

        For monomial ideals ``X ∩ R`` is generated by the minimal generators of X
        whose support lies in R's variables.

        :param ring: a ring whose variables all occur in this ideal's ring
        :type ring: Ring
        :rtype: MonomialIdeal
        """
        columns = [self._ring.index(v) for v in ring.variables]
        outside = [i for i in range(self._ring.nvars) if i not in set(columns)]
        keep = ~self.matrix[:, outside].any(axis=1) if outside else np.ones(len(self), bool)
        return MonomialIdeal(ring, self.matrix[keep][:, columns])

    def erase(self, keep):
        """Set the exponent of every variable outside keep to zero, then minimalize.

        :param keep: indices of the variables that survive
        :type keep: iterable of int
        :rtype: MonomialIdeal
        """
        mask = np.zeros(self._ring.nvars, dtype=bool)
        mask[list(keep)] = True
        return MonomialIdeal(self._ring, self.matrix * mask)


# ========== Functions ==========
def _require_same_ring(a, b):
    if a != b:
        raise StructuralError(f"ring mismatch: {a!r} vs {b!r}")


def _as_rows(gens, ring):
    if isinstance(gens, np.ndarray):
        rows = gens.astype(EXPONENT_DTYPE, copy=False)
    else:
        vectors = []
        for g in gens:
            if isinstance(g, Monomial):
                _require_same_ring(g.ring, ring)
                vectors.append(g.exponents)
            else:
                vectors.append(tuple(g))
        if any(len(v) != ring.nvars for v in vectors):
            raise StructuralError(
                f"generator length does not match the {ring.nvars} variables of {ring!r}"
            )
        rows = np.array(vectors, dtype=EXPONENT_DTYPE).reshape(len(vectors), ring.nvars)

    if rows.ndim != 2 or rows.shape[1] != ring.nvars:
        raise StructuralError(f"generator array of shape {rows.shape} for {ring!r}")
    if rows.size and int(rows.min()) < 0:
        raise StructuralError("negative exponent in a generator")
    _check_overflow(rows)
    return rows


def variables_ideal(ring, indices):
    """The prime ideal generated by the variables at the given indices."""
    rows = np.zeros((len(tuple(indices)), ring.nvars), dtype=EXPONENT_DTYPE)
    for r, i in enumerate(indices):
        rows[r, i] = 1
    return MonomialIdeal(ring, rows)


def minimalize(gens, ring):
    """Canonical ideal generated by gens.

    >>> R = Ring(["x", "y"])
    >>> str(minimalize([(2, 1), (1, 2), (2, 2)], R))
    '(x^2*y, x*y^2)'

    :param gens: generators (``Monomial`` objects or exponent tuples)
    :type gens: iterable
    :param ring: the ring the generators live in
    :type ring: Ring
    :rtype: MonomialIdeal
    :raises StructuralError: if a generator does not match the ring
    """
    return MonomialIdeal(ring, gens)


def _intersect(a, b):
    if a.is_zero or b.is_zero:
        return MonomialIdeal.zero(a.ring)
    if a.is_unit:
        return b
    if b.is_unit:
        return a
    if a.issubset(b):
        return a
    if b.issubset(a):
        return b
    if not a.support() & b.support():
        # ideals in disjoint variables: intersection equals product
        return _product(a, b)

    candidates = pairwise(a.matrix, b.matrix, np.maximum)
    syslog.debug("intersect: %d candidate lcms", candidates.shape[0])
    return MonomialIdeal.from_rows(a.ring, minimal_rows(candidates))


def _product(a, b):
    if a.is_zero or b.is_zero:
        return MonomialIdeal.zero(a.ring)
    candidates = pairwise(a.matrix, b.matrix, np.add)
    _check_overflow(candidates)
    return MonomialIdeal.from_rows(a.ring, minimal_rows(candidates))


def colon_by_monomial(a, exponents):
    """The colon ideal (A : b) for a single monomial b.

    :param a: the ideal
    :type a: MonomialIdeal
    :param exponents: exponent vector of b
    :type exponents: sequence of int
    :rtype: MonomialIdeal
    """
    if a.is_zero:
        return a
    b = np.asarray(exponents, dtype=EXPONENT_DTYPE)
    return MonomialIdeal.from_rows(a.ring, minimal_rows(np.maximum(a.matrix - b, 0)))


def _colon(a, b):
    if b.is_zero:
        return MonomialIdeal.unit(a.ring)
    parts = sorted((colon_by_monomial(a, g) for g in b.gens), key=len)
    return reduce(_intersect, parts)


def combine(a, b, mode):
    """Sum, product, intersection or colon of two monomial ideals.

    :param a: first operand
    :type a: MonomialIdeal
    :param b: second operand
    :type b: MonomialIdeal
    :param mode: one of ``sum``, ``product``, ``intersect``, ``colon``
    :type mode: str
    :rtype: MonomialIdeal
    :raises StructuralError: if the ideals live in different rings
    :raises ValueError: on an unknown mode
    """
    _require_same_ring(a.ring, b.ring)

    if mode == "sum":
        return MonomialIdeal.from_rows(
            a.ring, minimal_rows(np.concatenate([a.matrix, b.matrix]))
        )
    if mode == "product":
        return _product(a, b)
    if mode == "intersect":
        return _intersect(a, b)
    if mode == "colon":
        return _colon(a, b)

    raise ValueError(f"unknown combine mode '{mode}', expected one of {COMBINE_MODES}")


def ideal_sum(ideals, ring):
    """Sum of any number of ideals of one ring (zero ideal when empty)."""
    ideals = list(ideals)
    if not ideals:
        return MonomialIdeal.zero(ring)
    for ideal in ideals:
        _require_same_ring(ideal.ring, ring)
    return MonomialIdeal.from_rows(ring, minimal_rows(np.concatenate([i.matrix for i in ideals])))


def intersect_all(ideals):
    """Intersection of a non-empty collection, folded smallest-first."""
    ideals = sorted(ideals, key=len)
    return reduce(_intersect, ideals)


def power(a, s):
    """Ordinary power A^s by iterated product.

    >>> R = Ring(["x", "y"])
    >>> str(power(R.maximal_ideal(), 2))
    '(x^2, x*y, y^2)'

    :param a: the ideal
    :type a: MonomialIdeal
    :param s: the exponent
    :type s: int
    :rtype: MonomialIdeal
    :raises DomainError: if s is negative
    """
    if s < 0:
        raise DomainError(f"power exponent must be non-negative, got {s}")
    result = MonomialIdeal.unit(a.ring)
    for _ in range(s):
        result = _product(result, a)
    return result


def radical(a):
    """Radical of a monomial ideal: squarefree supports, minimalized."""
    if a.is_zero:
        return a
    return MonomialIdeal.from_rows(a.ring, minimal_rows((a.matrix > 0).astype(EXPONENT_DTYPE)))


def max_gen_degree(a):
    """d(A): the largest degree of a minimal generator, ``-inf`` for the zero ideal."""
    if a.is_zero:
        return NEG_INF
    return max(a.degrees)


def min_gen_degree(a):
    """The smallest degree of a minimal generator, ``-inf`` for the zero ideal."""
    if a.is_zero:
        return NEG_INF
    return min(a.degrees)


def membership(monomial, a):
    """Is the monomial in the ideal?

    :param monomial: the monomial to test
    :type monomial: Monomial
    :param a: the ideal
    :type a: MonomialIdeal
    :rtype: bool
    """
    _require_same_ring(monomial.ring, a.ring)
    if a.is_zero:
        return False
    point = np.asarray(monomial.exponents, dtype=EXPONENT_DTYPE).reshape(1, -1)
    return bool(divisible_mask(point, a.matrix)[0])


def is_power_of_variables(a):
    """If A = (support variables)^s return s, otherwise ``None``."""
    if a.is_zero or a.is_unit or not a.is_equigenerated:
        return None
    s = a.degrees[0]
    k = len(a.support())
    return s if len(a) == math.comb(k + s - 1, s) else None


# ========== Text ==========
def monomial_text(ring, exponents):
    """Human readable monomial, e.g. ``x^2*y``; the unit monomial is ``1``."""
    factors = []
    for name, e in zip(ring.variables, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def ideal_text(a):
    """Human readable ideal, e.g. ``(x^2, x*y)``; the zero ideal is ``(0)``."""
    if a.is_zero:
        return "(0)"
    return "(" + ", ".join(monomial_text(a.ring, g) for g in a.gens) + ")"
