"""
.. module:: fiberpowers.algebra.decompose
    :synopsis: Irreducible decomposition, associated and minimal primes, unmixed part.

**Implementation Details**

* Irreducible decomposition splits the lowest-degree mixed generator
  ``m = x_i^e * v`` into ``(I', x_i^e)`` and ``(I', v)`` until every node is
  generated by pure powers. The tree is walked with an explicit stack and nodes
  already seen are skipped.
* Irreducible monomial ideals are strongly irreducible among monomial ideals, so a
  component is redundant exactly when it contains another component.
"""
import logging
from dataclasses import dataclass

import numpy as np

from fiberpowers.algebra.ring import (
    MonomialIdeal,
    canonical_order,
    intersect_all,
    variables_ideal,
)
from fiberpowers.config.config_files import DEFAULT_BUDGETS
from fiberpowers.errors import DomainError, ResourceError, StructuralError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)


# ========== Classes ==========
@dataclass(frozen=True)
class MonomialPrime:
    """The prime ideal generated by a subset of the ring's variables.

    The empty subset is the zero prime, which only occurs as the minimal prime of
    the zero ideal.
    """

    ring: object
    indices: frozenset

    def __post_init__(self):
        indices = frozenset(int(i) for i in self.indices)
        if any(i < 0 or i >= self.ring.nvars for i in indices):
            raise StructuralError(f"prime indices {sorted(indices)} outside {self.ring!r}")
        object.__setattr__(self, "indices", indices)

    @classmethod
    def from_names(cls, ring, names):
        return cls(ring, frozenset(ring.index(name) for name in names))

    def __str__(self):
        if not self.indices:
            return "(0)"
        return "(" + ", ".join(self.names) + ")"

    def __le__(self, other):
        return self.indices <= other.indices

    def __lt__(self, other):
        return self.indices < other.indices

    @property
    def names(self):
        return tuple(self.ring.variables[i] for i in sorted(self.indices))

    @property
    def height(self):
        return len(self.indices)

    def ideal(self):
        """The prime as a monomial ideal (the zero ideal for the zero prime)."""
        return variables_ideal(self.ring, sorted(self.indices))

    def extend_to(self, ring):
        """The same variables as a prime of a larger ring."""
        return MonomialPrime.from_names(ring, self.names)

    def sort_key(self):
        return (len(self.indices), tuple(sorted(self.indices)))


@dataclass(frozen=True)
class PrimaryDecomposition:
    """An intersection of primary monomial ideals, each tagged with its radical."""

    ideal: MonomialIdeal
    components: tuple
    irredundant: bool = True

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    @property
    def radicals(self):
        return frozenset(prime for _, prime in self.components)

    def intersection(self):
        """Intersect the components back together."""
        return intersect_all(component for component, _ in self.components)


# ========== Functions ==========
def _require_nontrivial(ideal):
    if ideal.is_zero:
        raise DomainError("the zero ideal has no irreducible decomposition")
    if ideal.is_unit:
        raise DomainError("the unit ideal has no irreducible decomposition")


def _split_position(rows):
    """Index of the first mixed generator in canonical order, or -1."""
    mixed = np.flatnonzero((rows > 0).sum(axis=1) > 1)
    return int(mixed[0]) if mixed.size else -1


def _child(rest, factor):
    """The canonical rows of (rest + factor).

    No row of rest divides factor because factor divides a minimal generator that
    was removed from rest.
    """
    keep = ~np.all(rest >= factor, axis=1)
    return canonical_order(np.concatenate([rest[keep], factor[None, :]]))


def _prime_of(ring, rows):
    return MonomialPrime(ring, frozenset(int(i) for i in np.flatnonzero(rows.any(axis=0))))


def prune_components(components):
    """Drop duplicate components and every component containing another one.

    :param components: irreducible monomial ideals of one ring
    :type components: iterable of MonomialIdeal
    :rtype: list of MonomialIdeal
    """
    unique = sorted(set(components), key=lambda c: (len(c), c.gens))
    kept = []
    for i, candidate in enumerate(unique):
        if not any(j != i and other.issubset(candidate) for j, other in enumerate(unique)):
            kept.append(candidate)
    return kept


def irreducible_decomposition(ideal, *, budget=None):
    """Write a monomial ideal as an irredundant intersection of irreducible ideals.

    >>> from fiberpowers.algebra.ring import Ring
    >>> R = Ring(["x", "y"])
    >>> d = irreducible_decomposition(MonomialIdeal(R, [(2, 0), (1, 1)]))
    >>> [str(c) for c, _ in d]
    ['(x)', '(x^2, y)']

    :param ideal: a proper non-zero monomial ideal
    :type ideal: MonomialIdeal
    :param budget: maximum number of splitting nodes (default: the configured
        component budget)
    :type budget: int
    :rtype: PrimaryDecomposition
    :raises DomainError: for the zero or unit ideal
    :raises ResourceError: when the budget is exhausted
    """
    _require_nontrivial(ideal)
    budget = DEFAULT_BUDGETS.component_budget if budget is None else budget

    ring = ideal.ring
    stack = [ideal.matrix]
    seen = {ideal.gens}
    leaves = []
    visited = 0

    while stack:
        rows = stack.pop()
        visited += 1
        if visited > budget:
            raise ResourceError(
                f"irreducible decomposition exceeded the component budget of {budget}"
            )

        position = _split_position(rows)
        if position < 0:
            leaves.append(MonomialIdeal.from_rows(ring, rows))
            continue

        generator = rows[position]
        rest = np.delete(rows, position, axis=0)
        variable = int(np.flatnonzero(generator)[0])

        pure = np.zeros_like(generator)
        pure[variable] = generator[variable]
        remainder = generator.copy()
        remainder[variable] = 0

        for factor in (remainder, pure):
            child = _child(rest, factor)
            key = tuple(map(tuple, child.tolist()))
            if key not in seen:
                seen.add(key)
                stack.append(child)

    components = prune_components(leaves)
    components.sort(key=lambda c: (_prime_of(ring, c.matrix).sort_key(), c.gens))
    syslog.debug(
        "irreducible decomposition: %d nodes, %d leaves, %d components",
        visited,
        len(leaves),
        len(components),
    )

    return PrimaryDecomposition(
        ideal,
        tuple((c, _prime_of(ring, c.matrix)) for c in components),
        irredundant=True,
    )


def associated_primes(ideal, *, budget=None):
    """Associated primes: the radicals of the irredundant irreducible components.

    :param ideal: a proper non-zero monomial ideal
    :type ideal: MonomialIdeal
    :rtype: frozenset of MonomialPrime
    :raises DomainError: for the zero or unit ideal
    """
    return irreducible_decomposition(ideal, budget=budget).radicals


def inclusion_minimal(primes):
    """The inclusion-minimal members of a set of primes."""
    primes = frozenset(primes)
    return frozenset(p for p in primes if not any(q < p for q in primes))


def minimal_primes(ideal, *, budget=None):
    """Minimal primes of a proper ideal; ``{(0)}`` for the zero ideal.

    :param ideal: a proper monomial ideal
    :type ideal: MonomialIdeal
    :rtype: frozenset of MonomialPrime
    :raises DomainError: for the unit ideal
    """
    if ideal.is_unit:
        raise DomainError("the unit ideal has no minimal primes")
    if ideal.is_zero:
        return frozenset([MonomialPrime(ideal.ring, frozenset())])
    return inclusion_minimal(associated_primes(ideal, budget=budget))


def sorted_primes(primes):
    """Deterministic order for reporting: by height, then variable indices."""
    return sorted(primes, key=MonomialPrime.sort_key)


def unmixed_part(ideal, *, budget=None):
    """Intersection of the components whose radical is a minimal prime.

    :param ideal: a proper non-zero monomial ideal
    :type ideal: MonomialIdeal
    :return: the unmixed part and whether the ideal was already unmixed
    :rtype: tuple
    """
    decomposition = irreducible_decomposition(ideal, budget=budget)
    associated = decomposition.radicals
    minimal = inclusion_minimal(associated)

    if associated == minimal:
        return ideal, True

    part = intersect_all(c for c, prime in decomposition if prime in minimal)
    return part, False


def is_unmixed(ideal, *, budget=None):
    return unmixed_part(ideal, budget=budget)[1]


def dimension(ideal, *, budget=None):
    """Krull dimension of R/I: nvars minus the smallest height of a minimal prime.

    :raises DomainError: for the unit ideal
    """
    if ideal.is_zero:
        return ideal.ring.nvars
    return ideal.ring.nvars - min(p.height for p in minimal_primes(ideal, budget=budget))
