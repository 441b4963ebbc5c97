"""
.. module:: fiberpowers.algebra.symbolic
    :synopsis: Monomial localization and symbolic powers.

Symbolic powers are taken over the associated primes (``ass``) or over the
minimal primes only (``min``). Localizing a monomial ideal at a monomial prime
erases the variables outside the prime, and since erasure is multiplicative
``loc(A^s, P) = loc(A, P)^s``.
"""
import enum
import logging
from dataclasses import dataclass

from fiberpowers.algebra.decompose import (
    associated_primes,
    irreducible_decomposition,
    minimal_primes,
)
from fiberpowers.algebra.resolution import invariants
from fiberpowers.algebra.ring import (
    MonomialIdeal,
    colon_by_monomial,
    ideal_sum,
    intersect_all,
    power,
)
from fiberpowers.errors import DomainError, StructuralError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)


# ========== Classes ==========
class SymbolicMode(enum.Enum):
    """Which primes a symbolic power intersects over."""

    ASS = "ass"
    MIN = "min"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SymbolicDepthScan:
    """depth(R/A^(s)) for s = 1..s_max.

    :param depths: one depth per scanned s, in order
    :param stable: whether the last two scanned values agree
    """

    depths: tuple
    s_max: int
    stable: bool

    @property
    def value(self):
        return self.depths[-1]

    @property
    def s_range(self):
        return (1, self.s_max)


# ========== Functions ==========
def _check_prime(ideal, prime):
    if prime.ring != ideal.ring:
        raise StructuralError(f"prime {prime} does not belong to {ideal.ring!r}")


def monomial_localization(ideal, prime):
    """The contraction A·R_P ∩ R for a monomial prime P.

    >>> from fiberpowers.algebra.ring import Ring
    >>> from fiberpowers.algebra.decompose import MonomialPrime
    >>> R = Ring(["x", "y"])
    >>> str(monomial_localization(MonomialIdeal(R, [(2, 1)]), MonomialPrime.from_names(R, "x")))
    '(x^2)'

    :param ideal: the ideal to localize
    :type ideal: MonomialIdeal
    :param prime: the prime to localize at
    :type prime: MonomialPrime
    :rtype: MonomialIdeal
    :raises StructuralError: on a ring mismatch
    """
    _check_prime(ideal, prime)
    return ideal.erase(prime.indices)


def saturate_localization(ideal, prime):
    """A : u^∞ with u the product of the variables outside P.

    Iterates the colon by u until it stops growing; an independent route to
    :func:`monomial_localization`.

    :rtype: MonomialIdeal
    """
    _check_prime(ideal, prime)
    u = tuple(0 if i in prime.indices else 1 for i in range(ideal.ring.nvars))
    if not any(u) or ideal.is_zero:
        return ideal

    current = ideal
    while True:
        step = colon_by_monomial(current, u)
        if step == current:
            return current
        current = step


def _primes(ideal, mode, budget):
    mode = SymbolicMode(mode)
    if mode is SymbolicMode.ASS:
        return associated_primes(ideal, budget=budget)
    return minimal_primes(ideal, budget=budget)


def symbolic_power(ideal, s, mode=SymbolicMode.ASS, *, budget=None):
    """The s-th symbolic power of a monomial ideal.

    ``s = 0`` gives the unit ideal.

    :param ideal: a proper non-zero monomial ideal
    :type ideal: MonomialIdeal
    :param s: the exponent
    :type s: int
    :param mode: intersect over associated or minimal primes (default: ``ass``)
    :type mode: SymbolicMode or str
    :param budget: component budget for the decomposition
    :type budget: int
    :rtype: MonomialIdeal
    :raises DomainError: for s < 0, the zero ideal or the unit ideal
    """
    if s < 0:
        raise DomainError(f"symbolic power exponent must be non-negative, got {s}")
    if s == 0:
        return MonomialIdeal.unit(ideal.ring)
    if ideal.is_zero or ideal.is_unit:
        raise DomainError("symbolic powers are defined for proper non-zero ideals only")

    primes = _primes(ideal, mode, budget)
    parts = [power(monomial_localization(ideal, prime), s) for prime in primes]
    result = intersect_all(parts)
    syslog.debug(
        "symbolic power s=%d mode=%s: %d primes, %d generators",
        s,
        SymbolicMode(mode),
        len(parts),
        len(result),
    )
    return result


def primary_components(ideal, *, budget=None):
    """Group the irreducible components by radical into a primary decomposition.

    Each prime contributes the intersection of its irreducible components, so the
    result has pairwise distinct radicals.

    :rtype: list of tuple
    """
    grouped = {}
    for component, prime in irreducible_decomposition(ideal, budget=budget):
        grouped.setdefault(prime, []).append(component)
    return [(intersect_all(parts), prime) for prime, parts in grouped.items()]


def symbolic_power_by_components(ideal, s, *, budget=None):
    """∩ Q^(s) over the primary components Q of an ideal.

    The components have distinct radicals (irreducible components sharing a
    radical are intersected first). Equals :func:`symbolic_power` whenever the
    ideal is unmixed.

    :rtype: MonomialIdeal
    """
    if s == 0:
        return MonomialIdeal.unit(ideal.ring)
    return intersect_all(
        monomial_localization(power(component, s), prime)
        for component, prime in primary_components(ideal, budget=budget)
    )


def symbolic_power_or_zero(ideal, s, mode=SymbolicMode.ASS, *, budget=None):
    """Like :func:`symbolic_power` but the zero ideal has zero powers for s ≥ 1."""
    if ideal.is_zero and s >= 1:
        return ideal
    return symbolic_power(ideal, s, mode, budget=budget)


def binomial_symbolic_power(first, second, s, ring, mode=SymbolicMode.ASS, *, budget=None):
    """Σ_{i=0..s} A^(i)·B^(s−i) for ideals in disjoint variable sets.

    :param first: ideal of one factor ring
    :type first: MonomialIdeal
    :param second: ideal of the other factor ring
    :type second: MonomialIdeal
    :param s: the exponent
    :type s: int
    :param ring: the tensor ring both ideals extend to
    :type ring: Ring
    :rtype: MonomialIdeal
    """
    a = [symbolic_power(first, i, mode, budget=budget).extend_to(ring) for i in range(s + 1)]
    b = [symbolic_power(second, i, mode, budget=budget).extend_to(ring) for i in range(s + 1)]
    return ideal_sum((a[i] * b[s - i] for i in range(s + 1)), ring)


def stable_symbolic_depth(ideal, p, s_max, mode=SymbolicMode.ASS, *, budget=None, cache=None):
    """Scan depth(R/A^(s)) for s = 1..s_max.

    The last value stands in for dim R - ℓ_s(A) once the sequence has stabilized;
    there is no effective bound on when that happens, so the scan only reports
    whether the final two values agree.

    :param ideal: a proper non-zero monomial ideal
    :type ideal: MonomialIdeal
    :param p: characteristic used for the depth computations
    :type p: FieldChar
    :param s_max: largest exponent scanned
    :type s_max: int
    :rtype: SymbolicDepthScan
    :raises DomainError: if s_max < 1
    """
    if s_max < 1:
        raise DomainError("the symbolic depth scan needs s_max >= 1")

    depths = []
    for s in range(1, s_max + 1):
        report = invariants(symbolic_power(ideal, s, mode, budget=budget), p, cache=cache)
        depths.append(report.depth_quotient)

    stable = len(depths) < 2 or depths[-1] == depths[-2]
    return SymbolicDepthScan(tuple(depths), s_max, stable)
