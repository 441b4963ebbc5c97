"""
.. module:: fiberpowers.algebra.fiber
    :synopsis: Fiber products F = I + J + mn and the auxiliary ideals built from them.

All ideals of an instance live in the tensor ring ``T = R ⊗ S`` unless their name
says otherwise (``m_R`` is the maximal ideal of R, ``m`` its extension to T).
"""
import logging
from dataclasses import dataclass

from fiberpowers.algebra.decompose import MonomialPrime, associated_primes, minimal_primes
from fiberpowers.algebra.resolution import finite_colength_top_degree, reg_structured
from fiberpowers.algebra.ring import (
    NEG_INF,
    MonomialIdeal,
    ideal_sum,
    max_gen_degree,
    power,
    variables_ideal,
)
from fiberpowers.algebra.symbolic import SymbolicMode, symbolic_power, symbolic_power_or_zero
from fiberpowers.config.config_files import DEFAULT_BUDGETS
from fiberpowers.errors import DomainError, StructuralError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
U_FLAVORS = ("ordinary", "symbolic", "min-symbolic")
PREDICTION_MODES = ("ordinary", "ass", "min")


# ========== Classes ==========
@dataclass(frozen=True)
class FiberInstance:
    """A pair of ideals I ⊆ R, J ⊆ S and their fiber product F ⊆ T.

    Use :func:`make_fiber` to build one.
    """

    R: object
    S: object
    I: MonomialIdeal
    J: MonomialIdeal
    T: object
    m: MonomialIdeal
    n: MonomialIdeal
    p: MonomialIdeal
    F: MonomialIdeal
    I_T: MonomialIdeal
    J_T: MonomialIdeal
    label: str = ""

    def __str__(self):
        prefix = f"{self.label}: " if self.label else ""
        return (
            f"{prefix}R=[{' '.join(self.R.variables)}] I={self.I} | "
            f"S=[{' '.join(self.S.variables)}] J={self.J}"
        )

    @property
    def m_R(self):
        return self.R.maximal_ideal()

    @property
    def n_S(self):
        return self.S.maximal_ideal()

    @property
    def i_in_m2(self):
        """Is I ⊆ m^2?"""
        return self.I.issubset(power(self.m_R, 2))

    @property
    def j_in_n2(self):
        return self.J.issubset(power(self.n_S, 2))

    @property
    def in_squares(self):
        return self.i_in_m2 and self.j_in_n2

    def as_dict(self):
        return {
            "label": self.label,
            "R": list(self.R.variables),
            "I": [list(g) for g in self.I.gens],
            "S": list(self.S.variables),
            "J": [list(g) for g in self.J.gens],
        }


@dataclass(frozen=True)
class Filtration:
    """A descending chain K_0 ⊇ K_1 ⊇ ... of ideals of one ring."""

    ring: object
    ideals: tuple

    def __post_init__(self):
        ideals = tuple(self.ideals)
        object.__setattr__(self, "ideals", ideals)

        for ideal in ideals:
            if ideal.ring != self.ring:
                raise StructuralError("filtration members must share one ring")
        for index, (upper, lower) in enumerate(zip(ideals, ideals[1:])):
            if not lower.issubset(upper):
                raise DomainError(f"filtration is not descending at index {index + 1}")

    def __getitem__(self, index):
        return self.ideals[index]

    def __len__(self):
        return len(self.ideals)

    @classmethod
    def ordinary(cls, ideal, length):
        """I^0 = R, I^1, ..., I^(length-1)."""
        return cls(ideal.ring, [power(ideal, i) for i in range(length)])

    @classmethod
    def symbolic(cls, ideal, length, mode=SymbolicMode.ASS, *, budget=None):
        """I^(0) = R, I^(1), ...; the zero ideal gives the zero filtration after index 0."""
        if ideal.is_zero:
            zero = MonomialIdeal.zero(ideal.ring)
            return cls(ideal.ring, [MonomialIdeal.unit(ideal.ring)] + [zero] * (length - 1))
        return cls(
            ideal.ring, [symbolic_power(ideal, i, mode, budget=budget) for i in range(length)]
        )

    @classmethod
    def maximal(cls, ring, length):
        """Powers of the graded maximal ideal."""
        return cls.ordinary(ring.maximal_ideal(), length)


# ========== Functions ==========
def make_fiber(R, I, S, J, *, label=""):
    """Build the fiber product instance of I ⊆ R and J ⊆ S.

    >>> from fiberpowers.algebra.ring import Ring
    >>> R, S = Ring(["x"]), Ring(["y"])
    >>> inst = make_fiber(R, MonomialIdeal(R, [(2,)]), S, MonomialIdeal(S, [(2,)]))
    >>> str(inst.F)
    '(x^2, x*y, y^2)'

    :param R: first factor ring, dimension ≥ 1
    :type R: Ring
    :param I: proper ideal of R
    :type I: MonomialIdeal
    :param S: second factor ring, dimension ≥ 1
    :type S: Ring
    :param J: proper ideal of S
    :type J: MonomialIdeal
    :param label: free text carried into reports
    :type label: str
    :rtype: FiberInstance
    :raises DomainError: for a dimension-zero ring or an improper ideal
    :raises StructuralError: if an ideal does not belong to its ring
    """
    if R.nvars < 1 or S.nvars < 1:
        raise DomainError("fiber products need positive dimensional rings")
    if I.ring != R or J.ring != S:
        raise StructuralError("each ideal must belong to its factor ring")
    if I.is_unit or J.is_unit:
        raise DomainError("fiber products need proper ideals")

    T = R.tensor(S)
    m = variables_ideal(T, [T.index(v) for v in R.variables])
    n = variables_ideal(T, [T.index(v) for v in S.variables])
    I_T = I.extend_to(T)
    J_T = J.extend_to(T)
    F = I_T + J_T + m * n

    return FiberInstance(R, S, I, J, T, m, n, m + n, F, I_T, J_T, label)


def plus_power(inst, s, side="I"):
    """(I + n)^s, or (J + m)^s when side is ``J``."""
    base = inst.I_T + inst.n if side == "I" else inst.J_T + inst.m
    return power(base, s)


def plus_symbolic_power(inst, s, side="I", mode=SymbolicMode.ASS, *, budget=None):
    """(I + n)^(s) through the binomial expansion Σ I^(i) n^(s-i).

    The variables of n generate a prime, so its symbolic powers are its ordinary
    powers. A zero factor is handled directly: (0 + n)^(s) = n^s.
    """
    ideal, other = (inst.I, inst.n) if side == "I" else (inst.J, inst.m)
    if ideal.is_zero:
        return power(other, s)

    terms = [
        symbolic_power(ideal, i, mode, budget=budget).extend_to(inst.T) * power(other, s - i)
        for i in range(s + 1)
    ]
    return ideal_sum(terms, inst.T)


def U_ideal(inst, s, flavor="ordinary", *, budget=None):
    """(I + n)^s ∩ (J + m)^s and its symbolic variants.

    :param inst: the instance
    :type inst: FiberInstance
    :param s: the exponent, s ≥ 1
    :type s: int
    :param flavor: ``ordinary``, ``symbolic`` or ``min-symbolic``
    :type flavor: str
    :rtype: MonomialIdeal
    :raises DomainError: for s < 1, or a symbolic flavor with a zero factor
    """
    if s < 1:
        raise DomainError(f"U_s needs s >= 1, got {s}")
    if flavor not in U_FLAVORS:
        raise ValueError(f"unknown flavor '{flavor}', expected one of {U_FLAVORS}")

    if flavor == "ordinary":
        return plus_power(inst, s, "I") & plus_power(inst, s, "J")

    if inst.I.is_zero or inst.J.is_zero:
        raise DomainError("the symbolic binomial expansion needs non-zero I and J")

    mode = SymbolicMode.ASS if flavor == "symbolic" else SymbolicMode.MIN
    return plus_symbolic_power(inst, s, "I", mode, budget=budget) & plus_symbolic_power(
        inst, s, "J", mode, budget=budget
    )


def filtration_intersect(K, L, s):
    """Both sides of the intersection formula for filtrations K over R and L over S.

    ``lhs = (Σ K_i n^(s-i)) ∩ (Σ L_t m^(s-t))`` and
    ``rhs = Σ (K_i ∩ m^(s-t))(L_t ∩ n^(s-i))``, both over 0 ≤ i, t ≤ s.

    :param K: filtration of R with at least s+1 members
    :type K: Filtration
    :param L: filtration of S with at least s+1 members
    :type L: Filtration
    :param s: the exponent
    :type s: int
    :return: (lhs, rhs) as ideals of R ⊗ S
    :rtype: tuple
    :raises DomainError: when a filtration is too short
    """
    if len(K) < s + 1 or len(L) < s + 1:
        raise DomainError(f"filtrations need at least {s + 1} members")

    T = K.ring.tensor(L.ring)
    m_powers = [power(K.ring.maximal_ideal(), j) for j in range(s + 1)]
    n_powers = [power(L.ring.maximal_ideal(), j) for j in range(s + 1)]
    m_T = [x.extend_to(T) for x in m_powers]
    n_T = [x.extend_to(T) for x in n_powers]
    K_T = [K[i].extend_to(T) for i in range(s + 1)]
    L_T = [L[t].extend_to(T) for t in range(s + 1)]

    left = ideal_sum((K_T[i] * n_T[s - i] for i in range(s + 1)), T)
    right = ideal_sum((L_T[t] * m_T[s - t] for t in range(s + 1)), T)
    lhs = left & right

    rhs = ideal_sum(
        (
            (K[i] & m_powers[s - t]).extend_to(T) * (L[t] & n_powers[s - i]).extend_to(T)
            for i in range(s + 1)
            for t in range(s + 1)
        ),
        T,
    )
    return lhs, rhs


def G_chain(inst, s):
    """G_0 = H^s ⊆ G_1 ⊆ ... ⊆ G_s = F^s with H = I + mn.

    ``G_t = G_(t-1) + (mn)^(s-t) J^t``.

    :rtype: list of MonomialIdeal
    """
    if s < 1:
        raise DomainError(f"G_chain needs s >= 1, got {s}")

    mn = inst.m * inst.n
    chain = [power(inst.I_T + mn, s)]
    for t in range(1, s + 1):
        chain.append(chain[-1] + power(mn, s - t) * power(inst.J_T, t))
    return chain


def associated_primes_or_zero(ideal, *, budget=None):
    """Associated primes, with Ass(0) = {(0)}."""
    if ideal.is_zero:
        return frozenset([MonomialPrime(ideal.ring, frozenset())])
    return associated_primes(ideal, budget=budget)


def fiber_prime_prediction(inst, which="ass", *, budget=None):
    """{p1 + n : p1 ∈ X(I)} ∪ {p2 + m : p2 ∈ X(J)} for X = Ass or Min.

    :param which: ``ass`` or ``min``
    :rtype: frozenset of MonomialPrime
    """
    collect = associated_primes_or_zero if which == "ass" else minimal_primes
    n_names = inst.S.variables
    m_names = inst.R.variables

    predicted = set()
    for prime in collect(inst.I, budget=budget):
        predicted.add(MonomialPrime.from_names(inst.T, prime.names + n_names))
    for prime in collect(inst.J, budget=budget):
        predicted.add(MonomialPrime.from_names(inst.T, m_names + prime.names))
    return frozenset(predicted)


def reg_maximal_times(ideal, maximal, k, p, *, cache=None, budget=None, time_budget=None):
    """reg(m^k M) = max(reg M, reg(M / m^k M) + 1) for a monomial ideal M.

    M / m^k M has finite length, so its regularity is the largest degree of a
    monomial of M outside m^k M. Only M itself goes through a Betti table.

    :param ideal: the ideal M
    :type ideal: MonomialIdeal
    :param maximal: the graded maximal ideal of M's ring
    :type maximal: MonomialIdeal
    :param k: the power of the maximal ideal, k ≥ 0
    :type k: int
    :param p: the characteristic
    :type p: FieldChar or int
    :rtype: int or float
    """
    if ideal.is_zero:
        return NEG_INF
    reg = reg_structured(ideal, p, cache=cache, budget=budget, time_budget=time_budget)
    if k == 0:
        return reg
    if k == 1:
        # M / mM is spanned by the minimal generators
        return max(reg, max_gen_degree(ideal) + 1)
    top = finite_colength_top_degree(ideal, power(maximal, k) * ideal, bound=k)
    return max(reg, top + 1)


def reg_power_terms(inst, s, p, mode="ordinary", *, cache=None, budgets=None):
    """The shifted regularities whose maximum predicts reg F^s or reg F^(s).

    For ``ordinary`` these are reg(m^(s-i) I^i) + s - i and reg(n^(s-i) J^i) + s - i;
    for the symbolic modes ``ass`` and ``min`` they are reg I^(i) + s - i and
    reg J^(i) + s - i, all for 1 ≤ i ≤ s. Zero factors contribute nothing.

    :param inst: the instance
    :type inst: FiberInstance
    :param s: the exponent, s ≥ 1
    :type s: int
    :param p: the characteristic
    :type p: FieldChar or int
    :param mode: ``ordinary``, ``ass`` or ``min``
    :type mode: str or SymbolicMode
    :param cache: optional Betti cache
    :type cache: BettiCache
    :param budgets: resource limits (default: the configured budgets)
    :type budgets: Budgets
    :return: ``{(side, i): value}`` with side ``I`` or ``J``
    :rtype: dict
    :raises DomainError: for s < 1
    :raises ValueError: on an unknown mode
    """
    budgets = DEFAULT_BUDGETS if budgets is None else budgets
    mode = str(mode)
    if mode not in PREDICTION_MODES:
        raise ValueError(f"unknown mode '{mode}', expected one of {PREDICTION_MODES}")
    if s < 1:
        raise DomainError(f"the regularity formula needs s >= 1, got {s}")

    limits = {
        "cache": cache,
        "budget": budgets.closure_budget,
        "time_budget": budgets.time_budget,
    }
    terms = {}
    for side, ideal, maximal in (("I", inst.I, inst.m_R), ("J", inst.J, inst.n_S)):
        if ideal.is_zero:
            continue
        for i in range(1, s + 1):
            if mode == "ordinary":
                reg = reg_maximal_times(power(ideal, i), maximal, s - i, p, **limits)
            else:
                symbolic = symbolic_power_or_zero(
                    ideal, i, SymbolicMode(mode), budget=budgets.component_budget
                )
                reg = reg_structured(symbolic, p, **limits)
            terms[(side, i)] = reg + s - i

    syslog.debug("regularity terms for s=%d (%s): %s", s, mode, terms)
    return terms


def reg_power_prediction(inst, s, p, mode="ordinary", *, cache=None, budgets=None):
    """max(2s, terms) for the terms of :func:`reg_power_terms`.

    With I ⊆ m^2 and J ⊆ n^2 this is reg F^s for ``ordinary``; with depth R/I and
    depth S/J positive it is reg F^(s) for ``ass``. None of it touches F itself,
    so the value is available long before a Betti table of F^s would be.

    :rtype: int
    """
    terms = reg_power_terms(inst, s, p, mode, cache=cache, budgets=budgets)
    return max([2 * s, *terms.values()])
