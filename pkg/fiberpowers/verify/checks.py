"""
.. module:: fiberpowers.verify.checks
    :synopsis: The catalogue of executable claims about fiber products.

Every check evaluates both sides of a stated identity (or inequality) on one
instance, one exponent s and one characteristic p. A failing check carries a
witness: the claim, the two sides as ideal text or integers, and enough of the
instance to rebuild it with the kernel alone.

**Implementation Details**

* Regularities are taken on the ideal side, reg(A) = reg(R/A) + 1, with
  reg(0) = ``-inf``; a maximum over terms that all vanish is therefore ``-inf``
* Checks whose hypotheses fail report ``hypothesis-not-met`` instead of passing
* Budget overruns in the kernels report ``resource-exceeded``
* Formula values computed from the factors alone are kept in ``values``, so
  they survive a direct computation that runs out of budget
"""
import enum
import logging
import time
from dataclasses import dataclass

from fiberpowers.algebra.decompose import (
    MonomialPrime,
    dimension,
    is_unmixed,
    minimal_primes,
    unmixed_part,
)
from fiberpowers.algebra.fiber import (
    Filtration,
    G_chain,
    U_ideal,
    associated_primes_or_zero,
    fiber_prime_prediction,
    filtration_intersect,
    plus_power,
    reg_power_terms,
)
from fiberpowers.algebra.resolution import (
    as_field_char,
    finite_colength_top_degree,
    invariants,
    socle_test,
)
from fiberpowers.algebra.ring import (
    NEG_INF,
    MonomialIdeal,
    Monomial,
    ideal_sum,
    max_gen_degree,
    power,
    radical,
)
from fiberpowers.algebra.symbolic import (
    SymbolicMode,
    binomial_symbolic_power,
    monomial_localization,
    saturate_localization,
    symbolic_power_by_components,
    symbolic_power_or_zero,
)
from fiberpowers.config.config_files import DEFAULT_BUDGETS
from fiberpowers.errors import ExponentOverflowError, ResourceError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)


# ========== Classes ==========
class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"
    RESOURCE_EXCEEDED = "resource-exceeded"

    def __str__(self):
        return self.value


class CheckID(enum.Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    C7 = "C7"
    C8 = "C8"
    C9 = "C9"
    C10 = "C10"
    C11 = "C11"
    C12 = "C12"
    C13 = "C13"
    C14 = "C14"
    C15 = "C15"
    C16 = "C16"
    C17 = "C17"
    C18 = "C18"
    C19 = "C19"
    C20 = "C20"
    C21 = "C21"
    C22 = "C22"
    C23 = "C23"
    C24 = "C24"
    C25 = "C25"

    def __str__(self):
        return self.value

    @property
    def number(self):
        return int(self.value[1:])

    @property
    def anchor(self):
        return CATALOGUE[self].anchor

    @property
    def claim(self):
        return CATALOGUE[self].claim

    @property
    def uses_s(self):
        """Does the claim depend on s? Claims that do not are only run for s = 1."""
        return CATALOGUE[self].uses_s

    @classmethod
    def parse(cls, text):
        """Parse ``all`` or a comma separated list such as ``C1,C15``.

        :rtype: tuple of CheckID
        :raises ValueError: on an unknown identifier
        """
        text = text.strip()
        if text.lower() == "all":
            return tuple(cls)
        ids = []
        for item in text.split(","):
            item = item.strip().upper()
            if item:
                ids.append(cls(item))
        return tuple(sorted(set(ids), key=lambda c: c.number))


@dataclass(frozen=True)
class CheckSpec:
    anchor: str
    claim: str
    uses_s: bool
    runner: object


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check on one (instance, s, p).

    :param check: which claim was checked
    :param instance: description of the instance
    :param s: the exponent
    :param char: the characteristic
    :param status: the outcome
    :param witness: on failure, the violated claim and its two sides
    :param detail: free text (number of sub-claims, the reason a hypothesis failed ...)
    :param wall_time: seconds spent
    :param index: position of the instance in its corpus, when known
    :param values: named quantities computed on the way, such as a formula value
    """

    check: CheckID
    instance: str
    s: int
    char: int
    status: Status
    witness: dict = None
    detail: str = ""
    wall_time: float = 0.0
    index: int = -1
    values: dict = None

    @property
    def failed(self):
        return self.status is Status.FAIL

    def sort_key(self):
        return (self.index, self.check.number, self.s, self.char)

    def as_dict(self):
        return {
            "check": str(self.check),
            "instance": self.instance,
            "index": self.index,
            "s": self.s,
            "char": self.char,
            "status": str(self.status),
            "witness": self.witness,
            "detail": self.detail,
            "wall_time": round(self.wall_time, 6),
            "values": self.values,
        }


class HypothesisNotMet(Exception):
    """Raised inside a check when the instance does not satisfy its hypotheses."""


class Verdict:
    """Collects the sub-claims of a check and keeps the first violated one."""

    def __init__(self):
        self.checked = 0
        self.witness = None
        self.values = {}

    @property
    def ok(self):
        return self.witness is None

    def _record(self, claim, holds, lhs, rhs):
        self.checked += 1
        if not holds and self.witness is None:
            self.witness = {"claim": claim, "lhs": _plain(lhs), "rhs": _plain(rhs)}

    def equal(self, claim, lhs, rhs):
        self._record(claim, lhs == rhs, lhs, rhs)

    def subset(self, claim, smaller, larger):
        self._record(claim, smaller.issubset(larger), smaller, larger)

    def not_subset(self, claim, smaller, larger):
        self._record(claim, not smaller.issubset(larger), smaller, larger)

    def at_least(self, claim, value, bound):
        self._record(claim, value >= bound, value, bound)

    def holds(self, claim, condition, lhs=None, rhs=None):
        self._record(claim, bool(condition), lhs, rhs)

    def note(self, name, value):
        self.values[name] = _plain(value)


class CheckContext:
    """Memoized kernel results for one instance and one characteristic.

    Checks on the same instance share powers, symbolic powers and Betti tables
    through this object.
    """

    def __init__(self, inst, p, *, budgets=DEFAULT_BUDGETS, cache=None):
        """Default constructor for the CheckContext class.

        :param inst: the instance
        :type inst: FiberInstance
        :param p: the characteristic
        :type p: FieldChar or int
        :param budgets: resource limits for the kernels
        :type budgets: Budgets
        :param cache: optional Betti cache
        :type cache: BettiCache
        """
        self.inst = inst
        self.char = as_field_char(p)
        self.budgets = budgets
        self.cache = cache
        self._reports = {}
        self._powers = {}
        self._symbolic = {}
        self._dimensions = {}
        self._terms = {}

    def report(self, ideal):
        if ideal not in self._reports:
            self._reports[ideal] = invariants(
                ideal,
                self.char,
                cache=self.cache,
                budget=self.budgets.closure_budget,
                time_budget=self.budgets.time_budget,
            )
        return self._reports[ideal]

    def reg(self, ideal):
        """reg of the ideal, ``-inf`` for the zero ideal."""
        return self.report(ideal).reg_ideal

    def depth(self, ideal):
        """depth of the quotient by the ideal."""
        return self.report(ideal).depth_quotient

    def power(self, ideal, s):
        key = (ideal, s)
        if key not in self._powers:
            self._powers[key] = power(ideal, s)
        return self._powers[key]

    def symbolic(self, ideal, s, mode=SymbolicMode.ASS):
        """Symbolic power, with zero powers for the zero ideal."""
        key = (ideal, s, SymbolicMode(mode))
        if key not in self._symbolic:
            self._symbolic[key] = symbolic_power_or_zero(
                ideal, s, mode, budget=self.budgets.component_budget
            )
        return self._symbolic[key]

    def dim(self, ideal):
        if ideal not in self._dimensions:
            self._dimensions[ideal] = dimension(ideal, budget=self.budgets.component_budget)
        return self._dimensions[ideal]

    def unmixed(self, ideal):
        """Is the ideal non-zero and unmixed?"""
        return not ideal.is_zero and is_unmixed(ideal, budget=self.budgets.component_budget)

    def unmixed_part(self, ideal):
        if ideal.is_zero:
            return ideal
        return unmixed_part(ideal, budget=self.budgets.component_budget)[0]

    def factors(self):
        """The two sides of the instance as (ideal of the factor ring, its maximal
        ideal, the ideal in T, the other block's maximal ideal in T, label)."""
        inst = self.inst
        return (
            (inst.I, inst.m_R, inst.I_T, inst.n, "I"),
            (inst.J, inst.n_S, inst.J_T, inst.m, "J"),
        )

    def min_depth(self):
        return min(self.depth(self.inst.I), self.depth(self.inst.J))

    def reg_terms(self, s, mode="ordinary"):
        """Shifted factor regularities of :func:`reg_power_terms`, memoized."""
        key = (s, str(mode))
        if key not in self._terms:
            self._terms[key] = reg_power_terms(
                self.inst, s, self.char, mode, cache=self.cache, budgets=self.budgets
            )
        return self._terms[key]


# ========== Functions ==========
def _plain(value):
    """Witness values as JSON-friendly text or integers."""
    if isinstance(value, (MonomialIdeal, Monomial)):
        return str(value)
    if isinstance(value, float) and value == NEG_INF:
        return "-inf"
    if isinstance(value, (frozenset, set)):
        return sorted(str(item) for item in value)
    return value


def _require(condition, reason):
    if not condition:
        raise HypothesisNotMet(reason)


def _require_squares(ctx):
    _require(ctx.inst.in_squares, "needs I ⊆ m^2 and J ⊆ n^2")


def _shifted_max(terms, s, *extra):
    """max(extra ∪ {terms[i] + s - i : 1 ≤ i ≤ s}); ``terms`` is indexed from 1."""
    return max([*extra, *(terms[i] + s - i for i in range(1, s + 1))])


# ----- Decomposition and tensor identities -----
def check_intersection(ctx, s, verdict):
    inst = ctx.inst
    verdict.equal("I ∩ J = IJ in T", inst.I_T & inst.J_T, inst.I_T * inst.J_T)


def check_tensor_regularity(ctx, s, verdict):
    inst = ctx.inst
    verdict.equal(
        "reg T/(I+J) = reg R/I + reg S/J",
        ctx.report(inst.I_T + inst.J_T).reg_quotient,
        ctx.report(inst.I).reg_quotient + ctx.report(inst.J).reg_quotient,
    )
    verdict.equal(
        "reg IJ = reg I + reg J",
        ctx.reg(inst.I_T * inst.J_T),
        ctx.reg(inst.I) + ctx.reg(inst.J),
    )


def check_maximal_times_module(ctx, s, verdict):
    applied = False
    for ideal, maximal, _, _, label in ctx.factors():
        if ideal.is_zero or not ideal.is_equigenerated:
            continue
        applied = True
        verdict.equal(
            f"reg(m^s {label}) = max(reg {label}, s + d({label}))",
            ctx.reg(ctx.power(maximal, s) * ideal),
            max(ctx.reg(ideal), s + max_gen_degree(ideal)),
        )
    _require(applied, "needs a non-zero equigenerated factor")


def check_symbolic_by_components(ctx, s, verdict):
    applied = False
    for ideal, _, _, _, label in ctx.factors():
        if ideal.is_zero:
            continue
        applied = True
        ideal_s = ctx.power(ideal, s)
        for prime in associated_primes_or_zero(ideal, budget=ctx.budgets.component_budget):
            verdict.equal(
                f"localization of {label}^s at {prime} equals its saturation",
                monomial_localization(ideal_s, prime),
                saturate_localization(ideal_s, prime),
            )
        if ctx.unmixed(ideal):
            verdict.equal(
                f"{label}^(s) = ∩ Q^(s) over the primary components of {label}",
                ctx.symbolic(ideal, s),
                symbolic_power_by_components(ideal, s, budget=ctx.budgets.component_budget),
            )
    _require(applied, "needs a non-zero factor")


def check_binomial_expansion(ctx, s, verdict):
    inst = ctx.inst
    _require(not inst.I.is_zero and not inst.J.is_zero, "needs non-zero I and J")
    verdict.equal(
        "(I+J)^(s) = Σ I^(i) J^(s-i)",
        ctx.symbolic(inst.I_T + inst.J_T, s),
        binomial_symbolic_power(
            inst.I, inst.J, s, inst.T, budget=ctx.budgets.component_budget
        ),
    )


def check_positive_depth_symbolic(ctx, s, verdict):
    applied = False
    for ideal, _, _, _, label in ctx.factors():
        if ideal.is_zero:
            continue
        applied = True
        if ctx.depth(ideal) == 0:
            verdict.equal(
                f"{label}^(s) = {label}^s when depth R/{label} = 0",
                ctx.symbolic(ideal, s),
                ctx.power(ideal, s),
            )
        else:
            verdict.at_least(
                f"depth R/{label}^(s) >= 1 when depth R/{label} >= 1",
                ctx.depth(ctx.symbolic(ideal, s)),
                1,
            )
    _require(applied, "needs a non-zero factor")


def check_fiber_decomposition(ctx, s, verdict):
    _require_squares(ctx)
    inst = ctx.inst
    verdict.equal("F = (I+n) ∩ (J+m)", inst.F, (inst.I_T + inst.n) & (inst.J_T + inst.m))
    verdict.equal(
        "depth T/F = min(1, depth R/I, depth S/J)",
        ctx.depth(inst.F),
        min(1, ctx.depth(inst.I), ctx.depth(inst.J)),
    )

    reg_i, reg_j = ctx.reg(inst.I), ctx.reg(inst.J)
    verdict.equal("reg F = max(2, reg I, reg J)", ctx.reg(inst.F), max(2, reg_i, reg_j))
    if not (inst.I.is_zero and inst.J.is_zero):
        verdict.equal("reg F = max(reg I, reg J)", ctx.reg(inst.F), max(reg_i, reg_j))


def check_ordinary_power_decomposition(ctx, s, verdict):
    inst = ctx.inst
    mn = inst.m * inst.n
    F_s = ctx.power(inst.F, s)
    verdict.equal(
        "F^s = I^s + J^s + mn F^(s-1)",
        F_s,
        ctx.power(inst.I_T, s) + ctx.power(inst.J_T, s) + mn * ctx.power(inst.F, s - 1),
    )
    expanded = ideal_sum(
        (
            ctx.power(mn, j) * (ctx.power(inst.I_T, s - j) + ctx.power(inst.J_T, s - j))
            for j in range(s + 1)
        ),
        inst.T,
    )
    verdict.equal("F^s = Σ (mn)^j (I^(s-j) + J^(s-j))", F_s, expanded)


def check_plus_ordinary(ctx, s, verdict):
    for ideal, _, _, _, label in ctx.factors():
        base = plus_power(ctx.inst, s, label)
        powers = {i: ctx.power(ideal, i) for i in range(1, s + 1)}
        verdict.equal(
            f"depth T/({label}+n)^s = min depth R/{label}^i",
            ctx.depth(base),
            min(ctx.depth(powers[i]) for i in powers),
        )
        verdict.equal(
            f"reg T/({label}+n)^s = max reg R/{label}^i + s - i",
            ctx.report(base).reg_quotient,
            _shifted_max({i: ctx.report(powers[i]).reg_quotient for i in powers}, s),
        )


def check_plus_symbolic(ctx, s, verdict):
    for ideal, _, ideal_T, other, label in ctx.factors():
        base = ctx.symbolic(ideal_T + other, s)
        powers = {i: ctx.symbolic(ideal, i) for i in range(1, s + 1)}
        verdict.equal(
            f"depth T/({label}+n)^(s) = min depth R/{label}^(i)",
            ctx.depth(base),
            min(ctx.depth(powers[i]) for i in powers),
        )
        verdict.equal(
            f"reg T/({label}+n)^(s) = max reg R/{label}^(i) + s - i",
            ctx.report(base).reg_quotient,
            _shifted_max({i: ctx.report(powers[i]).reg_quotient for i in powers}, s),
        )


def check_symbolic_fiber_decomposition(ctx, s, verdict):
    _require_squares(ctx)
    inst = ctx.inst
    F_s = ctx.symbolic(inst.F, s)

    if ctx.min_depth() >= 1:
        verdict.equal(
            "F^(s) = (I+n)^(s) ∩ (J+m)^(s)",
            F_s,
            ctx.symbolic(inst.I_T + inst.n, s) & ctx.symbolic(inst.J_T + inst.m, s),
        )
        if not inst.I.is_zero and not inst.J.is_zero:
            verdict.equal(
                "F^(s) = U_s with binomial symbolic powers",
                F_s,
                U_ideal(inst, s, "symbolic", budget=ctx.budgets.component_budget),
            )
    else:
        verdict.equal("F^(s) = F^s when min depth = 0", F_s, ctx.power(inst.F, s))


def _symbolic_filtrations(ctx, s, mode=SymbolicMode.ASS):
    inst = ctx.inst
    budget = ctx.budgets.component_budget
    return (
        Filtration.symbolic(inst.I, s + 1, mode, budget=budget),
        Filtration.symbolic(inst.J, s + 1, mode, budget=budget),
    )


def check_symbolic_fiber_as_sum(ctx, s, verdict):
    _require_squares(ctx)
    _require(ctx.min_depth() >= 1, "needs depth R/I, depth S/J >= 1")
    K, L = _symbolic_filtrations(ctx, s)
    _, rhs = filtration_intersect(K, L, s)
    verdict.equal(
        "F^(s) = Σ (I^(i) ∩ m^(s-t))(J^(t) ∩ n^(s-i))", ctx.symbolic(ctx.inst.F, s), rhs
    )


def check_fiber_primes(ctx, s, verdict):
    _require_squares(ctx)
    inst = ctx.inst
    budget = ctx.budgets.component_budget

    verdict.equal(
        "Ass F = {P1 + n} ∪ {P2 + m}",
        associated_primes_or_zero(inst.F, budget=budget),
        fiber_prime_prediction(inst, "ass", budget=budget),
    )

    actual = minimal_primes(inst.F, budget=budget)
    predicted = fiber_prime_prediction(inst, "min", budget=budget)
    verdict.holds("Min F ⊆ {P1 + n} ∪ {P2 + m}", actual <= predicted, actual, predicted)

    dim_i, dim_j = ctx.dim(inst.I), ctx.dim(inst.J)
    if dim_i > 0 and dim_j > 0:
        verdict.equal("Min F = {P1 + n} ∪ {P2 + m} in positive dimension", actual, predicted)
    if dim_i == 0:
        expected = frozenset(
            MonomialPrime.from_names(inst.T, inst.R.variables + p.names)
            for p in minimal_primes(inst.J, budget=budget)
        )
        verdict.equal("Min F = {P2 + m} when dim R/I = 0", actual, expected)
    if dim_j == 0:
        expected = frozenset(
            MonomialPrime.from_names(inst.T, p.names + inst.S.variables)
            for p in minimal_primes(inst.I, budget=budget)
        )
        verdict.equal("Min F = {P1 + n} when dim S/J = 0", actual, expected)


def check_filtration_intersection(ctx, s, verdict):
    inst = ctx.inst
    pairs = (
        ("powers", Filtration.ordinary(inst.I, s + 1), Filtration.ordinary(inst.J, s + 1)),
        ("symbolic powers", *_symbolic_filtrations(ctx, s)),
    )
    for name, K, L in pairs:
        lhs, rhs = filtration_intersect(K, L, s)
        verdict.equal(f"intersection formula for {name}", lhs, rhs)

    lhs, rhs = filtration_intersect(
        Filtration.maximal(inst.R, s + 1), Filtration.maximal(inst.S, s + 1), s
    )
    collapsed = ideal_sum(
        (ctx.power(inst.m, i) * ctx.power(inst.n, s - i) for i in range(s + 1)), inst.T
    )
    verdict.equal("maximal ideal filtrations: lhs = Σ m^i n^(s-i)", lhs, collapsed)
    verdict.equal("maximal ideal filtrations: rhs = Σ m^i n^(s-i)", rhs, collapsed)


# ----- Symbolic powers: depth and regularity -----
def _symbolic_reg_terms(ctx, ideal, s, mode=SymbolicMode.ASS):
    return {i: ctx.reg(ctx.symbolic(ideal, i, mode)) for i in range(1, s + 1)}


def check_symbolic_depth_reg(ctx, s, verdict):
    _require_squares(ctx)
    _require(ctx.min_depth() >= 1, "needs depth R/I, depth S/J >= 1")
    predicted = max([2 * s, *ctx.reg_terms(s, SymbolicMode.ASS).values()])
    verdict.note("reg F^(s) formula", predicted)
    F_s = ctx.symbolic(ctx.inst.F, s)

    verdict.equal("depth T/F^(s) = 1", ctx.depth(F_s), 1)
    verdict.equal(
        "reg F^(s) = max(2s, reg I^(i) + s - i, reg J^(i) + s - i)", ctx.reg(F_s), predicted
    )


def check_degree_2s_generator(ctx, s, verdict):
    inst = ctx.inst
    _require(
        ctx.dim(inst.I) > 0 and ctx.dim(inst.J) > 0, "needs dim R/I > 0 and dim S/J > 0"
    )
    K, L = _symbolic_filtrations(ctx, s)
    W_s, _ = filtration_intersect(K, L, s)
    target = ctx.power(inst.m, s) * ctx.power(inst.n, s)

    verdict.not_subset("m^s n^s ⊄ p W_s", target, inst.p * W_s)
    verdict.holds(
        "W_s has a minimal generator of degree 2s", 2 * s in W_s.degrees, W_s, 2 * s
    )


def check_symbolic_reg_unmixed(ctx, s, verdict):
    _require_squares(ctx)
    _require(ctx.min_depth() >= 1, "needs depth R/I, depth S/J >= 1")
    inst = ctx.inst
    _require(ctx.unmixed(inst.I) or ctx.unmixed(inst.J), "needs a non-zero unmixed factor")

    verdict.equal(
        "reg F^(s) = max(reg I^(i) + s - i, reg J^(i) + s - i)",
        ctx.reg(ctx.symbolic(inst.F, s)),
        max(
            _shifted_max(_symbolic_reg_terms(ctx, inst.I, s), s),
            _shifted_max(_symbolic_reg_terms(ctx, inst.J, s), s),
        ),
    )


def check_symbolic_generator_degrees(ctx, s, verdict):
    applied = False
    for ideal, maximal, _, _, label in ctx.factors():
        if not ctx.unmixed(ideal):
            continue
        applied = True
        symbolic = ctx.symbolic(ideal, s)
        root = radical(ideal)

        for gen in root.gens:
            f_s = Monomial(ideal.ring, gen).power(s)
            verdict.holds(
                f"a generator of {label}^(s) is divisible by {f_s}",
                any(f_s.divides(Monomial(ideal.ring, g)) for g in symbolic.gens),
                symbolic,
                f_s,
            )

        if ideal.issubset(ctx.power(maximal, 2)):
            verdict.at_least(
                f"d({label}^(s)) >= max(2, d(sqrt {label})) s",
                max_gen_degree(symbolic),
                max(2, max_gen_degree(root)) * s,
            )
    _require(applied, "needs a non-zero unmixed factor")


def check_zero_depth_case(ctx, s, verdict):
    _require_squares(ctx)
    _require(ctx.min_depth() == 0, "needs min(depth R/I, depth S/J) = 0")
    inst = ctx.inst
    F_s = ctx.symbolic(inst.F, s)

    verdict.equal("F^(s) = F^s", F_s, ctx.power(inst.F, s))
    verdict.equal("depth T/F^(s) = 0", ctx.depth(F_s), 0)
    verdict.equal(
        "reg F^(s) = max(reg(m^(s-i) I^i) + s - i, reg(n^(s-i) J^i) + s - i)",
        ctx.reg(F_s),
        _ordinary_formula(ctx, s),
    )


# ----- Ordinary powers -----
def _mixed_reg_terms(ctx, ideal, maximal, s):
    return {
        i: ctx.reg(ctx.power(maximal, s - i) * ctx.power(ideal, i)) for i in range(1, s + 1)
    }


def _ordinary_formula(ctx, s):
    inst = ctx.inst
    return max(
        _shifted_max(_mixed_reg_terms(ctx, inst.I, inst.m_R, s), s),
        _shifted_max(_mixed_reg_terms(ctx, inst.J, inst.n_S, s), s),
    )


def _power_reg_terms(ctx, ideal, s):
    return {i: ctx.reg(ctx.power(ideal, i)) for i in range(1, s + 1)}


def check_zero_depth_ordinary(ctx, s, verdict):
    _require_squares(ctx)
    inst = ctx.inst
    _require(not (inst.I.is_zero and inst.J.is_zero), "needs I or J non-zero")
    _require(s >= 2, "needs s >= 2")
    F_s = ctx.power(inst.F, s)

    verdict.equal("depth T/F^s = 0", ctx.depth(F_s), 0)
    witness = socle_test(F_s)
    verdict.holds("F^s : p has a monomial outside F^s", witness is not None, F_s, None)

    colon = F_s.colon(inst.p)
    for ideal, _, ideal_T, other, label in ctx.factors():
        if ideal.is_zero:
            continue
        family = ctx.power(ideal_T, s - 1) * other
        verdict.subset(f"{label}^(s-1) n ⊆ F^s : p", family, colon)
        verdict.not_subset(f"{label}^(s-1) n ⊄ F^s", family, F_s)


def check_colon_containments(ctx, s, verdict):
    _require(s >= 2, "needs s >= 2")
    inst = ctx.inst
    F_s = ctx.power(inst.F, s)
    applied = False

    for ideal, maximal, ideal_T, other, label in ctx.factors():
        if not ideal.issubset(ctx.power(maximal, 2)):
            continue
        applied = True
        m_T = inst.m if label == "I" else inst.n
        for i in range(1, s):
            truncated = ctx.power(ideal, i) & ctx.power(maximal, s)
            colon = F_s.colon(ctx.power(other, s - i)).restrict_to(ideal.ring)
            verdict.equal(
                f"(F^s : n^(s-{i})) ∩ ({label}^{i} ∩ m^s) = m^(s-{i}) {label}^{i}",
                colon & truncated,
                ctx.power(maximal, s - i) * ctx.power(ideal, i),
            )

            left = truncated.extend_to(inst.T) * ctx.power(other, s - i) & F_s
            verdict.subset(
                f"({label}^{i} ∩ m^s) n^(s-{i}) ∩ F^s ⊆ (mn)^(s-{i}) F^{i}",
                left,
                ctx.power(inst.m * inst.n, s - i) * ctx.power(inst.F, i),
            )

            if not ideal.is_zero:
                verdict.not_subset(
                    f"{label}^{i} m^(s-{i}-1) n^(s-{i}) ⊄ F^s",
                    ctx.power(ideal_T, i) * ctx.power(m_T, s - i - 1) * ctx.power(other, s - i),
                    F_s,
                )
    _require(applied, "needs I ⊆ m^2 or J ⊆ n^2")


def check_ordinary_reg(ctx, s, verdict):
    _require_squares(ctx)
    inst = ctx.inst
    terms = ctx.reg_terms(s)
    predicted = max([2 * s, *terms.values()])
    verdict.note("reg F^s formula", predicted)
    F_s = ctx.power(inst.F, s)

    chain = G_chain(inst, s)
    verdict.equal("G_s = F^s", chain[-1], F_s)
    mn = inst.m * inst.n
    for t in range(1, s + 1):
        J_t = ctx.power(inst.J_T, t)
        verdict.equal(
            f"G_{t - 1} ∩ (mn)^(s-{t}) J^{t} = m^(s-{t}+1) n^(s-{t}) J^{t}",
            chain[t - 1] & (ctx.power(mn, s - t) * J_t),
            ctx.power(inst.m, s - t + 1) * ctx.power(inst.n, s - t) * J_t,
        )

    # the Betti table of F^s comes last: it is the step that may run out of time
    reg = ctx.reg(F_s)
    verdict.equal(
        "reg F^s = max(2s, reg(m^(s-i) I^i) + s - i, reg(n^(s-i) J^i) + s - i)", reg, predicted
    )
    if terms:
        verdict.equal(
            "reg F^s = max(reg(m^(s-i) I^i) + s - i, reg(n^(s-i) J^i) + s - i)",
            reg,
            max(terms.values()),
        )


def check_U_sandwich(ctx, s, verdict):
    _require_squares(ctx)
    inst = ctx.inst
    F_s = ctx.power(inst.F, s)
    U_s = U_ideal(inst, s)

    _, rhs = filtration_intersect(
        Filtration.ordinary(inst.I, s + 1), Filtration.ordinary(inst.J, s + 1), s
    )
    verdict.equal("U_s = Σ (I^i ∩ m^(s-t))(J^t ∩ n^(s-i))", U_s, rhs)

    reg_i = _power_reg_terms(ctx, inst.I, s)
    reg_j = _power_reg_terms(ctx, inst.J, s)
    powers_max = max(_shifted_max(reg_i, s, 2 * s), _shifted_max(reg_j, s))
    verdict.equal("reg U_s = max(2s, reg I^i + s - i, reg J^i + s - i)", ctx.reg(U_s), powers_max)

    verdict.subset("F^s ⊆ U_s", F_s, U_s)
    verdict.subset("p^(2s-1) U_s ⊆ F^s", ctx.power(inst.p, 2 * s - 1) * U_s, F_s)

    top = finite_colength_top_degree(U_s, F_s, bound=ctx.budgets.colength_search_bound)
    if s >= 2 and not inst.I.is_zero:
        verdict.at_least("reg(U_s/F^s) >= 2s - 1", top, 2 * s - 1)
    verdict.equal(
        "reg F^s = max(reg(U_s/F^s) + 1, 2s, reg I^i + s - i, reg J^i + s - i)",
        ctx.reg(F_s),
        max(top + 1, powers_max),
    )


def check_equigenerated_reg(ctx, s, verdict):
    _require_squares(ctx)
    inst = ctx.inst
    _require(
        not inst.I.is_zero
        and not inst.J.is_zero
        and inst.I.is_equigenerated
        and inst.J.is_equigenerated,
        "needs non-zero equigenerated I and J",
    )
    verdict.equal(
        "reg F^s = max(reg I^i + s - i, reg J^i + s - i)",
        ctx.reg(ctx.power(inst.F, s)),
        max(
            _shifted_max(_power_reg_terms(ctx, inst.I, s), s),
            _shifted_max(_power_reg_terms(ctx, inst.J, s), s),
        ),
    )


# ----- Minimal symbolic powers -----
def check_min_symbolic(ctx, s, verdict):
    _require_squares(ctx)
    inst = ctx.inst
    _require(ctx.dim(inst.I) >= 1 and ctx.dim(inst.J) >= 1, "needs dim R/I, dim S/J >= 1")
    mode = SymbolicMode.MIN

    I_um = ctx.unmixed_part(inst.I).extend_to(inst.T)
    J_um = ctx.unmixed_part(inst.J).extend_to(inst.T)
    F_1 = ctx.symbolic(inst.F, 1, mode)
    verdict.equal("mF^(1) = (I^um + n) ∩ (J^um + m)", F_1, (I_um + inst.n) & (J_um + inst.m))
    verdict.equal("mF^(1) = I^um + J^um + mn", F_1, I_um + J_um + inst.m * inst.n)

    F_s = ctx.symbolic(inst.F, s, mode)
    verdict.equal(
        "mF^(s) = m(I+n)^(s) ∩ m(J+m)^(s)",
        F_s,
        ctx.symbolic(inst.I_T + inst.n, s, mode) & ctx.symbolic(inst.J_T + inst.m, s, mode),
    )
    verdict.equal(
        "mF^(s) = (I^um + n)^(s) ∩ (J^um + m)^(s)",
        F_s,
        ctx.symbolic(I_um + inst.n, s) & ctx.symbolic(J_um + inst.m, s),
    )

    K, L = _symbolic_filtrations(ctx, s, mode)
    _, rhs = filtration_intersect(K, L, s)
    verdict.equal("mF^(s) = Σ (mI^(i) ∩ m^(s-t))(mJ^(t) ∩ n^(s-i))", F_s, rhs)

    verdict.equal("depth T/mF^(s) = 1", ctx.depth(F_s), 1)
    verdict.equal(
        "reg mF^(s) = max(2s, reg mI^(i) + s - i, reg mJ^(i) + s - i)",
        ctx.reg(F_s),
        max(
            _shifted_max(_symbolic_reg_terms(ctx, inst.I, s, mode), s, 2 * s),
            _shifted_max(_symbolic_reg_terms(ctx, inst.J, s, mode), s),
        ),
    )


CATALOGUE = {
    CheckID.C1: CheckSpec("intersection lemma", "I ∩ J = IJ", False, check_intersection),
    CheckID.C2: CheckSpec(
        "tensor regularity lemma", "reg of tensor products adds", False, check_tensor_regularity
    ),
    CheckID.C3: CheckSpec(
        "Eisenbud-Ulrich lemma", "reg(m^s M) = max(reg M, s + d(M))", True,
        check_maximal_times_module,
    ),
    CheckID.C4: CheckSpec(
        "symbolic powers of unmixed ideals", "I^(s) = ∩ Q_j^(s)", True,
        check_symbolic_by_components,
    ),
    CheckID.C5: CheckSpec(
        "binomial formula", "(I+J)^(s) = Σ I^(i) J^(s-i)", True, check_binomial_expansion
    ),
    CheckID.C6: CheckSpec(
        "positive depth of symbolic powers", "I^(s) = I^s or depth R/I^(s) >= 1", True,
        check_positive_depth_symbolic,
    ),
    CheckID.C7: CheckSpec(
        "fiber product decomposition", "F = (I+n) ∩ (J+m) with its depth and reg", False,
        check_fiber_decomposition,
    ),
    CheckID.C8: CheckSpec(
        "ordinary power decomposition", "F^s = I^s + J^s + mn F^(s-1)", True,
        check_ordinary_power_decomposition,
    ),
    CheckID.C9: CheckSpec(
        "depth and reg of (I+n)^s", "depth and reg of T/(I+n)^s", True, check_plus_ordinary
    ),
    CheckID.C10: CheckSpec(
        "depth and reg of (I+n)^(s)", "depth and reg of T/(I+n)^(s)", True, check_plus_symbolic
    ),
    CheckID.C11: CheckSpec(
        "symbolic power decomposition", "F^(s) = (I+n)^(s) ∩ (J+m)^(s)", True,
        check_symbolic_fiber_decomposition,
    ),
    CheckID.C12: CheckSpec(
        "symbolic power as a sum", "F^(s) = Σ (I^(i) ∩ m^(s-t))(J^(t) ∩ n^(s-i))", True,
        check_symbolic_fiber_as_sum,
    ),
    CheckID.C13: CheckSpec(
        "associated and minimal primes of F", "Ass F and Min F from the factors", False,
        check_fiber_primes,
    ),
    CheckID.C14: CheckSpec(
        "intersection formula for filtrations", "filtration intersection formula", True,
        check_filtration_intersection,
    ),
    CheckID.C15: CheckSpec(
        "depth and reg of F^(s), positive depth", "depth T/F^(s) = 1 and reg F^(s)", True,
        check_symbolic_depth_reg,
    ),
    CheckID.C16: CheckSpec(
        "degree 2s generator of W_s", "m^s n^s ⊄ p W_s", True, check_degree_2s_generator
    ),
    CheckID.C17: CheckSpec(
        "reg F^(s), unmixed case", "reg F^(s) without the 2s term", True,
        check_symbolic_reg_unmixed,
    ),
    CheckID.C18: CheckSpec(
        "generator degrees of unmixed symbolic powers", "d(I^(s)) >= max(2, d(sqrt I)) s", True,
        check_symbolic_generator_degrees,
    ),
    CheckID.C19: CheckSpec(
        "depth and reg of F^(s), zero depth", "F^(s) = F^s with depth 0 and reg", True,
        check_zero_depth_case,
    ),
    CheckID.C20: CheckSpec(
        "depth of ordinary powers", "depth T/F^s = 0 for s >= 2", True, check_zero_depth_ordinary
    ),
    CheckID.C21: CheckSpec(
        "colon containments and non-containments",
        "(F^s : n^(s-i)) ∩ (I^i ∩ m^s) = m^(s-i) I^i",
        True, check_colon_containments,
    ),
    CheckID.C22: CheckSpec(
        "reg of ordinary powers", "reg F^s formula", True, check_ordinary_reg
    ),
    CheckID.C23: CheckSpec(
        "U_s lemmas", "U_s decomposition, reg U_s, p^(2s-1) U_s ⊆ F^s ⊆ U_s", True,
        check_U_sandwich,
    ),
    CheckID.C24: CheckSpec(
        "reg F^s, equigenerated case", "reg F^s = max(reg I^i + s - i, reg J^i + s - i)", True,
        check_equigenerated_reg,
    ),
    CheckID.C25: CheckSpec(
        "minimal symbolic powers", "depth T/mF^(s) = 1 and reg mF^(s)", True, check_min_symbolic
    ),
}


def run_check(check, inst, s, p, *, context=None, budgets=DEFAULT_BUDGETS, cache=None, index=-1):
    """Run one check on one instance.

    :param check: the claim to check
    :type check: CheckID
    :param inst: the instance
    :type inst: FiberInstance
    :param s: the exponent, s ≥ 1
    :type s: int
    :param p: the characteristic
    :type p: FieldChar or int
    :param context: shared memo for this instance and characteristic (default: a new one)
    :type context: CheckContext
    :param budgets: resource limits, used when no context is given
    :type budgets: Budgets
    :param cache: Betti cache, used when no context is given
    :type cache: BettiCache
    :param index: position of the instance in its corpus
    :type index: int
    :rtype: CheckReport
    :raises ValueError: if s < 1
    """
    if s < 1:
        raise ValueError(f"checks need s >= 1, got {s}")
    check = CheckID(check)
    ctx = context if context is not None else CheckContext(inst, p, budgets=budgets, cache=cache)

    verdict = Verdict()
    start = time.perf_counter()
    try:
        CATALOGUE[check].runner(ctx, s, verdict)
    except HypothesisNotMet as e:
        status, detail = Status.HYPOTHESIS_NOT_MET, str(e)
    except (ResourceError, ExponentOverflowError) as e:
        syslog.warning("%s on %s (s=%d, p=%d): %s", check, inst, s, ctx.char.p, e)
        status, detail = Status.RESOURCE_EXCEEDED, str(e)
    else:
        status = Status.PASS if verdict.ok else Status.FAIL
        detail = f"{verdict.checked} claims"
    elapsed = time.perf_counter() - start

    witness = None
    if status is Status.FAIL:
        witness = dict(verdict.witness, instance=inst.as_dict(), s=s, char=ctx.char.p)
        syslog.warning(
            "%s failed on %s (s=%d, p=%d): %s", check, inst, s, ctx.char.p, witness["claim"]
        )

    return CheckReport(
        check=check,
        instance=str(inst),
        s=s,
        char=ctx.char.p,
        status=status,
        witness=witness,
        detail=detail,
        wall_time=elapsed,
        index=index,
        values=dict(verdict.values) or None,
    )
