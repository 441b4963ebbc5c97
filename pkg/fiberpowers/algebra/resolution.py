"""
.. module:: fiberpowers.algebra.resolution
    :synopsis: Graded Betti tables over prime fields and the invariants derived from them.

Betti numbers are computed one multidegree at a time from the upper Koszul
simplicial complex

    K^a = {S ⊆ supp(a) : x^(a - S) ∈ A},    β_{i,a}(A) = dim H̃_{i-1}(K^a; GF(p)).

**Implementation Details**

* Candidate multidegrees are the lcm-closure of the minimal generators; Betti
  numbers vanish off that lattice. Enumerating the whole exponent box is kept as a
  debug mode.
* The facets of K^a are ``supp(a) \\ tight(g)`` for the generators g dividing a,
  where ``tight(g) = {j : g_j = a_j}``. They are computed for whole blocks of
  multidegrees at once as bitmasks; full simplices and cones are acyclic and are
  discarded before any homology is computed.
* Homology ranks come from Gaussian elimination over GF(p) (see
  :mod:`fiberpowers.algebra.linalg`), never from Smith normal forms.
* An optional time budget is checked between closure steps and between
  complexes; a single complex is never interrupted
"""
import itertools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import sympy

from fiberpowers.algebra.linalg import MAX_PRIME, rank_mod_p
from fiberpowers.algebra.ring import (
    CHUNK_ELEMENTS,
    EXPONENT_DTYPE,
    NEG_INF,
    Monomial,
    MonomialIdeal,
    canonical_order,
    combine,
    divisible_mask,
    is_power_of_variables,
    max_gen_degree,
    membership,
)
from fiberpowers.config.config_files import DEFAULT_BUDGETS
from fiberpowers.errors import DomainError, ResourceError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
ENGINE_VERSION = "1"

METHODS = ("koszul", "structured", "taylor-oracle")
ENUMERATIONS = ("closure", "box")

# mixed-radix keys must stay below this to fit in int64
KEY_LIMIT = 2**62

# below this many complexes a worker pool costs more than it saves
POOL_THRESHOLD = 2048


# ========== Classes ==========
@dataclass(frozen=True)
class FieldChar:
    """The characteristic of a prime field GF(p)."""

    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise DomainError(f"characteristic must be an integer, got {self.p!r}")
        if not sympy.isprime(self.p):
            raise DomainError(f"characteristic {self.p} is not prime")
        if self.p > MAX_PRIME:
            raise DomainError(f"characteristic {self.p} exceeds {MAX_PRIME}")

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class BettiTable:
    """Multigraded Betti numbers of an ideal over GF(p).

    ``entries`` maps ``(i, multidegree)`` to a positive rank. The table describes
    the ideal; quotient invariants are derived through the usual shift
    ``β_{i+1}(R/I) = β_i(I)``.
    """

    ring: object
    char: FieldChar
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {
            (int(i), tuple(int(e) for e in a)): int(rank)
            for (i, a), rank in self.entries.items()
            if rank
        }
        object.__setattr__(self, "entries", dict(sorted(cleaned.items(), key=_entry_key)))

    def __len__(self):
        return len(self.entries)

    @property
    def is_empty(self):
        return not self.entries

    @property
    def pd_ideal(self):
        """Projective dimension of the ideal; ``-inf`` for the zero ideal."""
        if self.is_empty:
            return NEG_INF
        return max(i for i, _ in self.entries)

    @property
    def pd_quotient(self):
        return 0 if self.is_empty else self.pd_ideal + 1

    @property
    def depth_quotient(self):
        """depth(R/I) by Auslander-Buchsbaum."""
        return self.ring.nvars - self.pd_quotient

    @property
    def reg_ideal(self):
        if self.is_empty:
            return NEG_INF
        return max(sum(a) - i for i, a in self.entries)

    @property
    def reg_quotient(self):
        return 0 if self.is_empty else self.reg_ideal - 1

    def generators(self):
        """Multidegrees in homological degree 0, in canonical order."""
        rows = [a for (i, a) in self.entries if i == 0]
        if not rows:
            return ()
        ordered = canonical_order(np.array(rows, dtype=EXPONENT_DTYPE))
        return tuple(tuple(int(e) for e in row) for row in ordered)

    def total_degrees(self):
        """Collapse to β_{i,j} with j the total degree."""
        totals = {}
        for (i, a), rank in self.entries.items():
            totals[(i, sum(a))] = totals.get((i, sum(a)), 0) + rank
        return dict(sorted(totals.items()))

    def records(self):
        """Plain data: a list of ``{"i", "multidegree", "rank"}`` dictionaries."""
        return [
            {"i": i, "multidegree": list(a), "rank": rank}
            for (i, a), rank in self.entries.items()
        ]

    @classmethod
    def from_records(cls, ring, char, records):
        return cls(
            ring,
            char,
            {(r["i"], tuple(r["multidegree"])): r["rank"] for r in records},
        )


@dataclass(frozen=True)
class InvariantReport:
    """Homological invariants of an ideal A and its quotient R/A.

    :param depth_quotient: depth(R/A)
    :param pd: projective dimension of R/A
    :param reg_ideal: reg(A), ``-inf`` for the zero ideal
    :param reg_quotient: reg(R/A)
    :param d: largest degree of a minimal generator
    :param char: the characteristic used
    :param method: ``koszul``, ``structured`` or ``taylor-oracle``
    :param stable_symbolic_depth: optional symbolic depth scan
    """

    depth_quotient: int
    pd: int
    reg_ideal: object
    reg_quotient: int
    d: object
    char: int
    method: str
    stable_symbolic_depth: object = None

    def as_dict(self):
        data = {
            "depth_quotient": self.depth_quotient,
            "pd": self.pd,
            "reg_ideal": self.reg_ideal,
            "reg_quotient": self.reg_quotient,
            "d": self.d,
            "char": self.char,
            "method": self.method,
        }
        if self.stable_symbolic_depth is not None:
            scan = self.stable_symbolic_depth
            data["stable_symbolic_depth"] = {
                "value": scan.value,
                "depths": list(scan.depths),
                "s_range": list(scan.s_range),
                "stable": scan.stable,
            }
        return data


# ========== Helpers ==========
def _entry_key(item):
    (i, a), _ = item
    return (i, sum(a), tuple(-e for e in a))


def as_field_char(p):
    """Accept a :class:`FieldChar` or a plain integer."""
    return p if isinstance(p, FieldChar) else FieldChar(int(p))


def _deadline(time_budget):
    """Wall-clock deadline for a budget in seconds, shared with worker processes."""
    return None if time_budget is None else time.time() + time_budget


def _check_deadline(deadline, what):
    if deadline is not None and time.time() > deadline:
        raise ResourceError(f"{what} exceeded the time budget")


def _radix_weights(upper):
    """Mixed-radix weights for points bounded by upper, or None if keys overflow."""
    radix = [int(u) + 1 for u in upper]
    if math.prod(radix) >= KEY_LIMIT:
        return None
    weights = [1]
    for r in radix[:-1]:
        weights.append(weights[-1] * r)
    return np.array(weights, dtype=np.int64)


def _decode(keys, upper):
    radix = np.asarray(upper, dtype=np.int64) + 1
    rows = np.empty((keys.shape[0], radix.shape[0]), dtype=EXPONENT_DTYPE)
    rest = keys.copy()
    for j, r in enumerate(radix):
        rows[:, j] = rest % r
        rest //= r
    return rows


def _lcm_closure_keys(gens, weights, upper, budget, deadline):
    closure = np.unique(gens @ weights)
    frontier = _decode(closure, upper)
    step = max(1, CHUNK_ELEMENTS // max(1, gens.shape[0] * gens.shape[1]))

    while frontier.shape[0]:
        fresh = []
        for start in range(0, frontier.shape[0], step):
            _check_deadline(deadline, "lcm-closure")
            chunk = frontier[start : start + step]
            lcms = np.maximum(chunk[:, None, :], gens[None, :, :])
            keys = np.unique(lcms.reshape(-1, gens.shape[1]) @ weights)
            fresh.append(keys[~np.isin(keys, closure, assume_unique=True)])

        new_keys = np.unique(np.concatenate(fresh)) if fresh else np.empty(0, np.int64)
        closure = np.union1d(closure, new_keys)
        if closure.shape[0] > budget:
            raise ResourceError(f"lcm-closure exceeded the budget of {budget} multidegrees")
        frontier = _decode(new_keys, upper)

    return _decode(closure, upper)


def _lcm_closure_tuples(gens, budget, deadline):
    closure = {tuple(row) for row in gens.tolist()}
    frontier = list(closure)
    gen_list = gens.tolist()

    while frontier:
        fresh = set()
        _check_deadline(deadline, "lcm-closure")
        for point in frontier:
            for g in gen_list:
                candidate = tuple(max(a, b) for a, b in zip(point, g))
                if candidate not in closure:
                    fresh.add(candidate)
        closure |= fresh
        if len(closure) > budget:
            raise ResourceError(f"lcm-closure exceeded the budget of {budget} multidegrees")
        frontier = list(fresh)

    return np.array(sorted(closure), dtype=EXPONENT_DTYPE).reshape(len(closure), gens.shape[1])


# ========== Functions ==========
def lcm_closure(ideal, *, budget=None, deadline=None):
    """All lcms of non-empty sets of minimal generators.

    Computed as a fixpoint: the newest points are joined with every generator
    until nothing new appears.

    :param ideal: the ideal
    :type ideal: MonomialIdeal
    :param budget: maximum closure size (default: the configured closure budget)
    :type budget: int
    :param deadline: wall-clock time (``time.time()``) after which to give up
    :type deadline: float
    :return: the closure in canonical order, shape (N, nvars)
    :rtype: ``numpy.ndarray``
    :raises ResourceError: when the closure outgrows the budget or the deadline passes
    """
    budget = DEFAULT_BUDGETS.closure_budget if budget is None else budget
    gens = ideal.matrix
    if not gens.shape[0]:
        return gens

    upper = gens.max(axis=0)
    weights = _radix_weights(upper)
    if weights is None:
        syslog.debug("lcm-closure: radix keys overflow, using tuple sets")
        points = _lcm_closure_tuples(gens, budget, deadline)
    else:
        points = _lcm_closure_keys(gens, weights, upper, budget, deadline)

    syslog.debug("lcm-closure of %d generators: %d multidegrees", len(ideal), points.shape[0])
    return canonical_order(points)


def box_points(ideal, *, budget=None):
    """Debug enumeration: every point of the exponent box that is an lcm of generators."""
    budget = DEFAULT_BUDGETS.closure_budget if budget is None else budget
    gens = ideal.matrix
    upper = gens.max(axis=0)
    if math.prod(int(u) + 1 for u in upper) > budget:
        raise ResourceError(f"exponent box exceeds the budget of {budget} points")

    grid = np.array(
        list(itertools.product(*(range(int(u) + 1) for u in upper))), dtype=EXPONENT_DTYPE
    ).reshape(-1, gens.shape[1])

    keep = np.zeros(grid.shape[0], dtype=bool)
    step = max(1, CHUNK_ELEMENTS // max(1, gens.shape[0] * gens.shape[1]))
    for start in range(0, grid.shape[0], step):
        chunk = grid[start : start + step]
        divides = np.all(gens[None, :, :] <= chunk[:, None, :], axis=2)
        joined = np.where(divides[:, :, None], gens[None, :, :], 0).max(axis=1)
        keep[start : start + step] = divides.any(axis=1) & np.all(joined == chunk, axis=1)

    return canonical_order(grid[keep])


def _faces(facets):
    faces = set()
    for facet in facets:
        subset = facet
        while True:
            faces.add(subset)
            if subset == 0:
                break
            subset = (subset - 1) & facet
    return faces


def _boundary(upper_faces, lower_index):
    matrix = np.zeros((len(lower_index), len(upper_faces)), dtype=np.int64)
    for col, face in enumerate(upper_faces):
        bits = [b for b in range(face.bit_length()) if face >> b & 1]
        for position, bit in enumerate(bits):
            matrix[lower_index[face & ~(1 << bit)], col] = -1 if position % 2 else 1
    return matrix


def reduced_homology(facets, p):
    """Reduced homology ranks of the simplicial complex spanned by facets.

    :param facets: facets as vertex bitmasks
    :type facets: iterable of int
    :param p: the field characteristic
    :type p: int
    :return: ``{k: dim H̃_k}`` for the non-zero ranks, k ≥ -1
    :rtype: dict
    """
    by_dimension = {}
    for face in _faces(facets):
        by_dimension.setdefault(bin(face).count("1") - 1, []).append(face)
    if not by_dimension:
        return {}

    for faces in by_dimension.values():
        faces.sort()

    top = max(by_dimension)
    ranks = {}
    for k in range(0, top + 1):
        lower = by_dimension.get(k - 1, [])
        lower_index = {face: row for row, face in enumerate(lower)}
        ranks[k] = rank_mod_p(_boundary(by_dimension.get(k, []), lower_index), p)

    homology = {}
    for k in range(-1, top + 1):
        dim = len(by_dimension.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if dim:
            homology[k] = dim
    return homology


def _homology_job(args):
    facet_lists, p, deadline = args
    homologies = []
    for facets in facet_lists:
        _check_deadline(deadline, "Betti computation")
        homologies.append(reduced_homology(facets, p))
    return homologies


def _classify(points, gens):
    """Facet bitmasks per point, with acyclic points flagged.

    :return: (divides, facet bits, acyclic mask)
    """
    nvars = gens.shape[1]
    bit_weights = np.left_shift(np.int64(1), np.arange(nvars, dtype=np.int64))

    divides = np.all(gens[None, :, :] <= points[:, None, :], axis=2)
    bits = ((gens[None, :, :] < points[:, None, :]) * bit_weights).sum(axis=2)
    support = ((points > 0) * bit_weights).sum(axis=1)

    full = np.any(divides & (bits == support[:, None]), axis=1) & (support != 0)
    all_ones = np.int64((1 << nvars) - 1)
    common = np.bitwise_and.reduce(np.where(divides, bits, all_ones), axis=1)
    cone = common != 0

    return divides, bits, full | cone


def _maximal(masks):
    masks = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    kept = []
    for mask in masks:
        if not any(mask & other == mask for other in kept):
            kept.append(mask)
    return kept


def _compute_betti(ideal, char, *, budget, workers, enumeration, deadline=None):
    if enumeration not in ENUMERATIONS:
        raise ValueError(f"unknown enumeration '{enumeration}', expected one of {ENUMERATIONS}")

    gens = ideal.matrix
    points = (
        lcm_closure(ideal, budget=budget, deadline=deadline)
        if enumeration == "closure"
        else box_points(ideal, budget=budget)
    )

    pending_points = []
    pending_facets = []
    step = max(1, CHUNK_ELEMENTS // max(1, gens.shape[0] * gens.shape[1]))
    for start in range(0, points.shape[0], step):
        _check_deadline(deadline, "Betti computation")
        chunk = points[start : start + step]
        divides, bits, acyclic = _classify(chunk, gens)
        for row in np.flatnonzero(~acyclic):
            pending_points.append(tuple(int(e) for e in chunk[row]))
            pending_facets.append(_maximal(int(b) for b in bits[row][divides[row]]))

    syslog.debug(
        "betti: %d multidegrees, %d need homology over %s",
        points.shape[0],
        len(pending_points),
        char,
    )

    if workers > 1 and len(pending_facets) >= POOL_THRESHOLD:
        size = -(-len(pending_facets) // (workers * 4))
        jobs = [
            (pending_facets[i : i + size], char.p, deadline)
            for i in range(0, len(pending_facets), size)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            homologies = [h for part in pool.map(_homology_job, jobs) for h in part]
    else:
        homologies = _homology_job((pending_facets, char.p, deadline))

    entries = {}
    for point, homology in zip(pending_points, homologies):
        for k, rank in homology.items():
            entries[(k + 1, point)] = rank

    return BettiTable(ideal.ring, char, entries)


def betti_table(
    ideal, p, *, cache=None, budget=None, workers=1, enumeration="closure", time_budget=None
):
    """Multigraded Betti numbers of a monomial ideal over GF(p).

    :param ideal: the ideal; the zero ideal gives an empty table
    :type ideal: MonomialIdeal
    :param p: the characteristic
    :type p: FieldChar or int
    :param cache: a store offering ``get_or_compute(ideal, char, compute)``
        (default: no caching)
    :type cache: BettiCache
    :param budget: maximum number of candidate multidegrees
    :type budget: int
    :param workers: processes used for the homology computations (default: 1)
    :type workers: int
    :param enumeration: ``closure`` or the ``box`` debug mode
    :type enumeration: str
    :param time_budget: seconds allowed (default: no limit)
    :type time_budget: int
    :rtype: BettiTable
    :raises ResourceError: when the candidate set outgrows the budget or time runs out
    """
    char = as_field_char(p)
    if ideal.is_zero:
        return BettiTable(ideal.ring, char, {})

    def compute():
        return _compute_betti(
            ideal,
            char,
            budget=budget,
            workers=workers,
            enumeration=enumeration,
            deadline=_deadline(time_budget),
        )

    if cache is not None and enumeration == "closure":
        return cache.get_or_compute(ideal, char, compute)
    return compute()


def split_product(ideal):
    """Find ideals B, C in disjoint variable sets with ideal = B·C.

    :return: the pair (B, C) or ``None`` when no such factorization exists
    :rtype: tuple or None
    """
    support = sorted(ideal.support())
    if len(support) < 2 or len(ideal) < 1:
        return None

    first, others = support[0], support[1:]
    for size in range(len(others)):
        for combo in itertools.combinations(others, size):
            left_vars = (first,) + combo
            right_vars = [v for v in others if v not in combo]
            left = ideal.erase(left_vars)
            right = ideal.erase(right_vars)
            if len(left) * len(right) == len(ideal) and left * right == ideal:
                return left, right
    return None


def _structured(ideal, char, cache, budget, time_budget=None):
    """(reg, pd) of a non-zero ideal through factorizations, else Betti numbers."""
    s = is_power_of_variables(ideal)
    if s is not None:
        return s, len(ideal.support()) - 1

    factors = split_product(ideal)
    if factors is not None:
        left, right = factors
        reg_left, pd_left = _structured(left, char, cache, budget, time_budget)
        reg_right, pd_right = _structured(right, char, cache, budget, time_budget)
        syslog.debug(
            "structured: split %d generators as %d x %d", len(ideal), len(left), len(right)
        )
        return reg_left + reg_right, pd_left + pd_right

    table = betti_table(ideal, char, cache=cache, budget=budget, time_budget=time_budget)
    return table.reg_ideal, table.pd_ideal


def reg_structured(ideal, p, *, cache=None, budget=None, time_budget=None):
    """Regularity through the cheapest applicable route.

    Block-disjoint products add regularities, a power P^s of a prime generated by
    variables has regularity s, and everything else falls back to
    :func:`betti_table`.

    :param ideal: the ideal
    :type ideal: MonomialIdeal
    :param p: the characteristic
    :type p: FieldChar or int
    :rtype: int or float
    """
    if ideal.is_zero:
        return NEG_INF
    return _structured(ideal, as_field_char(p), cache, budget, time_budget)[0]


def invariants(
    ideal, p, *, method="koszul", cache=None, budget=None, workers=1, time_budget=None
):
    """depth, pd and regularity of a proper ideal and its quotient.

    :param ideal: a proper monomial ideal
    :type ideal: MonomialIdeal
    :param p: the characteristic
    :type p: FieldChar or int
    :param method: ``koszul``, ``structured`` or ``taylor-oracle``
    :type method: str
    :param time_budget: seconds allowed for the Betti table (default: no limit)
    :type time_budget: int
    :rtype: InvariantReport
    :raises DomainError: for the unit ideal
    :raises ValueError: on an unknown method
    """
    char = as_field_char(p)
    if method not in METHODS:
        raise ValueError(f"unknown method '{method}', expected one of {METHODS}")
    if ideal.is_unit:
        raise DomainError("invariants are defined for proper ideals only")

    nvars = ideal.ring.nvars
    if ideal.is_zero:
        return InvariantReport(nvars, 0, NEG_INF, 0, NEG_INF, char.p, method)

    if method == "structured":
        reg, pd_ideal = _structured(ideal, char, cache, budget, time_budget)
    else:
        if method == "koszul":
            table = betti_table(
                ideal,
                char,
                cache=cache,
                budget=budget,
                workers=workers,
                time_budget=time_budget,
            )
        else:
            from fiberpowers.algebra.taylor import taylor_betti_table

            table = taylor_betti_table(ideal, char)
        reg, pd_ideal = table.reg_ideal, table.pd_ideal

    return InvariantReport(
        depth_quotient=nvars - (pd_ideal + 1),
        pd=pd_ideal + 1,
        reg_ideal=reg,
        reg_quotient=reg - 1,
        d=max_gen_degree(ideal),
        char=char.p,
        method=method,
    )


def socle_test(ideal):
    """A monomial of (A : p) outside A, where p is the graded maximal ideal.

    Such a witness exists exactly when depth(R/A) = 0.

    :param ideal: a proper monomial ideal
    :type ideal: MonomialIdeal
    :rtype: Monomial or None
    :raises DomainError: for the unit ideal
    """
    if ideal.is_unit:
        raise DomainError("the socle test needs a proper ideal")

    colon = combine(ideal, ideal.ring.maximal_ideal(), "colon")
    for gen in colon.gens:
        monomial = Monomial(ideal.ring, gen)
        if not membership(monomial, ideal):
            return monomial
    return None


def _finite_length_exponent(outer, inner, bound):
    """Smallest N ≤ bound with p^N·outer ⊆ inner, or None."""
    maximal = outer.ring.maximal_ideal()
    outside = outer
    for n in range(bound + 1):
        rows = outside.matrix
        rows = rows[~_contained_rows(rows, inner)]
        if not rows.shape[0]:
            return n
        outside = MonomialIdeal.from_rows(outer.ring, rows) * maximal
    return None


def _contained_rows(rows, ideal):
    return divisible_mask(rows, ideal.matrix)


def finite_colength_top_degree(outer, inner, *, bound=None):
    """Largest degree of a monomial in outer but not in inner.

    For a finite-length quotient outer/inner this is its regularity.

    :param outer: the larger ideal A
    :type outer: MonomialIdeal
    :param inner: the smaller ideal B ⊆ A
    :type inner: MonomialIdeal
    :param bound: largest N tried when certifying p^N·A ⊆ B (default: the
        configured search bound)
    :type bound: int
    :return: the top degree, ``-inf`` when A = B
    :rtype: int or float
    :raises DomainError: if B ⊄ A
    :raises ResourceError: if finite length is not certified within the bound
    """
    bound = DEFAULT_BUDGETS.colength_search_bound if bound is None else bound
    if not inner.issubset(outer):
        raise DomainError("finite colength scan needs B ⊆ A")
    if outer == inner:
        return NEG_INF

    exponent = _finite_length_exponent(outer, inner, bound)
    if exponent is None:
        raise ResourceError(f"A/B is not certified to have finite length within N <= {bound}")
    syslog.debug("finite length certified with N=%d", exponent)

    ring = outer.ring
    start = outer.matrix[~_contained_rows(outer.matrix, inner)]
    seen = {tuple(row) for row in start.tolist()}
    frontier = list(seen)
    top = max(sum(row) for row in frontier)

    while frontier:
        candidates = []
        for row in frontier:
            for j in range(ring.nvars):
                step = list(row)
                step[j] += 1
                step = tuple(step)
                if step not in seen:
                    seen.add(step)
                    candidates.append(step)
        if not candidates:
            break
        array = np.array(candidates, dtype=EXPONENT_DTYPE)
        outside = array[~_contained_rows(array, inner)]
        frontier = [tuple(row) for row in outside.tolist()]
        if frontier:
            top = max(top, max(sum(row) for row in frontier))

    return top
