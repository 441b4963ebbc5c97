"""
Hypothesis strategies shared by the test modules.
"""
from hypothesis.strategies import composite, integers, lists, tuples

from fiberpowers.algebra.ring import MonomialIdeal, Ring

# ========== Constants ==========
MAX_VARS = 3
MAX_EXPONENT = 3
MAX_GENS = 4


# ========== Functions ==========
def rings(max_vars=MAX_VARS, prefix="x"):
    return integers(1, max_vars).map(lambda n: Ring([f"{prefix}{i + 1}" for i in range(n)]))


def exponent_vectors(nvars, max_exponent=MAX_EXPONENT, min_degree=0):
    return tuples(*[integers(0, max_exponent)] * nvars).filter(lambda v: sum(v) >= min_degree)


@composite
def ideals(draw, ring=None, *, min_gens=1, max_gens=MAX_GENS, min_degree=1):
    """Non-zero monomial ideals; proper unless ``min_degree`` is 0."""
    ring = draw(rings()) if ring is None else ring
    gens = draw(
        lists(
            exponent_vectors(ring.nvars, min_degree=min_degree),
            min_size=min_gens,
            max_size=max_gens,
        )
    )
    return MonomialIdeal(ring, gens)


@composite
def ideal_pairs(draw, **kwargs):
    """Two ideals of the same ring."""
    ring = draw(rings())
    return draw(ideals(ring, **kwargs)), draw(ideals(ring, **kwargs))


@composite
def squares_ideals(draw, ring=None, *, max_gens=3):
    """Non-zero ideals contained in the square of the maximal ideal."""
    return draw(ideals(ring, max_gens=max_gens, min_degree=2))
