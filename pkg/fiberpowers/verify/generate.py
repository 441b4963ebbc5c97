"""
.. module:: fiberpowers.verify.generate
    :synopsis: Deterministic random fiber product instances.

Instance ``index`` of a configuration is drawn from its own generator seeded with
``(seed, index)``, so any single instance can be rebuilt without replaying the
stream before it. Worker processes rely on this.
"""
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from fiberpowers.algebra.decompose import is_unmixed
from fiberpowers.algebra.fiber import make_fiber
from fiberpowers.algebra.resolution import as_field_char
from fiberpowers.algebra.ring import MonomialIdeal, Ring
from fiberpowers.config.config_files import (
    DEFAULT_BUDGETS,
    DEFAULT_CHARS,
    DEFAULT_INSTANCES,
    DEFAULT_S_MAX,
    DEFAULT_SEED,
)
from fiberpowers.errors import FiberPowersError, GenerationError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
STRUCTURES = ("random", "squarefree", "equigenerated", "unmixed", "primary", "zero")

R_PREFIX = "x"
S_PREFIX = "y"

# chance that a "random" generator is allowed to have degree 1
LINEAR_GENERATOR_RATE = 0.1


# ========== Classes ==========
@dataclass(frozen=True)
class GeneratorConfig:
    """Bounds and structure of a generated corpus.

    :param nvars: largest number of variables per factor ring
    :param max_degree: largest degree of a generator
    :param max_gens: largest number of generators drawn per ideal
    :param structure: one of ``STRUCTURES``
    :param s_max: the checks run for s = 1..s_max
    :param chars: characteristics every check is run in
    :param seed: the corpus seed
    :param instances: length of the stream
    :param retry_budget: candidates drawn for one ideal before giving up
    """

    nvars: int = 4
    max_degree: int = 5
    max_gens: int = 6
    structure: str = "random"
    s_max: int = DEFAULT_S_MAX
    chars: tuple = field(default_factory=lambda: tuple(DEFAULT_CHARS))
    seed: int = DEFAULT_SEED
    instances: int = DEFAULT_INSTANCES
    retry_budget: int = DEFAULT_BUDGETS.retry_budget

    def __post_init__(self):
        object.__setattr__(self, "chars", tuple(self.chars))

        for name in ("nvars", "max_degree", "max_gens", "s_max", "retry_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.instances < 0:
            raise ValueError("instances must not be negative")
        if self.max_degree < 2:
            raise ValueError("max_degree must be at least 2")
        if self.structure not in STRUCTURES:
            raise ValueError(f"unknown structure '{self.structure}', expected one of {STRUCTURES}")
        if self.structure == "squarefree" and self.nvars < 2:
            raise ValueError("squarefree ideals inside m^2 need at least 2 variables")
        if not self.chars:
            raise ValueError("at least one characteristic is needed")
        for p in self.chars:
            as_field_char(p)

    def with_structure(self, structure):
        return replace(self, structure=structure)


# ========== Functions ==========
def _rng(config, index, factor):
    return np.random.default_rng([config.seed, index, factor])


def _ring(rng, config, prefix, minimum=1):
    nvars = int(rng.integers(min(minimum, config.nvars), config.nvars + 1))
    return Ring([f"{prefix}{i + 1}" for i in range(nvars)])


def _exponents_of_degree(rng, nvars, degree):
    return tuple(int(e) for e in rng.multinomial(degree, [1 / nvars] * nvars))


def _random_gens(rng, ring, config, *, degree=None, min_degree=2):
    count = int(rng.integers(1, config.max_gens + 1))
    gens = []
    for _ in range(count):
        d = degree if degree is not None else int(rng.integers(min_degree, config.max_degree + 1))
        gens.append(_exponents_of_degree(rng, ring.nvars, d))
    return gens


def _squarefree_gens(rng, ring, config):
    largest = min(ring.nvars, config.max_degree)
    count = int(rng.integers(1, config.max_gens + 1))
    gens = []
    for _ in range(count):
        size = int(rng.integers(2, largest + 1))
        chosen = rng.choice(ring.nvars, size=size, replace=False)
        gens.append(tuple(1 if i in chosen else 0 for i in range(ring.nvars)))
    return gens


def _primary_gens(rng, ring, config):
    size = int(rng.integers(1, ring.nvars + 1))
    chosen = sorted(int(i) for i in rng.choice(ring.nvars, size=size, replace=False))

    gens = []
    for i in chosen:
        exponents = [0] * ring.nvars
        exponents[i] = int(rng.integers(2, config.max_degree + 1))
        gens.append(tuple(exponents))

    extra = int(rng.integers(0, max(1, config.max_gens - size) + 1))
    for _ in range(extra):
        d = int(rng.integers(2, config.max_degree + 1))
        draw = rng.multinomial(d, [1 / size] * size)
        exponents = [0] * ring.nvars
        for i, e in zip(chosen, draw):
            exponents[i] = int(e)
        gens.append(tuple(exponents))
    return gens


def _candidate(rng, ring, config, structure):
    if structure == "zero":
        return MonomialIdeal.zero(ring)
    if structure == "squarefree":
        return MonomialIdeal(ring, _squarefree_gens(rng, ring, config))
    if structure == "equigenerated":
        degree = int(rng.integers(2, config.max_degree + 1))
        return MonomialIdeal(ring, _random_gens(rng, ring, config, degree=degree))
    if structure == "primary":
        return MonomialIdeal(ring, _primary_gens(rng, ring, config))

    min_degree = 1 if rng.random() < LINEAR_GENERATOR_RATE else 2
    return MonomialIdeal(ring, _random_gens(rng, ring, config, min_degree=min_degree))


def _accept(ideal, structure):
    if structure == "unmixed":
        try:
            return is_unmixed(ideal)
        except FiberPowersError:
            return False
    return True


def random_factor(config, index, factor, prefix):
    """Draw one factor ring and ideal of instance ``index``.

    :param config: the corpus configuration
    :type config: GeneratorConfig
    :param index: position of the instance in the stream
    :type index: int
    :param factor: 0 for the first factor, 1 for the second
    :type factor: int
    :param prefix: prefix of the variable names
    :type prefix: str
    :return: the ring and the ideal
    :rtype: tuple
    :raises GenerationError: if no candidate is accepted within the retry budget
    """
    rng = _rng(config, index, factor)
    minimum = 2 if config.structure == "squarefree" else 1

    for _ in range(config.retry_budget):
        ring = _ring(rng, config, prefix, minimum)
        ideal = _candidate(rng, ring, config, config.structure)
        if _accept(ideal, config.structure):
            return ring, ideal

    raise GenerationError(
        f"no {config.structure} ideal found for instance {index} "
        f"within {config.retry_budget} candidates"
    )


def generate_instance(config, index):
    """Instance number ``index`` of the stream described by config.

    :rtype: FiberInstance
    :raises GenerationError: if a factor cannot be generated
    """
    R, I = random_factor(config, index, 0, R_PREFIX)
    S, J = random_factor(config, index, 1, S_PREFIX)
    return make_fiber(R, I, S, J, label=f"{config.structure}#{index}")


def generate_instances(config):
    """Yield the instances of a corpus, in order.

    :param config: the corpus configuration
    :type config: GeneratorConfig
    :rtype: iterator of FiberInstance
    """
    syslog.debug(
        "Generating %d %s instances with seed %d", config.instances, config.structure, config.seed
    )
    for index in range(config.instances):
        yield generate_instance(config, index)
