"""
.. module:: fiberpowers.lang.evaluate
    :synopsis: Evaluate parsed programs with the algebra kernels.

Values are monomial ideals, integers (``-inf`` for the regularity of the zero
ideal), Betti tables, sets of primes and decompositions. Kernel errors raised
while evaluating a node are re-raised as
:class:`~fiberpowers.errors.EvaluationError` carrying that node's source text.
"""
import logging

from fiberpowers.algebra.decompose import (
    associated_primes,
    irreducible_decomposition,
    minimal_primes,
)
from fiberpowers.algebra.fiber import make_fiber
from fiberpowers.algebra.resolution import as_field_char, betti_table, invariants
from fiberpowers.algebra.ring import MonomialIdeal, Ring, combine, power, radical
from fiberpowers.algebra.symbolic import SymbolicMode, symbolic_power
from fiberpowers.config.config_files import DEFAULT_BUDGETS
from fiberpowers.errors import EvaluationError, FiberPowersError, StructuralError
from fiberpowers.lang.parser import BinaryOp, IdealLiteral, IntLiteral, Mode, Name, PowerOp

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
OPERATORS = {"+": "sum", "*": "product", "&": "intersect", ":": "colon"}
BLOCK_PREFIX = "b"


# ========== Functions ==========
def program_ring(program):
    """The ring declared by a program, one block per ``|``-separated group."""
    blocks = [(f"{BLOCK_PREFIX}{i}", names) for i, names in enumerate(program.ring.blocks)]
    return Ring(program.ring.variables, blocks)


def fiber_of(ring, first, second):
    """I + J + m·n for an ideal of the first block and one of the second.

    :raises StructuralError: unless the ring has exactly two blocks and each
        ideal lives in its own block
    """
    if len(ring.blocks) != 2:
        raise StructuralError("fiber() needs a ring with exactly two blocks, e.g. [x y | u v]")

    R, S = ring.subring(0), ring.subring(1)
    I, J = first.restrict_to(R), second.restrict_to(S)
    if I.extend_to(ring) != first:
        raise StructuralError(f"{first} is not an ideal of the first block")
    if J.extend_to(ring) != second:
        raise StructuralError(f"{second} is not an ideal of the second block")

    return make_fiber(R, I, S, J).F.extend_to(ring)


class Evaluator:
    """Walks the syntax tree of one program.

    :param ring: the program's ring
    :type ring: Ring
    :param char: characteristic for the homological calls
    :type char: FieldChar
    """

    def __init__(self, ring, char, *, cache=None, budgets=DEFAULT_BUDGETS):
        self.ring = ring
        self.char = char
        self.cache = cache
        self.budgets = budgets
        self.env = {}

    def ideal(self, node):
        value = self.value(node)
        if not isinstance(value, MonomialIdeal):
            found = type(value).__name__
            raise EvaluationError(node.text, TypeError(f"expected an ideal, got {found}"))
        return value

    def value(self, node):
        if isinstance(node, Name):
            return self.env[node.name]
        if isinstance(node, IdealLiteral):
            return MonomialIdeal(self.ring, [self.ring.monomial(dict(m)) for m in node.monomials])

        # operands are evaluated outside the try so their errors keep their own text
        if isinstance(node, BinaryOp):
            operands = (self.ideal(node.left), self.ideal(node.right))
        elif isinstance(node, PowerOp):
            operands = (self.ideal(node.base),)
        else:
            operands = tuple(
                arg.value if isinstance(arg, (IntLiteral, Mode)) else self.ideal(arg)
                for arg in node.args
            )

        try:
            return self.apply(node, operands)
        except FiberPowersError as e:
            if isinstance(e, EvaluationError):
                raise
            raise EvaluationError(node.text, e) from e

    def apply(self, node, operands):
        if isinstance(node, BinaryOp):
            return combine(*operands, OPERATORS[node.op])
        if isinstance(node, PowerOp):
            return power(operands[0], node.exponent)
        return self.call(node, operands)

    def call(self, node, args):
        component_budget = self.budgets.component_budget
        func = node.func

        if func == "rad":
            return radical(args[0])
        if func == "pow":
            return power(*args)
        if func == "symb":
            mode = SymbolicMode(args[2]) if len(args) > 2 else SymbolicMode.ASS
            return symbolic_power(args[0], args[1], mode, budget=component_budget)
        if func == "msymb":
            return symbolic_power(args[0], args[1], SymbolicMode.MIN, budget=component_budget)
        if func == "fiber":
            return fiber_of(self.ring, *args)
        if func == "betti":
            return betti_table(
                args[0], self.char, cache=self.cache, budget=self.budgets.closure_budget
            )
        if func in ("reg", "depth"):
            report = invariants(
                args[0], self.char, cache=self.cache, budget=self.budgets.closure_budget
            )
            return report.reg_ideal if func == "reg" else report.depth_quotient
        if func == "ass":
            return associated_primes(args[0], budget=component_budget)
        if func == "min":
            return minimal_primes(args[0], budget=component_budget)
        if func == "decomp":
            return irreducible_decomposition(args[0], budget=component_budget)

        raise EvaluationError(node.text, ValueError(f"unknown function '{func}'"))

    def run(self, program):
        for binding in program.bindings:
            self.env[binding.name] = self.value(binding.expr)
            syslog.debug("%s = %s", binding.name, self.env[binding.name])
        return self.value(program.expr)


def evaluate(program, char, *, cache=None, budgets=DEFAULT_BUDGETS):
    """Evaluate the final expression of a program.

    >>> from fiberpowers.lang.parser import parse_program
    >>> str(evaluate(parse_program("ring T=[x | y]; fiber((x^2), (y^2))"), 2))
    '(x^2, x*y, y^2)'

    :param program: a parsed program
    :type program: Program
    :param char: characteristic used by ``reg``, ``depth`` and ``betti``
    :type char: FieldChar or int
    :param cache: optional Betti cache
    :type cache: BettiCache
    :param budgets: resource limits for the kernels
    :type budgets: Budgets
    :return: an ideal, an integer, a Betti table, a set of primes or a decomposition
    :raises EvaluationError: wrapping the kernel error and the failing expression
    """
    char = as_field_char(char)
    return Evaluator(program_ring(program), char, cache=cache, budgets=budgets).run(program)
