"""
Tests for the fiberpowers.lang.evaluate module.
"""
import tempfile
import unittest

from fiberpowers.algebra.resolution import betti_table
from fiberpowers.algebra.ring import NEG_INF, MonomialIdeal
from fiberpowers.errors import DomainError, EvaluationError, StructuralError
from fiberpowers.lang.evaluate import evaluate, program_ring
from fiberpowers.lang.parser import parse_program
from fiberpowers.struct.cache import BettiCache

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.lang"
TESTING_MODULE = f"{TESTING_PACKAGE}.evaluate"

TRIANGLE = "ring R = [x y z];\nI = (x*y, x*z, y*z);\n"


# ========== Functions ==========
def run(source, p=2, **kwargs):
    return evaluate(parse_program(source), p, **kwargs)


# ========== Tests ==========
class TestProgramRing(unittest.TestCase):
    def test_blocks(self):
        ring = program_ring(parse_program("ring T = [x y | u]; (x)"))
        self.assertEqual(ring.block_names, ("b0", "b1"))
        self.assertEqual(ring.variables, ("x", "y", "u"))


class TestEvaluate(unittest.TestCase):
    def test_literals(self):
        self.assertTrue(run("ring R = [x]; (1)").is_unit)
        self.assertTrue(run("ring R = [x]; (0)").is_zero)

    def test_operators(self):
        self.assertEqual(str(run("ring R = [x y]; (x^2, x*y) : (x)")), "(x, y)")
        self.assertEqual(str(run("ring R = [x y]; (x^2, x*y) & (y)")), "(x*y)")
        self.assertEqual(str(run("ring R = [x y]; ((x) + (y))^2")), "(x^2, x*y, y^2)")
        self.assertEqual(str(run("ring R = [x y]; (x) * (y)")), "(x*y)")

    def test_fiber(self):
        result = run("ring T = [x | y]; fiber((x^2), (y^2))")
        self.assertEqual(str(result), "(x^2, x*y, y^2)")

    def test_invariants(self):
        self.assertEqual(run(TRIANGLE + "reg(I)"), 2)
        self.assertEqual(run(TRIANGLE + "depth(I)"), 1)
        self.assertEqual(run("ring R = [x]; reg((0))"), NEG_INF)

    def test_symbolic_powers(self):
        second = run(TRIANGLE + "symb(I, 2)")
        self.assertIn(second.ring.monomial({"x": 1, "y": 1, "z": 1}), second)

        self.assertEqual(str(run("ring R = [x y]; msymb((x^2, x*y), 1)")), "(x)")
        self.assertEqual(str(run("ring R = [x y]; symb((x^2, x*y), 1, min)")), "(x)")
        self.assertEqual(str(run("ring R = [x y]; symb((x^2, x*y), 1)")), "(x^2, x*y)")

    def test_structure_calls(self):
        self.assertEqual(str(run("ring R = [x y]; rad((x^2, x*y^3))")), "(x)")
        self.assertEqual(
            {str(p) for p in run(TRIANGLE + "ass(I)")}, {"(x, y)", "(x, z)", "(y, z)"}
        )
        self.assertEqual({str(p) for p in run("ring R = [x y]; min((x^2, x*y))")}, {"(x)"})
        components = [str(c) for c, _ in run("ring R = [x y]; decomp((x^2, x*y))")]
        self.assertEqual(components, ["(x)", "(y, x^2)"])

    def test_betti(self):
        table = run(TRIANGLE + "betti(I)", 3)
        ideal = MonomialIdeal(table.ring, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])
        self.assertEqual(table, betti_table(ideal, 3))

    def test_betti_through_cache(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            cache = BettiCache(tmpdir)
            first = run(TRIANGLE + "betti(I)", cache=cache)
            second = run(TRIANGLE + "betti(I)", cache=cache)
            self.assertGreaterEqual(len(cache), 1)
        self.assertEqual(first, second)


class TestEvaluationErrors(unittest.TestCase):
    def test_kernel_error_carries_expression(self):
        with self.assertRaises(EvaluationError) as cm:
            run("ring R = [x];\nI = (0);\nsymb(I, 2)")

        self.assertEqual(cm.exception.expression, "symb(I, 2)")
        self.assertIsInstance(cm.exception.cause, DomainError)

    def test_innermost_expression_is_reported(self):
        with self.assertRaises(EvaluationError) as cm:
            run("ring R = [x]; pow(symb((1), 2), 2)")
        self.assertEqual(cm.exception.expression, "symb((1), 2)")

    def test_fiber_needs_two_blocks(self):
        with self.assertRaises(EvaluationError) as cm:
            run("ring R = [x y]; fiber((x^2), (y^2))")
        self.assertIsInstance(cm.exception.cause, StructuralError)

    def test_fiber_ideals_must_live_in_their_blocks(self):
        with self.assertRaises(EvaluationError) as cm:
            run("ring T = [x | y]; fiber((x*y), (y^2))")
        self.assertIsInstance(cm.exception.cause, StructuralError)
