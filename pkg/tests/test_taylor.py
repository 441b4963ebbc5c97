"""
Tests for the fiberpowers.algebra.taylor module.
"""
import unittest

from hypothesis import given, settings
from hypothesis.strategies import sampled_from

from fiberpowers.algebra.resolution import betti_table
from fiberpowers.algebra.ring import MonomialIdeal, Ring, power
from fiberpowers.algebra.taylor import MAX_TAYLOR_GENERATORS, taylor_betti_table
from fiberpowers.errors import ResourceError
from tests.strategies import ideals

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.algebra"
TESTING_MODULE = f"{TESTING_PACKAGE}.taylor"

PRIMES = (2, 3, 101)


# ========== Tests ==========
class TestTaylorBettiTable(unittest.TestCase):
    def setUp(self):
        self.R = Ring(["x", "y", "z"])

    def test_triangle(self):
        triangle = MonomialIdeal(self.R, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])
        table = taylor_betti_table(triangle, 2)

        self.assertEqual(table.entries[(1, (1, 1, 1))], 2)
        self.assertNotIn((2, (1, 1, 1)), table.entries)

    def test_complete_intersection_is_taylor_minimal(self):
        ideal = MonomialIdeal(self.R, [(2, 0, 0), (0, 3, 0)])
        table = taylor_betti_table(ideal, 3)
        self.assertEqual(
            table.entries, {(0, (2, 0, 0)): 1, (0, (0, 3, 0)): 1, (1, (2, 3, 0)): 1}
        )

    def test_zero_ideal(self):
        self.assertTrue(taylor_betti_table(MonomialIdeal.zero(self.R), 2).is_empty)

    def test_too_many_generators(self):
        ideal = power(Ring(["x", "y"]).maximal_ideal(), MAX_TAYLOR_GENERATORS)
        with self.assertRaises(ResourceError):
            taylor_betti_table(ideal, 2)

    @settings(max_examples=75)
    @given(ideals(), sampled_from(PRIMES))
    def test_agrees_with_koszul(self, ideal, p):
        self.assertEqual(taylor_betti_table(ideal, p), betti_table(ideal, p))
