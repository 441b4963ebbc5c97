"""
Tests for the fiberpowers.algebra.resolution module.
"""
import itertools
import unittest
from unittest.mock import patch

from hypothesis import given, settings
from hypothesis.strategies import sampled_from

from fiberpowers.algebra.resolution import (
    BettiTable,
    FieldChar,
    betti_table,
    finite_colength_top_degree,
    invariants,
    lcm_closure,
    reg_structured,
    socle_test,
)
from fiberpowers.algebra.ring import NEG_INF, MonomialIdeal, Ring, power
from fiberpowers.errors import DomainError, ResourceError
from tests.strategies import ideals

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.algebra"
TESTING_MODULE = f"{TESTING_PACKAGE}.resolution"

PRIMES = (2, 3, 101)

# minimal non-faces of the six-vertex triangulation of the real projective plane
RP2_NON_FACES = ("124", "125", "135", "136", "146", "234", "236", "256", "345", "456")


# ========== Functions ==========
def rp2_ideal():
    ring = Ring([f"x{i}" for i in range(1, 7)])
    gens = [tuple(1 if str(i) in face else 0 for i in range(1, 7)) for face in RP2_NON_FACES]
    return MonomialIdeal(ring, gens)


# ========== Tests ==========
class TestFieldChar(unittest.TestCase):
    def test_rejects_non_primes(self):
        for p in (0, 1, 4, 100):
            with self.assertRaises(DomainError):
                FieldChar(p)

    def test_rejects_non_integers(self):
        with self.assertRaises(DomainError):
            FieldChar(True)
        with self.assertRaises(DomainError):
            FieldChar(2.0)

    def test_text(self):
        self.assertEqual(str(FieldChar(101)), "GF(101)")


class TestBettiTable(unittest.TestCase):
    def setUp(self):
        self.R = Ring(["x", "y", "z"])
        self.triangle = MonomialIdeal(self.R, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])

    def test_triangle(self):
        table = betti_table(self.triangle, 2)

        self.assertEqual(
            table.entries,
            {
                (0, (1, 1, 0)): 1,
                (0, (1, 0, 1)): 1,
                (0, (0, 1, 1)): 1,
                (1, (1, 1, 1)): 2,
            },
        )
        self.assertEqual(table.pd_ideal, 1)
        self.assertEqual(table.reg_ideal, 2)
        self.assertEqual(table.depth_quotient, 1)
        self.assertEqual(table.total_degrees(), {(0, 2): 3, (1, 3): 2})
        self.assertEqual(table.generators(), self.triangle.gens)

    def test_zero_ideal_has_empty_table(self):
        table = betti_table(MonomialIdeal.zero(self.R), 2)
        self.assertTrue(table.is_empty)
        self.assertEqual(table.reg_ideal, NEG_INF)
        self.assertEqual(table.depth_quotient, 3)

    def test_records_round_trip(self):
        table = betti_table(self.triangle, 3)
        rebuilt = BettiTable.from_records(self.R, table.char, table.records())
        self.assertEqual(rebuilt, table)

    def test_lcm_closure(self):
        self.assertEqual(lcm_closure(self.triangle).shape, (4, 3))

    def test_closure_budget(self):
        with self.assertRaises(ResourceError):
            betti_table(self.triangle, 2, budget=3)

    def test_time_budget(self):
        with patch(f"{TESTING_MODULE}.time") as mocked_time:
            # the clock jumps past the deadline right after it is set
            mocked_time.time.side_effect = itertools.chain([0.0], itertools.repeat(10.0))
            with self.assertRaisesRegex(ResourceError, "time budget"):
                betti_table(self.triangle, 2, time_budget=1)

    def test_generous_time_budget(self):
        table = betti_table(self.triangle, 2, time_budget=60)
        self.assertEqual(table, betti_table(self.triangle, 2))

    def test_unknown_enumeration(self):
        with self.assertRaises(ValueError):
            betti_table(self.triangle, 2, enumeration="grid")

    def test_characteristic_sensitive_ideal(self):
        ideal = rp2_ideal()

        self.assertEqual(betti_table(ideal, 101).pd_ideal, 2)
        self.assertEqual(betti_table(ideal, 2).pd_ideal, 3)
        self.assertEqual(betti_table(ideal, 101).reg_ideal, 3)
        self.assertEqual(betti_table(ideal, 2).reg_ideal, 4)

    @settings(max_examples=50)
    @given(ideals(), sampled_from(PRIMES))
    def test_box_enumeration_agrees(self, ideal, p):
        self.assertEqual(betti_table(ideal, p), betti_table(ideal, p, enumeration="box"))

    @settings(max_examples=50)
    @given(ideals(), sampled_from(PRIMES))
    def test_generators_are_degree_zero_entries(self, ideal, p):
        self.assertEqual(betti_table(ideal, p).generators(), ideal.gens)


class TestInvariants(unittest.TestCase):
    def setUp(self):
        self.R = Ring(["x", "y", "z"])
        self.triangle = MonomialIdeal(self.R, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])

    def test_triangle(self):
        report = invariants(self.triangle, 2)

        self.assertEqual(report.depth_quotient, 1)
        self.assertEqual(report.pd, 2)
        self.assertEqual(report.reg_ideal, 2)
        self.assertEqual(report.reg_quotient, 1)
        self.assertEqual(report.d, 2)

    def test_zero_ideal_conventions(self):
        report = invariants(MonomialIdeal.zero(self.R), 3)
        self.assertEqual(
            (report.depth_quotient, report.pd, report.reg_ideal, report.reg_quotient, report.d),
            (3, 0, NEG_INF, 0, NEG_INF),
        )

    def test_unit_ideal(self):
        with self.assertRaises(DomainError):
            invariants(MonomialIdeal.unit(self.R), 2)

    def test_unknown_method(self):
        with self.assertRaises(ValueError):
            invariants(self.triangle, 2, method="guess")

    def test_structured_shortcuts(self):
        R = Ring(["x", "y"])
        self.assertEqual(reg_structured(power(R.maximal_ideal(), 3), 2), 3)
        self.assertEqual(reg_structured(MonomialIdeal(R, [(2, 3)]), 2), 5)
        self.assertEqual(reg_structured(MonomialIdeal.zero(R), 2), NEG_INF)

    @settings(max_examples=50)
    @given(ideals(), sampled_from(PRIMES))
    def test_methods_agree(self, ideal, p):
        koszul = invariants(ideal, p)
        for method in ("structured", "taylor-oracle"):
            other = invariants(ideal, p, method=method)
            self.assertEqual((other.pd, other.reg_ideal), (koszul.pd, koszul.reg_ideal))


class TestSocleAndColength(unittest.TestCase):
    def setUp(self):
        self.R = Ring(["x", "y"])
        self.m = self.R.maximal_ideal()

    def test_socle_witness_iff_depth_zero(self):
        self.assertIsNotNone(socle_test(power(self.m, 2)))
        self.assertIsNone(socle_test(MonomialIdeal(self.R, [(1, 1)])))

    def test_socle_needs_proper_ideal(self):
        with self.assertRaises(DomainError):
            socle_test(MonomialIdeal.unit(self.R))

    def test_top_degree(self):
        self.assertEqual(finite_colength_top_degree(self.m, power(self.m, 3)), 2)
        self.assertEqual(finite_colength_top_degree(self.m, self.m), NEG_INF)

    def test_inner_must_be_contained(self):
        with self.assertRaises(DomainError):
            finite_colength_top_degree(power(self.m, 3), self.m)

    def test_infinite_length_exceeds_bound(self):
        x = MonomialIdeal(self.R, [(1, 0)])
        with self.assertRaises(ResourceError):
            finite_colength_top_degree(x, power(x, 2), bound=5)
