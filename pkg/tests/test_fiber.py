"""
Tests for the fiberpowers.algebra.fiber module.
"""
import unittest

from hypothesis import given, settings
from hypothesis.strategies import integers, sampled_from

from fiberpowers.algebra.decompose import associated_primes
from fiberpowers.algebra.fiber import (
    Filtration,
    G_chain,
    U_ideal,
    fiber_prime_prediction,
    filtration_intersect,
    make_fiber,
    plus_power,
    plus_symbolic_power,
    reg_maximal_times,
    reg_power_prediction,
    reg_power_terms,
)
from fiberpowers.algebra.resolution import reg_structured
from fiberpowers.algebra.ring import NEG_INF, MonomialIdeal, Ring, power
from fiberpowers.errors import DomainError, StructuralError
from tests.strategies import ideals, squares_ideals

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.algebra"
TESTING_MODULE = f"{TESTING_PACKAGE}.fiber"


# ========== Tests ==========
class TestMakeFiber(unittest.TestCase):
    def setUp(self):
        self.R, self.S = Ring(["x"]), Ring(["y"])
        self.I = MonomialIdeal(self.R, [(2,)])
        self.J = MonomialIdeal(self.S, [(2,)])
        self.inst = make_fiber(self.R, self.I, self.S, self.J, label="squares")

    def test_fiber_of_squares(self):
        self.assertEqual(str(self.inst.F), "(x^2, x*y, y^2)")
        self.assertEqual(self.inst.T.variables, ("x", "y"))
        self.assertTrue(self.inst.in_squares)

    def test_text_and_plain_data(self):
        self.assertEqual(str(self.inst), "squares: R=[x] I=(x^2) | S=[y] J=(y^2)")
        self.assertEqual(
            self.inst.as_dict(),
            {"label": "squares", "R": ["x"], "I": [[2]], "S": ["y"], "J": [[2]]},
        )

    def test_zero_factor(self):
        inst = make_fiber(self.R, MonomialIdeal.zero(self.R), self.S, self.J)
        self.assertEqual(str(inst.F), "(x*y, y^2)")

    def test_linear_generator_is_not_in_squares(self):
        inst = make_fiber(self.R, MonomialIdeal(self.R, [(1,)]), self.S, self.J)
        self.assertFalse(inst.i_in_m2)
        self.assertTrue(inst.j_in_n2)

    def test_rejects_bad_input(self):
        with self.assertRaises(DomainError):
            make_fiber(Ring([]), MonomialIdeal.zero(Ring([])), self.S, self.J)
        with self.assertRaises(DomainError):
            make_fiber(self.R, MonomialIdeal.unit(self.R), self.S, self.J)
        with self.assertRaises(StructuralError):
            make_fiber(self.R, self.J, self.S, self.J)


class TestAuxiliaryIdeals(unittest.TestCase):
    def setUp(self):
        R, S = Ring(["x"]), Ring(["y"])
        self.inst = make_fiber(R, MonomialIdeal(R, [(2,)]), S, MonomialIdeal(S, [(2,)]))

    def test_plus_power(self):
        self.assertEqual(str(plus_power(self.inst, 1, "I")), "(y, x^2)")
        self.assertEqual(str(plus_power(self.inst, 1, "J")), "(x, y^2)")

    def test_plus_symbolic_power_of_zero_factor(self):
        R, S = Ring(["x"]), Ring(["y"])
        inst = make_fiber(R, MonomialIdeal.zero(R), S, MonomialIdeal(S, [(2,)]))
        self.assertEqual(plus_symbolic_power(inst, 2, "I"), power(inst.n, 2))

    def test_U_ideal(self):
        # (y, x^2) ∩ (x, y^2)
        self.assertEqual(str(U_ideal(self.inst, 1)), "(x^2, x*y, y^2)")
        self.assertEqual(U_ideal(self.inst, 2, "symbolic"), U_ideal(self.inst, 2))

    def test_U_ideal_rejects_bad_arguments(self):
        with self.assertRaises(DomainError):
            U_ideal(self.inst, 0)
        with self.assertRaises(ValueError):
            U_ideal(self.inst, 1, "strange")

        R, S = Ring(["x"]), Ring(["y"])
        inst = make_fiber(R, MonomialIdeal.zero(R), S, MonomialIdeal(S, [(2,)]))
        with self.assertRaises(DomainError):
            U_ideal(inst, 1, "symbolic")

    def test_G_chain_ends_in_fiber_power(self):
        chain = G_chain(self.inst, 2)

        self.assertEqual(len(chain), 3)
        self.assertEqual(chain[-1], power(self.inst.F, 2))
        for lower, upper in zip(chain, chain[1:]):
            self.assertTrue(lower <= upper)

    def test_prime_prediction(self):
        predicted = fiber_prime_prediction(self.inst, "ass")
        self.assertEqual({str(p) for p in predicted}, {"(x, y)"})
        self.assertEqual(predicted, associated_primes(self.inst.F))


class TestFiltration(unittest.TestCase):
    def setUp(self):
        self.R = Ring(["x", "y"])

    def test_ordinary(self):
        filtration = Filtration.ordinary(self.R.maximal_ideal(), 3)
        self.assertEqual(len(filtration), 3)
        self.assertTrue(filtration[0].is_unit)
        self.assertEqual(filtration[2], power(self.R.maximal_ideal(), 2))

    def test_zero_symbolic_filtration(self):
        filtration = Filtration.symbolic(MonomialIdeal.zero(self.R), 3)
        self.assertTrue(filtration[0].is_unit)
        self.assertTrue(filtration[1].is_zero and filtration[2].is_zero)

    def test_must_descend(self):
        with self.assertRaises(DomainError):
            Filtration(self.R, [MonomialIdeal(self.R, [(1, 0)]), MonomialIdeal.unit(self.R)])

    def test_single_ring(self):
        with self.assertRaises(StructuralError):
            Filtration(self.R, [MonomialIdeal.unit(Ring(["u"]))])

    def test_intersection_of_maximal_filtrations(self):
        S = Ring(["u"])
        lhs, rhs = filtration_intersect(
            Filtration.maximal(self.R, 3), Filtration.maximal(S, 3), 2
        )
        self.assertEqual(lhs, rhs)
        self.assertEqual(lhs, power(self.R.tensor(S).maximal_ideal(), 2))

    def test_short_filtration(self):
        S = Ring(["u"])
        with self.assertRaises(DomainError):
            filtration_intersect(Filtration.maximal(self.R, 2), Filtration.maximal(S, 2), 2)

    @settings(max_examples=30, deadline=None)
    @given(squares_ideals(Ring(["x", "y"])), squares_ideals(Ring(["u"])), integers(1, 2))
    def test_ordinary_power_filtrations_intersect(self, I, J, s):
        lhs, rhs = filtration_intersect(
            Filtration.ordinary(I, s + 1), Filtration.ordinary(J, s + 1), s
        )
        self.assertEqual(lhs, rhs)


class TestRegularityPrediction(unittest.TestCase):
    def setUp(self):
        R, S = Ring(["x"]), Ring(["y"])
        self.inst = make_fiber(R, MonomialIdeal(R, [(2,)]), S, MonomialIdeal(S, [(2,)]))

    def test_ordinary_terms(self):
        # m^(2-i) (x^2)^i = (x^4) for both i
        self.assertEqual(
            reg_power_terms(self.inst, 2, 2),
            {("I", 1): 4, ("I", 2): 4, ("J", 1): 4, ("J", 2): 4},
        )
        self.assertEqual(reg_power_prediction(self.inst, 1, 2), 2)
        self.assertEqual(reg_power_prediction(self.inst, 2, 3), 4)

    def test_symbolic_terms(self):
        terms = reg_power_terms(self.inst, 2, 2, "ass")
        self.assertEqual(terms, {("I", 1): 3, ("I", 2): 4, ("J", 1): 3, ("J", 2): 4})

    def test_matches_direct_regularity(self):
        for s in (1, 2, 3):
            with self.subTest(s=s):
                self.assertEqual(
                    reg_power_prediction(self.inst, s, 2),
                    reg_structured(power(self.inst.F, s), 2),
                )

    def test_zero_factor_contributes_nothing(self):
        R, S = Ring(["x"]), Ring(["y"])
        inst = make_fiber(R, MonomialIdeal.zero(R), S, MonomialIdeal(S, [(3,)]))

        terms = reg_power_terms(inst, 2, 2)
        self.assertEqual(set(terms), {("J", 1), ("J", 2)})
        self.assertEqual(reg_power_prediction(inst, 2, 2), 6)

    def test_rejects_bad_arguments(self):
        with self.assertRaises(ValueError):
            reg_power_terms(self.inst, 1, 2, "strange")
        with self.assertRaises(DomainError):
            reg_power_prediction(self.inst, 0, 2)

    def test_zero_ideal(self):
        R = Ring(["x"])
        self.assertEqual(reg_maximal_times(MonomialIdeal.zero(R), R.maximal_ideal(), 2, 2), NEG_INF)

    @settings(max_examples=40, deadline=None)
    @given(ideals(), integers(0, 3), sampled_from((2, 3)))
    def test_maximal_times_agrees_with_product(self, ideal, k, p):
        maximal = ideal.ring.maximal_ideal()
        self.assertEqual(
            reg_maximal_times(ideal, maximal, k, p),
            reg_structured(power(maximal, k) * ideal, p),
        )
