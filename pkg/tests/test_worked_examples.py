"""
The check catalogue and the regularity formulas on hand-picked fiber products.

The sweep over s = 1..3 in three characteristics, and the direct Betti tables of
the largest ideals, take a while; set ``FIBERPOWERS_SLOW=1`` to include them.
"""
import os
import tempfile
import unittest

from fiberpowers.algebra.decompose import associated_primes
from fiberpowers.algebra.fiber import make_fiber, reg_power_prediction, reg_power_terms
from fiberpowers.algebra.resolution import invariants, reg_structured
from fiberpowers.algebra.ring import MonomialIdeal, Ring, power, variables_ideal
from fiberpowers.algebra.symbolic import symbolic_power
from fiberpowers.config.config_files import Budgets
from fiberpowers.struct.cache import BettiCache
from fiberpowers.verify.checks import CheckContext, CheckID, Status, run_check

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.verify"
TESTING_MODULE = f"{TESTING_PACKAGE}.checks"

SLOW = bool(os.environ.get("FIBERPOWERS_SLOW"))
S_MAX = 3
PRIMES = (2, 3, 101)


# ========== Functions ==========
def worked_instances():
    R2, R3 = Ring(["x1", "x2"]), Ring(["x1", "x2", "x3"])
    S1, S2 = Ring(["y1"]), Ring(["y1", "y2"])

    triangle = MonomialIdeal(R3, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])
    embedded = MonomialIdeal(R2, [(2, 0), (1, 1)])
    complete_intersection = MonomialIdeal(S2, [(2, 0), (0, 3)])
    square = MonomialIdeal(S2, [(2, 0), (1, 1), (0, 2)])

    return [
        make_fiber(R3, triangle, S1, MonomialIdeal(S1, [(3,)]), label="triangle|y^3"),
        make_fiber(R2, embedded, S2, complete_intersection, label="embedded|ci"),
        make_fiber(R3, triangle, S2, square, label="triangle|n^2"),
        make_fiber(R2, MonomialIdeal.zero(R2), S2, square, label="zero|n^2"),
    ]


def equigenerated_instance():
    """I = (a^4, a^3b, ab^3, b^4)(c, d, e)^7 + a^2b^2(c^7, d^7, e^7) and J = (y^2)."""
    R, S = Ring(["a", "b", "c", "d", "e", "f"]), Ring(["y", "z"])
    quartics = MonomialIdeal(R, [(4 - i, i, 0, 0, 0, 0) for i in (0, 1, 3, 4)])
    sevenths = MonomialIdeal(R, [R.monomial({v: 7}) for v in "cde"])
    a2b2 = MonomialIdeal(R, [R.monomial({"a": 2, "b": 2})])

    I = quartics * power(variables_ideal(R, (2, 3, 4)), 7) + a2b2 * sevenths
    J = MonomialIdeal(S, [S.monomial({"y": 2})])
    return make_fiber(R, I, S, J, label="equigenerated")


# ========== Tests ==========
class TestWorkedExamples(unittest.TestCase):
    def test_checks_apply(self):
        """The instances are in m^2 and n^2, so the fiber checks must not be skipped."""
        inst = worked_instances()[0]
        for check in (CheckID.C7, CheckID.C13, CheckID.C20, CheckID.C22):
            with self.subTest(check=str(check)):
                self.assertIs(run_check(check, inst, 2, 2).status, Status.PASS)

    def test_first_powers_never_fail(self):
        for inst in worked_instances():
            ctx = CheckContext(inst, 2)
            for check in CheckID:
                with self.subTest(instance=inst.label, check=str(check)):
                    report = run_check(check, inst, 1, 2, context=ctx)
                    self.assertNotEqual(report.status, Status.FAIL, report.witness)


@unittest.skipUnless(SLOW, "set FIBERPOWERS_SLOW=1 to run the full sweep")
class TestCharacteristicSweep(unittest.TestCase):
    def test_no_check_fails(self):
        for inst in worked_instances():
            for p in PRIMES:
                ctx = CheckContext(inst, p)
                for check in CheckID:
                    for s in range(1, (S_MAX if check.uses_s else 1) + 1):
                        with self.subTest(instance=inst.label, p=p, check=str(check), s=s):
                            report = run_check(check, inst, s, p, context=ctx)
                            self.assertNotEqual(report.status, Status.FAIL, report.witness)


class TestEquigeneratedExample(unittest.TestCase):
    """reg F^(2) = 24 lies above max(reg I^(2), reg J^(2)) = 22."""

    CHARS = (2, 3)

    @classmethod
    def setUpClass(cls):
        cls.tmpdir = tempfile.TemporaryDirectory()
        cls.cache = BettiCache(cls.tmpdir.name)
        cls.inst = equigenerated_instance()
        cls.I_squared = power(cls.inst.I, 2)

    @classmethod
    def tearDownClass(cls):
        cls.tmpdir.cleanup()

    def test_associated_primes(self):
        self.assertEqual(
            {str(prime) for prime in associated_primes(self.inst.I)},
            {"(a, b)", "(c, d, e)", "(a, b, c, d, e)"},
        )

    def test_square_is_a_product_and_symbolic(self):
        R = self.inst.R
        ab, cde = variables_ideal(R, (0, 1)), variables_ideal(R, (2, 3, 4))

        self.assertEqual(self.I_squared, power(ab, 8) * power(cde, 14))
        self.assertEqual(symbolic_power(self.inst.I, 2), self.I_squared)

    def test_factor_invariants(self):
        I, J = self.inst.I, self.inst.J
        for p in self.CHARS:
            with self.subTest(p=p):
                report = invariants(I, p, cache=self.cache)
                self.assertEqual(report.reg_ideal, 23)
                self.assertEqual(report.depth_quotient, 1)
                self.assertEqual(reg_structured(I, p, cache=self.cache), report.reg_ideal)
                self.assertEqual(reg_structured(self.I_squared, p, cache=self.cache), 22)

                self.assertEqual(invariants(J, p).reg_ideal, 2)
                self.assertEqual(invariants(J, p).depth_quotient, 1)
                self.assertEqual(reg_structured(symbolic_power(J, 2), p), 4)

    def test_regularity_formulas(self):
        for p in self.CHARS:
            with self.subTest(p=p):
                # s = 1 gives reg F = max(2, reg I, reg J)
                self.assertEqual(reg_power_prediction(self.inst, 1, p, cache=self.cache), 23)

                terms = reg_power_terms(self.inst, 2, p, cache=self.cache)
                self.assertEqual(terms[("I", 1)], 24)
                self.assertEqual(terms[("I", 2)], 22)
                self.assertEqual(reg_power_prediction(self.inst, 2, p, cache=self.cache), 24)
                self.assertEqual(
                    reg_power_prediction(self.inst, 2, p, "ass", cache=self.cache), 24
                )

    @unittest.skipUnless(SLOW, "set FIBERPOWERS_SLOW=1 to run the direct Betti tables")
    def test_direct_betti_tables(self):
        self.assertEqual(invariants(self.I_squared, 2, cache=self.cache).reg_ideal, 22)
        self.assertEqual(invariants(self.inst.F, 2, cache=self.cache).reg_ideal, 23)

    @unittest.skipUnless(SLOW, "set FIBERPOWERS_SLOW=1 to run the checks on F^2")
    def test_checks_report_the_formula(self):
        budgets = Budgets(time_budget=60)
        expected = {CheckID.C22: "reg F^s formula", CheckID.C15: "reg F^(s) formula"}
        for check, name in expected.items():
            with self.subTest(check=str(check)):
                report = run_check(check, self.inst, 2, 2, budgets=budgets, cache=self.cache)
                self.assertIn(report.status, (Status.PASS, Status.RESOURCE_EXCEEDED))
                self.assertEqual(report.values, {name: 24})
