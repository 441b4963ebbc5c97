"""
Tests for the fiberpowers.lang.emit module.
"""
import json
import unittest

from hypothesis import given

from fiberpowers.algebra.decompose import associated_primes, irreducible_decomposition
from fiberpowers.algebra.resolution import betti_table
from fiberpowers.algebra.ring import NEG_INF, MonomialIdeal, Ring
from fiberpowers.lang.emit import betti_text, emit, jsonable
from fiberpowers.lang.evaluate import evaluate
from fiberpowers.lang.parser import parse_program
from tests.strategies import ideals

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.lang"
TESTING_MODULE = f"{TESTING_PACKAGE}.emit"


# ========== Tests ==========
class TestEmitIdeals(unittest.TestCase):
    def setUp(self):
        self.R = Ring(["x", "y"])
        self.ideal = MonomialIdeal(self.R, [(2, 0), (1, 1)])

    def test_text(self):
        self.assertEqual(emit(self.ideal), "(x^2, x*y)\n")
        self.assertEqual(emit(MonomialIdeal.zero(self.R)), "(0)\n")

    def test_json(self):
        self.assertEqual(json.loads(emit(self.ideal, "json")), {"gens": [[2, 0], [1, 1]]})
        self.assertEqual(emit(MonomialIdeal.zero(self.R), "json"), '{"gens": []}\n')

    def test_tsv(self):
        self.assertEqual(emit(self.ideal, "tsv"), "2\t0\n1\t1\n")

    def test_zero_ideal_tsv_is_empty(self):
        self.assertEqual(emit(MonomialIdeal.zero(self.R), "tsv"), "")

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            emit(self.ideal, "xml")

    @given(ideals())
    def test_text_parses_back(self, ideal):
        names = " ".join(ideal.ring.variables)
        program = parse_program(f"ring R = [{names}];\n{emit(ideal)}")
        self.assertEqual(evaluate(program, 2), ideal)


class TestEmitNumbers(unittest.TestCase):
    def test_negative_infinity(self):
        self.assertEqual(emit(NEG_INF), "-inf\n")
        self.assertEqual(emit(NEG_INF, "json"), '"-inf"\n')

    def test_integers(self):
        self.assertEqual(emit(3, "json"), "3\n")
        self.assertEqual(emit(3, "tsv"), "3\n")


class TestEmitStructures(unittest.TestCase):
    def setUp(self):
        self.R = Ring(["x", "y", "z"])
        self.triangle = MonomialIdeal(self.R, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])

    def test_betti_text(self):
        self.assertEqual(
            betti_text(betti_table(self.triangle, 2)),
            "       0 1\ntotal: 3 2\n    2: 3 2",
        )
        self.assertEqual(betti_text(betti_table(MonomialIdeal.zero(self.R), 2)), "(empty)")

    def test_betti_tsv(self):
        self.assertEqual(
            emit(betti_table(self.triangle, 2), "tsv").splitlines(),
            ["0\t(1,1,0)\t1", "0\t(1,0,1)\t1", "0\t(0,1,1)\t1", "1\t(1,1,1)\t2"],
        )

    def test_betti_json(self):
        records = json.loads(emit(betti_table(self.triangle, 2), "json"))
        self.assertEqual(records[-1], {"i": 1, "multidegree": [1, 1, 1], "rank": 2})

    def test_primes(self):
        primes = associated_primes(self.triangle)

        self.assertEqual(emit(primes), "{(x, y), (x, z), (y, z)}\n")
        self.assertEqual(
            jsonable(primes), [["x", "y"], ["x", "z"], ["y", "z"]]
        )
        self.assertEqual(emit(primes, "tsv"), "x\ty\nx\tz\ny\tz\n")

    def test_decomposition(self):
        R = Ring(["x", "y"])
        decomposition = irreducible_decomposition(MonomialIdeal(R, [(2, 0), (1, 1)]))

        self.assertEqual(emit(decomposition), "(x) & (y, x^2)\n")
        self.assertEqual(
            jsonable(decomposition),
            [
                {"component": {"gens": [[1, 0]]}, "radical": ["x"]},
                {"component": {"gens": [[0, 1], [2, 0]]}, "radical": ["x", "y"]},
            ],
        )

    def test_dictionaries(self):
        value = {"F": self.triangle, "reg F": 2, "reg (0)": NEG_INF}

        self.assertEqual(
            emit(value), "F: (x*y, x*z, y*z)\nreg F: 2\nreg (0): -inf\n"
        )
        self.assertEqual(
            json.loads(emit(value, "json")),
            {"F": {"gens": [[1, 1, 0], [1, 0, 1], [0, 1, 1]]}, "reg F": 2, "reg (0)": "-inf"},
        )
        self.assertEqual(emit(value, "tsv").splitlines()[1], "reg F\t2")
