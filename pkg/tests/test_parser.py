"""
Tests for the fiberpowers.lang.parser module.
"""
import unittest

from fiberpowers.errors import ParseError
from fiberpowers.lang.parser import (
    BinaryOp,
    Call,
    IdealLiteral,
    IntLiteral,
    Mode,
    Name,
    PowerOp,
    parse_program,
    position,
    tokenize,
)

# ========== Constants ==========
TESTING_PACKAGE = "fiberpowers.lang"
TESTING_MODULE = f"{TESTING_PACKAGE}.parser"

HEADER = "ring T = [x y | u v];\n"


# ========== Functions ==========
def expr(source):
    return parse_program(HEADER + source).expr


# ========== Tests ==========
class TestTokenize(unittest.TestCase):
    def test_kinds(self):
        kinds = [t.kind for t in tokenize("I = (x^2) # comment\n")]
        self.assertEqual(kinds, ["ident", "=", "(", "ident", "^", "int", ")", "eof"])

    def test_unexpected_character(self):
        with self.assertRaises(ParseError) as cm:
            tokenize("ring R = [x];\n(x) $ (x)")
        self.assertEqual((cm.exception.line, cm.exception.column), (2, 5))

    def test_position(self):
        self.assertEqual(position("ab\ncd", 4), (2, 2))
        self.assertEqual(position("ab", 0), (1, 1))


class TestRingDeclaration(unittest.TestCase):
    def test_blocks(self):
        ring = parse_program(HEADER + "(x)").ring
        self.assertEqual(ring.name, "T")
        self.assertEqual(ring.blocks, (("x", "y"), ("u", "v")))
        self.assertEqual(ring.variables, ("x", "y", "u", "v"))

    def test_errors(self):
        sources = [
            "(x)",
            "ring R = [x x]; (x)",
            "ring R = [x | ]; (x)",
            "ring R = [| x]; (x)",
            "ring R = [x];",
        ]
        for source in sources:
            with self.subTest(source=source), self.assertRaises(ParseError):
                parse_program(source)


class TestExpressions(unittest.TestCase):
    def test_literal(self):
        node = expr("(x^2, x*y*x, 1*u)")
        self.assertIsInstance(node, IdealLiteral)
        self.assertEqual(
            node.monomials, ((("x", 2),), (("x", 2), ("y", 1)), (("u", 1),))
        )
        self.assertEqual(node.text, "(x^2, x*y*x, 1*u)")

    def test_zero_and_unit_literals(self):
        self.assertEqual(expr("(0)").monomials, ())
        self.assertEqual(expr("(1)").monomials, ((),))
        with self.assertRaises(ParseError):
            expr("(0, x)")

    def test_precedence(self):
        node = expr("(x) & (y) + (u) * (v)^2")

        self.assertIsInstance(node, BinaryOp)
        self.assertEqual(node.op, "&")
        self.assertEqual(node.right.op, "+")
        self.assertEqual(node.right.right.op, "*")
        self.assertIsInstance(node.right.right.right, PowerOp)
        self.assertEqual(node.right.right.right.exponent, 2)

    def test_left_associative(self):
        node = expr("(x) : (y) : (u)")
        self.assertEqual(node.left.op, ":")
        self.assertEqual(node.left.text, "(x) : (y)")

    def test_grouping(self):
        node = parse_program(HEADER + "I = (x);\n((I + (y)))^2").expr
        self.assertIsInstance(node, PowerOp)
        self.assertEqual(node.base.op, "+")

    def test_bindings(self):
        program = parse_program(HEADER + "I = (x^2);\nJ = I * (u);\nJ;")

        self.assertEqual([b.name for b in program.bindings], ["I", "J"])
        self.assertIsInstance(program.bindings[1].expr.left, Name)
        self.assertEqual(program.expr, Name(program.expr.offset, "J", "J"))

    def test_calls(self):
        node = expr("symb((x*y), 3, min)")

        self.assertIsInstance(node, Call)
        self.assertEqual(node.func, "symb")
        self.assertIsInstance(node.args[1], IntLiteral)
        self.assertEqual(node.args[1].value, 3)
        self.assertEqual(node.args[2], Mode(node.args[2].offset, "min", "min"))

    def test_call_nesting(self):
        node = expr("reg(fiber((x^2), (u^2))^2)")
        self.assertEqual(node.args[0].base.func, "fiber")


class TestParseErrors(unittest.TestCase):
    def assertParseError(self, source, reason, line=None, column=None):
        with self.assertRaises(ParseError) as cm:
            parse_program(source)
        self.assertIn(reason, cm.exception.reason)
        if line is not None:
            self.assertEqual((cm.exception.line, cm.exception.column), (line, column))

    def test_unknown_identifier(self):
        self.assertParseError(HEADER + "J", "unknown identifier 'J'", 2, 1)

    def test_bare_variable(self):
        self.assertParseError(HEADER + "x + (y)", "must be written as an ideal")

    def test_foreign_variable(self):
        self.assertParseError(HEADER + "(w)", "unknown identifier 'w'")

    def test_arity(self):
        self.assertParseError(HEADER + "pow((x))", "pow() takes 2 arguments, got 1")
        self.assertParseError(HEADER + "symb((x), 2, ass, 3)", "symb() takes 2-3 arguments")

    def test_argument_kinds(self):
        self.assertParseError(HEADER + "pow((x), (y))", "needs an integer")
        self.assertParseError(HEADER + "rad(2)", "needs an ideal")

    def test_reserved_and_variable_bindings(self):
        self.assertParseError(HEADER + "x = (y);\n(x)", "is a ring variable")
        self.assertParseError(HEADER + "reg = (y);\n(x)", "is reserved")

    def test_missing_expression(self):
        self.assertParseError(HEADER + "I = (x);", "expected an expression")

    def test_trailing_input(self):
        self.assertParseError(HEADER + "(x) (y)", "expected end of input")

    def test_exponent_must_be_integer(self):
        self.assertParseError(HEADER + "(x)^(y)", "an integer exponent")
