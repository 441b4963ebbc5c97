"""
.. module:: fiberpowers.lang.parser
    :synopsis: Tokenizer and recursive descent parser for ideal programs.

A program declares one ring, binds names to expressions and ends with the
expression to evaluate::

    ring R = [x y | u v];
    I = (x^2, x*y);
    J = (u*v);
    reg(fiber(I, J)^2)

Operators, loosest first: ``&`` (intersection) and ``:`` (colon), then ``+``,
then ``*``, then ``^`` with an integer exponent. All are left associative.
A parenthesis opens an ideal literal when everything up to its closing
parenthesis is made of ring variables, integers, ``*``, ``^`` and commas;
otherwise it groups a sub-expression. ``#`` starts a comment.
"""
import logging
import re
from dataclasses import dataclass

from fiberpowers.errors import ParseError

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
TOKEN_PATTERN = re.compile(
    r"""
    (?P<space>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[()\[\],;=+*&:^|])
    """,
    re.VERBOSE,
)

KEYWORD_RING = "ring"
MODES = ("ass", "min")

# name -> argument kinds; a trailing "mode?" is optional
CALLS = {
    "rad": ("ideal",),
    "symb": ("ideal", "int", "mode?"),
    "msymb": ("ideal", "int"),
    "fiber": ("ideal", "ideal"),
    "pow": ("ideal", "int"),
    "reg": ("ideal",),
    "depth": ("ideal",),
    "betti": ("ideal",),
    "ass": ("ideal",),
    "min": ("ideal",),
    "decomp": ("ideal",),
}

BINARY_LEVELS = (("&", ":"), ("+",), ("*",))
LITERAL_KINDS = ("ident", "int", "*", "^", ",")


# ========== Classes ==========
@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


@dataclass(frozen=True)
class Node:
    """Base of the syntax tree; ``text`` is the source of the node."""

    offset: int
    text: str


@dataclass(frozen=True)
class IdealLiteral(Node):
    """Generators as ``{variable: exponent}`` mappings; ``()`` means the zero ideal."""

    monomials: tuple = ()


@dataclass(frozen=True)
class Name(Node):
    name: str = ""


@dataclass(frozen=True)
class IntLiteral(Node):
    value: int = 0


@dataclass(frozen=True)
class Mode(Node):
    value: str = "ass"


@dataclass(frozen=True)
class BinaryOp(Node):
    op: str = "+"
    left: Node = None
    right: Node = None


@dataclass(frozen=True)
class PowerOp(Node):
    base: Node = None
    exponent: int = 1


@dataclass(frozen=True)
class Call(Node):
    func: str = ""
    args: tuple = ()


@dataclass(frozen=True)
class RingDecl(Node):
    name: str = ""
    blocks: tuple = ()

    @property
    def variables(self):
        return tuple(v for block in self.blocks for v in block)


@dataclass(frozen=True)
class Binding(Node):
    name: str = ""
    expr: Node = None


@dataclass(frozen=True)
class Program:
    """A parsed program: its ring, its bindings in order, and the final expression."""

    source: str
    ring: RingDecl
    bindings: tuple
    expr: Node


# ========== Functions ==========
def position(source, offset):
    """1-based (line, column) of a character offset."""
    line = source.count("\n", 0, offset) + 1
    column = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, column


def tokenize(source):
    """Split source text into tokens, ending with an ``eof`` token.

    :rtype: list of Token
    :raises ParseError: on a character outside the language
    """
    tokens = []
    offset = 0
    while offset < len(source):
        match = TOKEN_PATTERN.match(source, offset)
        if match is None:
            line, column = position(source, offset)
            raise ParseError(
                f"unexpected character '{source[offset]}'", offset=offset, line=line, column=column
            )
        kind = match.lastgroup
        if kind != "space":
            text = match.group()
            tokens.append(Token(text if kind == "op" else kind, text, offset))
        offset = match.end()

    tokens.append(Token("eof", "", len(source)))
    return tokens


class Parser:
    """Recursive descent over the token list of one program."""

    def __init__(self, source):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0
        self.variables = frozenset()
        self.names = set()

    # ----- helpers -----
    @property
    def current(self):
        return self.tokens[self.pos]

    def error(self, message, token=None):
        token = self.current if token is None else token
        line, column = position(self.source, token.offset)
        where = f"'{token.text}'" if token.text else "end of input"
        return ParseError(
            f"{message}, found {where}", offset=token.offset, line=line, column=column
        )

    def advance(self):
        token = self.current
        self.pos += 1
        return token

    def accept(self, kind):
        if self.current.kind == kind:
            return self.advance()
        return None

    def expect(self, kind, what=None):
        token = self.accept(kind)
        if token is None:
            raise self.error(f"expected {what or repr(kind)}")
        return token

    def span(self, start):
        end = self.tokens[self.pos - 1]
        return self.source[start : end.offset + len(end.text)]

    # ----- program -----
    def parse_program(self):
        ring = self.parse_ring()
        bindings = []

        while self.current.kind == "ident" and self.tokens[self.pos + 1].kind == "=":
            bindings.append(self.parse_binding())

        if self.current.kind == "eof":
            raise self.error("expected an expression")
        expr = self.parse_expr()
        self.accept(";")
        self.expect("eof", "end of input")
        return Program(self.source, ring, tuple(bindings), expr)

    def parse_ring(self):
        start = self.current.offset
        keyword = self.current
        if keyword.kind != "ident" or keyword.text != KEYWORD_RING:
            raise self.error("expected a ring declaration 'ring NAME = [...]'")
        self.advance()
        name = self.expect("ident", "a ring name").text
        self.expect("=")
        self.expect("[")

        blocks = [[]]
        while not self.accept("]"):
            if self.accept("|"):
                if not blocks[-1]:
                    raise self.error("empty variable block")
                blocks.append([])
                continue
            token = self.expect("ident", "a variable name or ']'")
            if any(token.text in block for block in blocks):
                raise self.error(f"duplicate variable '{token.text}'", token)
            blocks[-1].append(token.text)
        if not blocks[-1]:
            raise self.error("empty variable block")
        self.accept(";")

        decl = RingDecl(start, self.span(start), name, tuple(tuple(b) for b in blocks))
        self.variables = frozenset(decl.variables)
        return decl

    def parse_binding(self):
        start = self.current.offset
        token = self.advance()
        if token.text in self.variables:
            raise self.error(f"'{token.text}' is a ring variable and cannot be bound", token)
        if token.text in CALLS or token.text == KEYWORD_RING:
            raise self.error(f"'{token.text}' is reserved", token)
        self.expect("=")
        expr = self.parse_expr()
        self.expect(";", "';' after a binding")
        self.names.add(token.text)
        return Binding(start, self.span(start), token.text, expr)

    # ----- expressions -----
    def parse_expr(self, level=0):
        if level == len(BINARY_LEVELS):
            return self.parse_power()

        start = self.current.offset
        left = self.parse_expr(level + 1)
        while self.current.kind in BINARY_LEVELS[level]:
            op = self.advance().kind
            right = self.parse_expr(level + 1)
            left = BinaryOp(start, self.span(start), op, left, right)
        return left

    def parse_power(self):
        start = self.current.offset
        base = self.parse_atom()
        while self.accept("^"):
            exponent = int(self.expect("int", "an integer exponent").text)
            base = PowerOp(start, self.span(start), base, exponent)
        return base

    def parse_atom(self):
        token = self.current
        if token.kind == "(":
            if self.is_literal():
                return self.parse_literal()
            self.advance()
            expr = self.parse_expr()
            self.expect(")")
            return expr

        if token.kind == "ident":
            if self.tokens[self.pos + 1].kind == "(" and token.text in CALLS:
                return self.parse_call()
            if token.text in self.names:
                self.advance()
                return Name(token.offset, token.text, token.text)
            if token.text in self.variables:
                raise self.error(
                    f"variable '{token.text}' must be written as an ideal, e.g. ({token.text})"
                )
            raise self.error(f"unknown identifier '{token.text}'")

        raise self.error("expected an ideal, a name or a call")

    def is_literal(self):
        """Does the parenthesis at the current position open an ideal literal?"""
        for token in self.tokens[self.pos + 1 :]:
            if token.kind == ")":
                return True
            if token.kind not in LITERAL_KINDS:
                return token.kind == "eof"
            if token.kind == "ident" and token.text not in self.variables:
                return False
        return True

    def parse_literal(self):
        start = self.expect("(").offset
        monomials = []
        while True:
            monomials.append(self.parse_monomial())
            if not self.accept(","):
                break
        self.expect(")", "')' or ',' in an ideal")

        if len(monomials) == 1 and monomials[0] is None:
            monomials = []
        elif None in monomials:
            raise self.error("0 cannot be a generator next to others", self.tokens[self.pos - 1])
        return IdealLiteral(start, self.span(start), tuple(m for m in monomials))

    def parse_monomial(self):
        """A product of powers of variables; ``1`` is the unit, ``0`` stands for zero."""
        token = self.current
        if token.kind == "int" and token.text in ("0", "1"):
            self.advance()
            if token.text == "0":
                return None
            powers = {}
            if not self.accept("*"):
                return tuple(sorted(powers.items()))

        powers = {}
        while True:
            name = self.expect("ident", "a variable").text
            if name not in self.variables:
                raise self.error(
                    f"'{name}' is not a variable of the ring", self.tokens[self.pos - 1]
                )
            exponent = 1
            if self.accept("^"):
                exponent = int(self.expect("int", "an integer exponent").text)
            powers[name] = powers.get(name, 0) + exponent
            if not self.accept("*"):
                break
        return tuple(sorted(powers.items()))

    def parse_call(self):
        start = self.current.offset
        token = self.advance()
        func = token.text
        self.expect("(")

        args = []
        if self.current.kind != ")":
            while True:
                args.append(self.parse_argument())
                if not self.accept(","):
                    break
        self.expect(")", "')' or ',' in an argument list")

        kinds = CALLS[func]
        required = [k for k in kinds if not k.endswith("?")]
        if not len(required) <= len(args) <= len(kinds):
            expected = (
                str(len(kinds)) if len(required) == len(kinds) else f"{len(required)}-{len(kinds)}"
            )
            raise self.error(f"{func}() takes {expected} arguments, got {len(args)}", token)

        for kind, arg in zip(kinds, args):
            kind = kind.rstrip("?")
            if kind == "int" and not isinstance(arg, IntLiteral):
                raise self.error(f"{func}() needs an integer here", token)
            if kind == "mode" and not isinstance(arg, Mode):
                raise self.error(f"{func}() needs 'ass' or 'min' here", token)
            if kind == "ideal" and isinstance(arg, (IntLiteral, Mode)):
                raise self.error(f"{func}() needs an ideal here", token)

        return Call(start, self.span(start), func, tuple(args))

    def parse_argument(self):
        token = self.current
        if token.kind == "int":
            self.advance()
            return IntLiteral(token.offset, token.text, int(token.text))
        if (
            token.kind == "ident"
            and token.text in MODES
            and token.text not in self.names
            and self.tokens[self.pos + 1].kind != "("
        ):
            self.advance()
            return Mode(token.offset, token.text, token.text)
        return self.parse_expr()


def parse_program(text):
    """Parse a program.

    >>> program = parse_program("ring R=[x y]; I=(x^2, x*y); reg(I)")
    >>> program.expr.func
    'reg'

    :param text: the source
    :type text: str
    :rtype: Program
    :raises ParseError: with line and column of the offending token
    """
    program = Parser(text).parse_program()
    syslog.debug("Parsed program with %d bindings", len(program.bindings))
    return program
