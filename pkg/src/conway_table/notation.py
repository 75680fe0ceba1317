"""Factorization Notation Module.

This module reads, prints and evaluates the line-oriented notation used to
write Conway-function factorizations, for example::

    row2(a1,1) M mat2(0,a2; a2,1) M col2(a3,1)
    row5(a1+a3+a5, a3 a5, a5 a1, a1 a3, a1 a3 a5) P5 col5(1, a2, a4, a6, a2 a4 + a4 a6 + a6 a2)
    row2(a1 a2, a1 + a2) M col2(a3 a4, a3 + a4) = row2(a1,1) M mat2(0,a2;a2,1) M mat2(0,a3;a3,1) M col2(a4,1)

Grammar::

    assertion := product ("=" product)*
    product   := atom+
    atom      := "M" | "P5"
               | "row2(" poly "," poly ")" | "col2(" poly "," poly ")"
               | "mat2(" poly "," poly ";" poly "," poly ")"
               | "row5(" poly {"," poly}*4 ")" | "col5(" poly {"," poly}*4 ")"
    poly      := ["+" | "-"] term (("+" | "-") term)*
    term      := factor (["*"] factor)*
    factor    := base ["^" integer]
    base      := integer | variable | "(" poly ")"

Juxtaposition of atoms is the matrix product and the metric is never
inserted implicitly. Inside a polynomial, juxtaposition is multiplication
when the second factor is a variable or a parenthesised group (``2 a1`` and
``a1 (a2 + 1)`` multiply, ``a1 1`` is a syntax error). Variables are ``a``
followed by a positive decimal integer.

Dimensions are checked when a product is evaluated, not when it is parsed.

Example:
    >>> node = parse("row2(a1,1) M mat2(0,a2;a2,1) M col2(a3,1)")
    >>> print(expand(node))
    a1*a2 + a1*a3 + a2*a3
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from .exceptions import (
    ArityError,
    ConwayTableError,
    DimensionError,
    LexicalError,
    NotationSyntaxError,
)
from .matrices import Orientation, PolyVector, chain_product, object_array
from .polyring import Polynomial, poly_var
from .tangle2 import Chain2, Mat2, Vec2, metric_m
from .tangle3 import metric_p5

logger = logging.getLogger(__name__)


# -- polynomial literals -----------------------------------------------------


@dataclass(frozen=True)
class Num:
    """A non-negative integer literal."""

    value: int


@dataclass(frozen=True)
class Var:
    """The variable ``a{index}``."""

    index: int


@dataclass(frozen=True)
class Neg:
    """Unary minus."""

    operand: "PolyLit"


@dataclass(frozen=True)
class Add:
    """A sum as written, with two or more summands.

    Attributes:
        items (Tuple[PolyLit, ...]): Summands in written order; subtracted
            terms are wrapped in :class:`Neg`.
    """

    items: Tuple["PolyLit", ...]


@dataclass(frozen=True)
class Mul:
    """A product of two or more factors, explicit ``*`` or juxtaposed."""

    items: Tuple["PolyLit", ...]


@dataclass(frozen=True)
class Pow:
    """``base ^ exponent`` with a non-negative integer exponent.

    Attributes:
        base (PolyLit): The literal being raised.
        exponent (int): The power as written.
    """

    base: "PolyLit"
    exponent: int


# A polynomial literal as written, before any expansion.
PolyLit = Union[Num, Var, Neg, Add, Mul, Pow]


# -- atoms and products ------------------------------------------------------


@dataclass(frozen=True)
class RowVec:
    """``row2(...)`` or ``row5(...)``."""

    entries: Tuple[PolyLit, ...]


@dataclass(frozen=True)
class ColVec:
    """``col2(...)`` or ``col5(...)``."""

    entries: Tuple[PolyLit, ...]


@dataclass(frozen=True)
class MatLit:
    """``mat2(p,q; r,s)``, stored row-major."""

    rows: Tuple[Tuple[PolyLit, ...], ...]


@dataclass(frozen=True)
class Metric:
    """The metric ``M`` (2x2) or ``P5`` (5x5)."""

    name: str


Atom = Union[RowVec, ColVec, MatLit, Metric]


@dataclass(frozen=True)
class Product:
    """Atoms multiplied left to right; no metric is inserted between them."""

    factors: Tuple[Atom, ...]


@dataclass(frozen=True)
class IdentityAssertion:
    """Two or more products asserted equal."""

    branches: Tuple[Product, ...]


ExprNode = Union[PolyLit, Atom, Product, IdentityAssertion]

HEAD_ARITY = {"row2": 2, "col2": 2, "row5": 5, "col5": 5}


# -- lexer -------------------------------------------------------------------

TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<head>(?:row|col)[25]|mat2)(?![A-Za-z0-9_])
    |(?P<metric>P5|M)(?![A-Za-z0-9_])
    |(?P<var>a[0-9]+)
    |(?P<int>[0-9]+)
    |(?P<punct>[(),;=+\-*^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    """A lexeme of the notation.

    Attributes:
        kind (str): ``head``, ``metric``, ``var``, ``int`` or ``eof``; a
            punctuation token uses its own character as kind.
        text (str): The matched text.
        position (int): Offset of the first character in the input.
    """

    kind: str
    text: str
    position: int

    def describe(self) -> str:
        """How the token is named in an error message."""
        return "end of input" if self.kind == "eof" else f'"{self.text}"'


def tokenize(text: str) -> List[Token]:
    """Split text into tokens, ending with an ``eof`` token.

    Raises:
        LexicalError: On a character that starts no token, or on ``a0``.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            raise LexicalError(f'unexpected character "{text[pos]}"', pos)
        kind = match.lastgroup
        lexeme = match.group()
        if kind == "var" and int(lexeme[1:]) < 1:
            raise LexicalError(f'variable index must be positive in "{lexeme}"', pos)
        if kind == "punct":
            kind = lexeme
        if kind != "ws":
            tokens.append(Token(kind, lexeme, pos))
        pos = match.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


# -- parser ------------------------------------------------------------------

ATOM_STARTS = ('"M"', '"P5"', '"row2("', '"col2("', '"mat2("', '"row5("', '"col5("')


class Parser:
    """Recursive-descent parser over a token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Token:
        """The current token, not consumed."""
        return self.tokens[self.index]

    def advance(self) -> Token:
        """Consume and return the current token."""
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, *expected: str) -> NotationSyntaxError:
        """Build the error for an unexpected current token.

        Args:
            *expected (str): Descriptions of the tokens that would have been
                accepted here.

        Returns:
            NotationSyntaxError: The error to raise, positioned at the
                current token.
        """
        token = self.peek()
        return NotationSyntaxError(
            f"expected {' or '.join(expected)} but found {token.describe()}",
            token.position,
            expected,
        )

    def expect(self, kind: str) -> Token:
        """Consume a token of ``kind``.

        Raises:
            NotationSyntaxError: If the current token has another kind.
        """
        if self.peek().kind != kind:
            raise self.fail(f'"{kind}"')
        return self.advance()

    def at_atom(self) -> bool:
        """Whether the current token can start an atom."""
        return self.peek().kind in ("head", "metric")

    # assertion := product ("=" product)*
    def parse_assertion(self) -> Union[Product, IdentityAssertion]:
        """Parse the whole input.

        Returns:
            Union[Product, IdentityAssertion]: A bare product when there is no
                ``=``, otherwise the assertion of all branches.
        """
        branches = [self.parse_product()]
        while self.peek().kind == "=":
            self.advance()
            branches.append(self.parse_product())
        if self.peek().kind != "eof":
            raise self.fail('"="', *ATOM_STARTS, "end of input")
        if len(branches) == 1:
            return branches[0]
        return IdentityAssertion(tuple(branches))

    # product := atom+
    def parse_product(self) -> Product:
        if not self.at_atom():
            raise self.fail(*ATOM_STARTS)
        factors = []
        while self.at_atom():
            factors.append(self.parse_atom())
        return Product(tuple(factors))

    def parse_atom(self) -> Atom:
        """Parse a metric or a vector literal; ``mat2`` bodies go to
        :meth:`parse_matrix_body`.

        Raises:
            ArityError: If a vector has the wrong number of entries.
        """
        token = self.advance()
        if token.kind == "metric":
            return Metric(token.text)
        self.expect("(")
        if token.text == "mat2":
            return self.parse_matrix_body(token)
        arity = HEAD_ARITY[token.text]
        entries = [self.parse_poly()]
        while self.peek().kind == ",":
            self.advance()
            entries.append(self.parse_poly())
        if self.peek().kind != ")":
            raise self.fail('","' if len(entries) < arity else '")"')
        self.advance()
        if len(entries) != arity:
            raise ArityError(
                f"{token.text} needs {arity} entries, got {len(entries)}", token.position
            )
        cls = RowVec if token.text.startswith("row") else ColVec
        return cls(tuple(entries))

    def parse_matrix_body(self, head: Token) -> MatLit:
        """Parse ``p,q; r,s)`` after ``mat2(``.

        Args:
            head (Token): The ``mat2`` token, used to position arity errors.
        """
        rows = [[self.parse_poly()]]
        while True:
            kind = self.peek().kind
            if kind == ",":
                self.advance()
                rows[-1].append(self.parse_poly())
            elif kind == ";":
                self.advance()
                rows.append([self.parse_poly()])
            elif kind == ")":
                self.advance()
                break
            elif len(rows[-1]) < 2:
                raise self.fail('","')
            elif len(rows) < 2:
                raise self.fail('";"')
            else:
                raise self.fail('")"')
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            shape = "x".join(str(n) for n in (len(rows), max(len(r) for r in rows)))
            raise ArityError(f"mat2 needs 2x2 entries, got {shape}", head.position)
        return MatLit(tuple(tuple(row) for row in rows))

    # poly := ["+" | "-"] term (("+" | "-") term)*
    def parse_poly(self) -> PolyLit:
        items = []
        sign = None
        if self.peek().kind in ("+", "-"):
            sign = self.advance().kind
        first = self.parse_term()
        items.append(Neg(first) if sign == "-" else first)
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            term = self.parse_term()
            items.append(Neg(term) if op == "-" else term)
        return items[0] if len(items) == 1 else Add(tuple(items))

    # term := factor (["*"] factor)*
    def parse_term(self) -> PolyLit:
        items = [self.parse_factor()]
        while True:
            kind = self.peek().kind
            if kind == "*":
                self.advance()
                items.append(self.parse_factor())
            elif kind in ("var", "("):
                items.append(self.parse_factor())
            else:
                break
        return items[0] if len(items) == 1 else Mul(tuple(items))

    # factor := base ["^" integer]
    def parse_factor(self) -> PolyLit:
        base = self.parse_base()
        if self.peek().kind == "^":
            self.advance()
            exponent = self.expect("int")
            return Pow(base, int(exponent.text))
        return base

    def parse_base(self) -> PolyLit:
        """Integer, variable or parenthesised polynomial."""
        token = self.peek()
        if token.kind == "int":
            self.advance()
            return Num(int(token.text))
        if token.kind == "var":
            self.advance()
            return Var(int(token.text[1:]))
        if token.kind == "(":
            self.advance()
            inner = self.parse_poly()
            self.expect(")")
            return inner
        raise self.fail("an integer", "a variable", '"("')


def parse(text: str) -> Union[Product, IdentityAssertion]:
    """Parse a product or an identity assertion.

    Raises:
        LexicalError: On characters outside the notation.
        NotationSyntaxError: When the tokens do not match the grammar.
        ArityError: When a vector or matrix has the wrong number of entries.
    """
    return Parser(text).parse_assertion()


def parse_poly(text: str) -> PolyLit:
    """Parse a bare polynomial literal such as ``a1 a2 + a2 a3 + a3 a1``."""
    parser = Parser(text)
    node = parser.parse_poly()
    if parser.peek().kind != "eof":
        raise parser.fail('"+"', '"-"', '"*"', "end of input")
    return node


# -- printer -----------------------------------------------------------------


def _wrap(node: PolyLit, *kinds) -> str:
    text = to_text(node)
    return f"({text})" if isinstance(node, kinds) else text


def to_text(node: ExprNode) -> str:
    """Canonical text of a node; ``parse(to_text(e)) == e`` for every product.

    Polynomials print with explicit ``*``; vectors as ``row2(p,q)``; matrices
    as ``mat2(p,q; r,s)``; products join atoms with one space and assertions
    join branches with ``" = "``.
    """
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return f"a{node.index}"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, Add, Neg)
    if isinstance(node, Add):
        pieces = [to_text(node.items[0]) if not isinstance(node.items[0], Add)
                  else _wrap(node.items[0], Add)]
        for item in node.items[1:]:
            if isinstance(item, Neg):
                pieces.append(" - " + _wrap(item.operand, Add, Neg))
            else:
                pieces.append(" + " + _wrap(item, Add))
        return "".join(pieces)
    if isinstance(node, Mul):
        return "*".join(_wrap(item, Add, Neg, Mul) for item in node.items)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, Add, Neg, Mul, Pow)}^{node.exponent}"
    if isinstance(node, RowVec):
        return f"row{len(node.entries)}(" + ",".join(to_text(e) for e in node.entries) + ")"
    if isinstance(node, ColVec):
        return f"col{len(node.entries)}(" + ",".join(to_text(e) for e in node.entries) + ")"
    if isinstance(node, MatLit):
        body = "; ".join(",".join(to_text(e) for e in row) for row in node.rows)
        return f"mat{len(node.rows)}({body})"
    if isinstance(node, Metric):
        return node.name
    if isinstance(node, Product):
        return " ".join(to_text(f) for f in node.factors)
    if isinstance(node, IdentityAssertion):
        return " = ".join(to_text(b) for b in node.branches)
    raise TypeError(f"Not a notation node: {node!r}")


# -- evaluation --------------------------------------------------------------


def poly_value(node: PolyLit) -> Polynomial:
    """Expand a polynomial literal in the polynomial ring."""
    if isinstance(node, Num):
        return Polynomial.constant(node.value)
    if isinstance(node, Var):
        return poly_var(node.index)
    if isinstance(node, Neg):
        return -poly_value(node.operand)
    if isinstance(node, Add):
        total = Polynomial.zero()
        for item in node.items:
            total = total + poly_value(item)
        return total
    if isinstance(node, Mul):
        result = Polynomial.one()
        for item in node.items:
            result = result * poly_value(item)
        return result
    if isinstance(node, Pow):
        return poly_value(node.base) ** node.exponent
    raise TypeError(f"Not a polynomial literal: {node!r}")


def atom_array(atom: Atom) -> np.ndarray:
    """The object array of an atom with its entries expanded."""
    if isinstance(atom, Metric):
        return (metric_m() if atom.name == "M" else metric_p5()).array
    if isinstance(atom, RowVec):
        return object_array([[poly_value(e) for e in atom.entries]])
    if isinstance(atom, ColVec):
        return object_array([[poly_value(e)] for e in atom.entries])
    if isinstance(atom, MatLit):
        return object_array([[poly_value(e) for e in row] for row in atom.rows])
    raise TypeError(f"Not an atom: {atom!r}")


def _shape_text(shape: Tuple[int, int]) -> str:
    return f"{shape[0]}x{shape[1]}"


def check_dimensions(product: Product) -> None:
    """Check that the atoms of a product chain to a 1x1 result.

    Raises:
        DimensionError: Naming the first adjacent pair that does not chain,
            or stating the shape of a product that is not a scalar.
    """
    shape = None
    previous = None
    for atom in product.factors:
        current = _atom_shape(atom)
        if shape is not None and shape[1] != current[0]:
            pair = (to_text(previous), to_text(atom))
            raise DimensionError(
                f"cannot multiply {pair[0]} by {pair[1]}: "
                f"{_shape_text(shape)} against {_shape_text(current)}",
                pair,
            )
        shape = current if shape is None else (shape[0], current[1])
        previous = atom
    if shape != (1, 1):
        raise DimensionError(
            f"product is {_shape_text(shape)}, not a scalar; it needs a row vector "
            f"on the left and a column vector on the right"
        )


def _atom_shape(atom: Atom) -> Tuple[int, int]:
    if isinstance(atom, Metric):
        return (2, 2) if atom.name == "M" else (5, 5)
    if isinstance(atom, RowVec):
        return (1, len(atom.entries))
    if isinstance(atom, ColVec):
        return (len(atom.entries), 1)
    return (len(atom.rows), len(atom.rows[0]))


def expand(node: Union[Product, IdentityAssertion]) -> Polynomial:
    """The canonical polynomial of a product.

    Args:
        node: A product. An identity assertion with a single branch is also
            accepted.

    Raises:
        DimensionError: If the product does not chain to a scalar.
        ConwayTableError: If ``node`` asserts two or more products equal.
    """
    if isinstance(node, IdentityAssertion):
        if len(node.branches) != 1:
            raise ConwayTableError("expand takes one product; use check_identity for assertions")
        node = node.branches[0]
    check_dimensions(node)
    result = chain_product([atom_array(a) for a in node.factors])[0, 0]
    return result if isinstance(result, Polynomial) else Polynomial.constant(result)


@dataclass(frozen=True)
class IdentityCheck:
    """Result of expanding every branch of an identity assertion.

    Attributes:
        branches (Tuple[Polynomial, ...]): Expansion of each branch, in order.
        differences (Tuple[Tuple[int, Polynomial], ...]): For every branch that
            differs from the first, its index and ``branch - first``.
    """

    branches: Tuple[Polynomial, ...]
    differences: Tuple[Tuple[int, Polynomial], ...]

    @property
    def agree(self) -> bool:
        return not self.differences


def check_identity(node: Union[Product, IdentityAssertion]) -> IdentityCheck:
    """Expand every branch and compare each with the first."""
    branches = node.branches if isinstance(node, IdentityAssertion) else (node,)
    values = tuple(expand(b) for b in branches)
    differences = tuple(
        (i, value - values[0]) for i, value in enumerate(values) if i and value != values[0]
    )
    if differences:
        logger.debug("identity %s: %d branch(es) differ", to_text(node), len(differences))
    return IdentityCheck(values, differences)


# -- structure ---------------------------------------------------------------


def iter_nodes(node: ExprNode) -> Iterator[ExprNode]:
    """Pre-order walk over a node and all its descendants."""
    yield node
    children = ()
    if isinstance(node, Neg):
        children = (node.operand,)
    elif isinstance(node, (Add, Mul)):
        children = node.items
    elif isinstance(node, Pow):
        children = (node.base,)
    elif isinstance(node, (RowVec, ColVec)):
        children = node.entries
    elif isinstance(node, MatLit):
        children = tuple(e for row in node.rows for e in row)
    elif isinstance(node, Product):
        children = node.factors
    elif isinstance(node, IdentityAssertion):
        children = node.branches
    for child in children:
        yield from iter_nodes(child)


def variables(node: ExprNode) -> Tuple[int, ...]:
    """Sorted indices of the variables written anywhere in the node."""
    return tuple(sorted({n.index for n in iter_nodes(node) if isinstance(n, Var)}))


def to_chain(product: Product) -> Optional[Chain2]:
    """Recognise ``row2 M (mat2 M)* col2`` and return it as a :class:`Chain2`.

    Returns ``None`` for any other shape, including 3-tangle products.
    """
    factors = product.factors
    if len(factors) < 3 or len(factors) % 2 == 0:
        return None
    first, last = factors[0], factors[-1]
    if not (isinstance(first, RowVec) and len(first.entries) == 2):
        return None
    if not (isinstance(last, ColVec) and len(last.entries) == 2):
        return None
    metrics = factors[1::2]
    interior = factors[2:-1:2]
    if any(m != Metric("M") for m in metrics):
        return None
    if not all(isinstance(m, MatLit) for m in interior):
        return None
    return Chain2(
        Vec2(tuple(poly_value(e) for e in first.entries), Orientation.ROW),
        tuple(Mat2(tuple(tuple(poly_value(e) for e in row) for row in m.rows)) for m in interior),
        Vec2(tuple(poly_value(e) for e in last.entries), Orientation.COLUMN),
    )


def vectors(node: ExprNode) -> List[PolyVector]:
    """Every vector literal in the node, evaluated, in order of appearance."""
    found = []
    for n in iter_nodes(node):
        if isinstance(n, (RowVec, ColVec)):
            orientation = Orientation.ROW if isinstance(n, RowVec) else Orientation.COLUMN
            found.append(PolyVector(tuple(poly_value(e) for e in n.entries), orientation))
    return found
