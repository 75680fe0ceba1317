"""Independent Verification Module.

A second path to every Conway function that shares nothing with the
polynomial ring but the parse tree:

- :func:`naive_expand` distributes a product into a flat list of
  ``(coefficient, variables)`` terms and combines like terms only once, at
  the end.
- :func:`point_check` tests an identity at random integer points with exact
  big-integer matrix arithmetic.

Equal polynomials always pass :func:`point_check`; unequal ones pass a single
trial with probability at most ``degree / 2**16``.

Example:
    >>> from conway_table.notation import expand, parse
    >>> node = parse("row2(a1,1) M mat2(0,a2;a2,1) M col2(a3,1)")
    >>> terms_equal(naive_expand(node), expand(node))
    True
    >>> point_check(parse("row2(1,a1) M col2(a2,1) = row2(a1,1) M col2(1,a2)"), trials=10)
    True
"""

import logging
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .matrices import chain_product, object_array
from .notation import (
    Add,
    ColVec,
    IdentityAssertion,
    MatLit,
    Metric,
    Mul,
    Neg,
    Num,
    Pow,
    Product,
    RowVec,
    Var,
    check_dimensions,
    variables,
)
from .polyring import Polynomial

logger = logging.getLogger(__name__)

# One term: coefficient and the ascending multiset of its variable indices.
Term = Tuple[int, Tuple[int, ...]]

POINT_LOW = 1
POINT_HIGH = 2**16

_METRIC_ROWS = {
    "M": ((0, 1), (1, 0)),
    "P5": (
        (0, 0, 0, 0, 1),
        (0, 0, 1, 1, 0),
        (0, 1, 0, 1, 0),
        (0, 1, 1, 0, 0),
        (1, 0, 0, 0, 0),
    ),
}


def _constant_terms(value: int) -> List[Term]:
    return [(value, ())] if value else []


def _times(left: List[Term], right: List[Term]) -> List[Term]:
    out = []
    for c1, v1 in left:
        for c2, v2 in right:
            out.append((c1 * c2, tuple(sorted(v1 + v2))))
    return out


def literal_terms(node) -> List[Term]:
    """Distribute a polynomial literal without combining like terms."""
    if isinstance(node, Num):
        return _constant_terms(node.value)
    if isinstance(node, Var):
        return [(1, (node.index,))]
    if isinstance(node, Neg):
        return [(-c, v) for c, v in literal_terms(node.operand)]
    if isinstance(node, Add):
        out = []
        for item in node.items:
            out.extend(literal_terms(item))
        return out
    if isinstance(node, Mul):
        out = [(1, ())]
        for item in node.items:
            out = _times(out, literal_terms(item))
        return out
    if isinstance(node, Pow):
        base = literal_terms(node.base)
        out = [(1, ())]
        for _ in range(node.exponent):
            out = _times(out, base)
        return out
    raise TypeError(f"Not a polynomial literal: {node!r}")


def _atom_terms(atom) -> List[List[List[Term]]]:
    if isinstance(atom, Metric):
        return [[_constant_terms(x) for x in row] for row in _METRIC_ROWS[atom.name]]
    if isinstance(atom, RowVec):
        return [[literal_terms(e) for e in atom.entries]]
    if isinstance(atom, ColVec):
        return [[literal_terms(e)] for e in atom.entries]
    if isinstance(atom, MatLit):
        return [[literal_terms(e) for e in row] for row in atom.rows]
    raise TypeError(f"Not an atom: {atom!r}")


def naive_expand(node: Union[Product, IdentityAssertion]) -> List[Term]:
    """Fully distributed term list of a product, merged once at the end.

    Args:
        node: A product, or an assertion whose first branch is expanded.

    Returns:
        List[Term]: Merged terms in the same order as the canonical
            polynomial (degree, then ascending variables).

    Raises:
        DimensionError: If the product does not chain to a scalar.
    """
    product = node.branches[0] if isinstance(node, IdentityAssertion) else node
    check_dimensions(product)
    acc = None
    for atom in product.factors:
        block = _atom_terms(atom)
        if acc is None:
            acc = block
            continue
        inner = len(block)
        acc = [
            [
                [t for k in range(inner) for t in _times(acc[i][k], block[k][j])]
                for j in range(len(block[0]))
            ]
            for i in range(len(acc))
        ]
    return merge_terms(acc[0][0])


def merge_terms(terms: Sequence[Term]) -> List[Term]:
    """Combine like terms, drop zero coefficients and sort canonically."""
    merged: Dict[Tuple[int, ...], int] = {}
    for coefficient, variables_ in terms:
        key = tuple(sorted(variables_))
        merged[key] = merged.get(key, 0) + coefficient
    return sorted(
        ((c, v) for v, c in merged.items() if c),
        key=lambda term: (len(term[1]), term[1]),
    )


def terms_equal(terms: Sequence[Term], polynomial: Polynomial) -> bool:
    """Whether a merged term list is exactly the given canonical polynomial."""
    expected = [(coef, mono.sort_key()[1]) for mono, coef in polynomial.terms]
    return merge_terms(terms) == expected


def literal_value(node, point: Dict[int, int]) -> int:
    """Value of a polynomial literal at an integer point."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return point[node.index]
    if isinstance(node, Neg):
        return -literal_value(node.operand, point)
    if isinstance(node, Add):
        return sum(literal_value(item, point) for item in node.items)
    if isinstance(node, Mul):
        value = 1
        for item in node.items:
            value *= literal_value(item, point)
        return value
    if isinstance(node, Pow):
        return literal_value(node.base, point) ** node.exponent
    raise TypeError(f"Not a polynomial literal: {node!r}")


def _atom_values(atom, point: Dict[int, int]) -> np.ndarray:
    if isinstance(atom, Metric):
        return object_array(_METRIC_ROWS[atom.name])
    if isinstance(atom, RowVec):
        return object_array([[literal_value(e, point) for e in atom.entries]])
    if isinstance(atom, ColVec):
        return object_array([[literal_value(e, point)] for e in atom.entries])
    return object_array([[literal_value(e, point) for e in row] for row in atom.rows])


def product_value(product: Product, point: Dict[int, int]) -> int:
    """Value of a product at an integer point, by plain matrix arithmetic."""
    check_dimensions(product)
    return int(chain_product([_atom_values(a, point) for a in product.factors])[0, 0])


def point_check(
    node: Union[Product, IdentityAssertion], trials: int = 100, seed: int = 0
) -> bool:
    """Test that all branches agree at random integer points.

    Every variable is drawn uniformly from ``[1, 2**16]`` by a generator
    seeded with ``seed``, so a failing run can be replayed.

    Args:
        node: The assertion to test; a single product passes trivially.
        trials (int): Number of random points, at least 1.
        seed (int): Seed of the point generator.

    Returns:
        bool: True iff every branch has the same value at every point.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    branches = node.branches if isinstance(node, IdentityAssertion) else (node,)
    names = variables(node)
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        draws = rng.integers(POINT_LOW, POINT_HIGH, size=len(names), endpoint=True)
        point = {j: int(x) for j, x in zip(names, draws)}
        values = [product_value(b, point) for b in branches]
        if any(v != values[0] for v in values[1:]):
            logger.debug("point check failed on trial %d at %s", trial, point)
            return False
    return True
