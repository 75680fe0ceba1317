"""3-Tangle Module.

A 3-tangle (six free ends) is represented by a 5-vector of polynomials. Two
3-tangles are glued with the symmetric 5x5 metric

    [[0, 0, 0, 0, 1],
     [0, 0, 1, 1, 0],
     [0, 1, 0, 1, 0],
     [0, 1, 1, 0, 0],
     [1, 0, 0, 0, 0]]

Only the interior product ``u . P5 . v`` is provided; there is no
composition algebra of 3-tangles here.

Example:
    >>> from conway_table.polyring import poly_var
    >>> a1, a2, a3, a4, a5, a6 = (poly_var(j) for j in range(1, 7))
    >>> u = Vec5.row(a1 * a3 * a5, a3 * a5, a5 * a1, a1 * a3, a1 + a3 + a5)
    >>> v = Vec5.column(a2 * a4 * a6, a4 * a6, a6 * a2, a2 * a4, a2 + a4 + a6)
    >>> bilinear(u, v).term_count()
    12
"""

import itertools
import logging
from dataclasses import dataclass
from typing import ClassVar, Dict, Iterable, List, Tuple

from .exceptions import OrientationError
from .matrices import PolyMatrix, PolyVector, as_poly, chain_product
from .polyring import Polynomial, poly_var

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Vec5(PolyVector):
    """A 3-tangle vector."""

    size: ClassVar[int] = 5


@dataclass(frozen=True)
class Mat5(PolyMatrix):
    """A 5x5 polynomial matrix."""

    size: ClassVar[int] = 5


_P5_ROWS = (
    (0, 0, 0, 0, 1),
    (0, 0, 1, 1, 0),
    (0, 1, 0, 1, 0),
    (0, 1, 1, 0, 0),
    (1, 0, 0, 0, 0),
)


def metric_p5() -> Mat5:
    """The 3-tangle metric."""
    return Mat5(_P5_ROWS)


def bilinear(u: Vec5, v: Vec5) -> Polynomial:
    """Interior product ``u^T . P5 . v`` of two 3-tangle vectors.

    Equals ``u1 v5 + u2 (v3 + v4) + u3 (v2 + v4) + u4 (v2 + v3) + u5 v1``.

    Args:
        u (Vec5): Left vector; a column vector is used transposed.
        v (Vec5): Right vector, in column orientation.

    Raises:
        OrientationError: If ``v`` is a row vector.
    """
    if v.is_row:
        raise OrientationError("bilinear needs a column vector on the right")
    left = u if u.is_row else u.transpose()
    return as_poly(chain_product([left.array, metric_p5().array, v.array])[0, 0])


def _rename(entries: Tuple[Polynomial, ...], mapping: Dict[int, int]) -> Tuple[str, ...]:
    images = {old: poly_var(new) for old, new in mapping.items()}
    return tuple(e.substitute(images).render() for e in entries)


def canonical_key(vector: PolyVector) -> Tuple[str, ...]:
    """Representative of a vector under renaming of its variables.

    Variables are renamed onto ``a1..ak`` in every possible order and the
    lexicographically smallest rendering is kept. Orientation is ignored.
    """
    used = sorted({var for e in vector.entries for var in e.variables()})
    targets = range(1, len(used) + 1)
    return min(
        _rename(vector.entries, dict(zip(used, order)))
        for order in itertools.permutations(targets)
    )


def classify_vectors(vectors: Iterable[PolyVector]) -> List[List[PolyVector]]:
    """Group vectors that differ only by a renaming of variables.

    Returns:
        List[List[PolyVector]]: Classes in order of first appearance; each
            class keeps its members in input order.
    """
    classes: Dict[Tuple[str, ...], List[PolyVector]] = {}
    for vector in vectors:
        classes.setdefault(canonical_key(vector), []).append(vector)
    logger.debug("classified vectors into %d classes", len(classes))
    return list(classes.values())
