"""2-Tangle Algebra Module.

A 2-tangle (a knot fragment with four free ends) is represented by a
2-vector of polynomials, and a conway inserted between two tangles by a 2x2
matrix. Factors of a product are always separated by the metric

    M = [[0, 1],
         [1, 0]]

This module provides the metric, the four elementary conway matrices that
appear in the table, chain evaluation, and checkers for the commutation and
boundary identities satisfied by matrices of the shape ``[[A, B], [B, 0]]``.

Example:
    >>> from conway_table.polyring import poly_var
    >>> a1, a2, a3 = (poly_var(j) for j in (1, 2, 3))
    >>> chain = Chain2(Vec2.row(a1, 1), (elem(ElemKind.E_BOTTOM, a2),), Vec2.column(a3, 1))
    >>> print(chain_eval(chain))
    a1*a2 + a1*a3 + a2*a3
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, List, Sequence, Tuple

import numpy as np

from .exceptions import OrientationError
from .matrices import Entry, PolyMatrix, PolyVector, as_poly, chain_product
from .polyring import Monomial, Polynomial, poly_var

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Vec2(PolyVector):
    """A 2-tangle vector, e.g. ``(a1, 1)``."""

    size: ClassVar[int] = 2


@dataclass(frozen=True)
class Mat2(PolyMatrix):
    """A 2x2 polynomial matrix."""

    size: ClassVar[int] = 2

    @classmethod
    def of(cls, p: Entry, q: Entry, r: Entry, s: Entry) -> "Mat2":
        """The matrix ``[[p, q], [r, s]]``."""
        return cls(((p, q), (r, s)))


class ElemKind(Enum):
    """Position of the conway in an elementary matrix.

    The name says where the constant 1 (or 0) pattern leaves the conway:
    ``E_BOTTOM(a) = [[0, a], [a, 1]]``, ``E_TOP(a) = [[1, a], [a, 0]]``,
    ``E_LEFT(a) = [[a, 1], [1, 0]]`` and ``E_RIGHT(a) = [[0, 1], [1, a]]``.
    """

    E_BOTTOM = "bottom"
    E_TOP = "top"
    E_LEFT = "left"
    E_RIGHT = "right"


def metric_m() -> Mat2:
    """The 2-tangle metric ``[[0, 1], [1, 0]]``."""
    return Mat2.of(0, 1, 1, 0)


def elem(kind: ElemKind, a: Entry) -> Mat2:
    """Elementary conway matrix of the given kind."""
    if kind is ElemKind.E_BOTTOM:
        return Mat2.of(0, a, a, 1)
    if kind is ElemKind.E_TOP:
        return Mat2.of(1, a, a, 0)
    if kind is ElemKind.E_LEFT:
        return Mat2.of(a, 1, 1, 0)
    if kind is ElemKind.E_RIGHT:
        return Mat2.of(0, 1, 1, a)
    raise ValueError(f"Unknown elementary matrix kind {kind!r}")


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    """Plain matrix product ``x . y``.

    No metric is inserted; use :func:`through_metric` for ``x . M . y``.

    Args:
        x (Mat2): Left factor.
        y (Mat2): Right factor.

    Returns:
        Mat2: The product, entries in canonical form.
    """
    return Mat2.from_array(x.array @ y.array)


def vec_mat(v: Vec2, m: Mat2) -> Vec2:
    """Row vector times matrix."""
    if not v.is_row:
        raise OrientationError("vec_mat needs a row vector on the left")
    return Vec2.row(*(v.array @ m.array)[0])


def mat_vec(m: Mat2, v: Vec2) -> Vec2:
    """Matrix times column vector."""
    if v.is_row:
        raise OrientationError("mat_vec needs a column vector on the right")
    return Vec2.column(*(m.array @ v.array)[:, 0])


def dot(r: PolyVector, c: PolyVector) -> Polynomial:
    """Row vector times column vector (no metric inserted)."""
    if not r.is_row or c.is_row:
        raise OrientationError("dot needs a row vector times a column vector")
    if r.dim != c.dim:
        raise ValueError(f"Cannot contract a {r.dim}-vector with a {c.dim}-vector")
    return as_poly((r.array @ c.array)[0, 0])


@dataclass(frozen=True)
class Chain2:
    """A 2-tangle product ``row M m1 M m2 ... M column``.

    The metric is implicit: :func:`chain_eval` inserts it between every pair
    of adjacent factors.

    Attributes:
        row (Vec2): Left boundary vector (row orientation).
        interior (Tuple[Mat2, ...]): Matrices between the boundaries; may be empty.
        column (Vec2): Right boundary vector (column orientation).
    """

    row: Vec2
    interior: Tuple[Mat2, ...] = field(default_factory=tuple)
    column: Vec2 = None

    def __post_init__(self):
        object.__setattr__(self, "interior", tuple(self.interior))
        if self.column is None:
            raise ValueError("Chain2 needs a column vector")
        if not self.row.is_row:
            raise OrientationError("Chain2.row must be a row vector")
        if self.column.is_row:
            raise OrientationError("Chain2.column must be a column vector")

    def factors(self) -> List[np.ndarray]:
        """The arrays of the full product, metric included."""
        metric = metric_m().array
        arrays = [self.row.array, metric]
        for m in self.interior:
            arrays.extend([m.array, metric])
        arrays.append(self.column.array)
        return arrays

    def reversed(self) -> "Chain2":
        """The transposed chain: every factor transposed, boundaries swapped."""
        return Chain2(
            self.column.transpose(),
            tuple(m.transpose() for m in reversed(self.interior)),
            self.row.transpose(),
        )


def chain_eval(chain: Chain2) -> Polynomial:
    """Evaluate ``row . M . m1 . M . ... . M . column`` left to right."""
    return as_poly(chain_product(chain.factors())[0, 0])


# -- identities -------------------------------------------------------------


def shaped(a: Entry, b: Entry) -> Mat2:
    """``[[A, B], [B, 0]]``, the shape that commutes through the metric."""
    return Mat2.of(a, b, b, 0)


def swapped(a: Entry, b: Entry) -> Mat2:
    """``[[0, B], [B, A]]``, the shape obtained by conjugating with the metric."""
    return Mat2.of(0, b, b, a)


def commuting_product_closed_form(a1: Entry, b1: Entry, a2: Entry, b2: Entry) -> Mat2:
    """Closed form of ``[[A1, B1], [B1, 0]] M [[A2, B2], [B2, 0]]``."""
    a1, b1, a2, b2 = (as_poly(x) for x in (a1, b1, a2, b2))
    return shaped(a1 * b2 + a2 * b1, b1 * b2)


def swapped_product_closed_form(a1: Entry, b1: Entry, a2: Entry, b2: Entry) -> Mat2:
    """Closed form of ``[[0, B1], [B1, A1]] M [[0, B2], [B2, A2]]``."""
    a1, b1, a2, b2 = (as_poly(x) for x in (a1, b1, a2, b2))
    return swapped(a1 * b2 + a2 * b1, b1 * b2)


def through_metric(x: Mat2, y: Mat2) -> Mat2:
    """``x M y``."""
    return Mat2.from_array(chain_product([x.array, metric_m().array, y.array]))


def commutes_through_metric(x: Mat2, y: Mat2) -> bool:
    """Whether ``x M y == y M x`` for arbitrary 2x2 matrices."""
    return through_metric(x, y) == through_metric(y, x)


def check_commute(a1: Entry, b1: Entry, a2: Entry, b2: Entry) -> bool:
    """Check commutation of the ``[[A, B], [B, 0]]`` shape through the metric.

    Both the shape itself and its metric-conjugated form ``[[0, B], [B, A]]``
    must commute, and each product must equal its closed form.
    """
    x1, x2 = shaped(a1, b1), shaped(a2, b2)
    y1, y2 = swapped(a1, b1), swapped(a2, b2)
    direct = through_metric(x1, x2)
    conjugated = through_metric(y1, y2)
    return (
        direct == through_metric(x2, x1)
        and direct == commuting_product_closed_form(a1, b1, a2, b2)
        and conjugated == through_metric(y2, y1)
        and conjugated == swapped_product_closed_form(a1, b1, a2, b2)
    )


def _row_times(row: Sequence[Entry], *matrices: Mat2, metric_first: bool = True) -> Vec2:
    arrays = [Vec2.row(*row).array]
    for i, m in enumerate(matrices):
        if metric_first or i > 0:
            arrays.append(metric_m().array)
        arrays.append(m.array)
    return Vec2.row(*chain_product(arrays)[0])


def _times_column(column: Sequence[Entry], *matrices: Mat2, metric_last: bool = True) -> Vec2:
    arrays = []
    for i, m in enumerate(matrices):
        arrays.append(m.array)
        if metric_last or i < len(matrices) - 1:
            arrays.append(metric_m().array)
    arrays.append(Vec2.column(*column).array)
    return Vec2.column(*chain_product(arrays)[:, 0])


def check_boundary_lift(a1: Entry, b1: Entry, a2: Entry, b2: Entry) -> bool:
    """Check the row-lifting identities at the beginning of a product.

    ``(A1, B1) M [[0, A2], [A2, B2]] = (0, 1) [[0, A1], [A1, B1]] M [[0, A2], [A2, B2]]
    = (A2, B2) M [[0, A1], [A1, B1]]`` and the companion identity for the
    ``[[A, B], [B, 0]]`` shape with the prefix row ``(1, 0)``.
    """
    first = (
        _row_times((a1, b1), Mat2.of(0, a2, a2, b2)),
        _row_times((0, 1), Mat2.of(0, a1, a1, b1), Mat2.of(0, a2, a2, b2), metric_first=False),
        _row_times((a2, b2), Mat2.of(0, a1, a1, b1)),
    )
    second = (
        _row_times((a1, b1), shaped(a2, b2)),
        _row_times((1, 0), shaped(a1, b1), shaped(a2, b2), metric_first=False),
        _row_times((a2, b2), shaped(a1, b1)),
    )
    return all(v == first[0] for v in first) and all(v == second[0] for v in second)


def check_boundary_lift_end(a1: Entry, b1: Entry, a2: Entry, b2: Entry) -> bool:
    """The transposed boundary identities, at the end of a product."""
    first = (
        _times_column((a1, b1), Mat2.of(0, a2, a2, b2)),
        _times_column((0, 1), Mat2.of(0, a2, a2, b2), Mat2.of(0, a1, a1, b1), metric_last=False),
        _times_column((a2, b2), Mat2.of(0, a1, a1, b1)),
    )
    second = (
        _times_column((a1, b1), shaped(a2, b2)),
        _times_column((1, 0), shaped(a2, b2), shaped(a1, b1), metric_last=False),
        _times_column((a2, b2), shaped(a1, b1)),
    )
    return all(v == first[0] for v in first) and all(v == second[0] for v in second)


# -- identity suite ---------------------------------------------------------


@dataclass(frozen=True)
class IdentityResult:
    """Outcome of one identity over fresh symbols and random instantiations.

    Attributes:
        name (str): Short name of the identity.
        symbolic (bool): Holds with four fresh symbols.
        random_passed (int): Random instantiations that held.
        trials (int): Random instantiations attempted.
    """

    name: str
    symbolic: bool
    random_passed: int
    trials: int

    @property
    def holds(self) -> bool:
        return self.symbolic and self.random_passed == self.trials


def random_polynomial(
    rng: np.random.Generator,
    n_vars: int = 6,
    max_degree: int = 3,
    max_terms: int = 4,
    coef_range: int = 3,
) -> Polynomial:
    """Draw a small random polynomial in ``a1..a{n_vars}``."""
    terms = []
    for _ in range(int(rng.integers(0, max_terms, endpoint=True))):
        degree = int(rng.integers(0, max_degree, endpoint=True))
        exps = {}
        for var in rng.integers(1, n_vars, size=degree, endpoint=True):
            exps[int(var)] = exps.get(int(var), 0) + 1
        coef = int(rng.integers(-coef_range, coef_range, endpoint=True))
        terms.append((Monomial.from_mapping(exps), coef))
    return Polynomial.from_terms(terms)


def _direct_equals_closed(a1, b1, a2, b2) -> bool:
    return through_metric(shaped(a1, b1), shaped(a2, b2)) == commuting_product_closed_form(
        a1, b1, a2, b2
    )


def _swapped_equals_closed(a1, b1, a2, b2) -> bool:
    return through_metric(swapped(a1, b1), swapped(a2, b2)) == swapped_product_closed_form(
        a1, b1, a2, b2
    )


IDENTITIES = (
    ("commute", check_commute),
    ("closed-form-shaped", _direct_equals_closed),
    ("closed-form-swapped", _swapped_equals_closed),
    ("boundary-lift", check_boundary_lift),
    ("boundary-lift-end", check_boundary_lift_end),
)


def run_identity_suite(trials: int = 100, seed: int = 0) -> List[IdentityResult]:
    """Run every identity with fresh symbols and ``trials`` random instantiations.

    Args:
        trials (int): Random polynomial instantiations per identity.
        seed (int): Seed of the numpy generator drawing the instantiations.

    Returns:
        List[IdentityResult]: One result per identity, in a fixed order.
    """
    fresh = tuple(poly_var(j) for j in range(1, 5))
    results = []
    for name, check in IDENTITIES:
        rng = np.random.default_rng(seed)
        symbolic = check(*fresh)
        passed = sum(
            bool(check(*(random_polynomial(rng) for _ in range(4)))) for _ in range(trials)
        )
        logger.debug("identity %s: symbolic=%s random=%d/%d", name, symbolic, passed, trials)
        results.append(IdentityResult(name, symbolic, passed, trials))
    return results


def generic_pair_commutes() -> bool:
    """Whether two generic symbolic 2x2 matrices commute through the metric.

    This is False; the shapes handled by :func:`check_commute` are special.
    """
    x = Mat2.of(*(poly_var(j) for j in range(1, 5)))
    y = Mat2.of(*(poly_var(j) for j in range(5, 9)))
    return commutes_through_metric(x, y)
