"""Polynomial vectors and matrices.

Small dense vectors and matrices whose entries are :class:`Polynomial` values.
Products are delegated to numpy object arrays, so entries keep their exact
arithmetic. The 2-tangle and 3-tangle modules specialise these containers to
their fixed sizes.

Example:
    >>> from conway_table.polyring import poly_var
    >>> a1 = poly_var(1)
    >>> m = PolyMatrix(((0, a1), (a1, 1)))
    >>> print(m @ m)
    mat2(a1^2,a1; a1,1 + a1^2)
    >>> print(PolyVector.column(a1, 1).transpose())
    row2(a1,1)
"""

from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import ClassVar, Optional, Sequence, Tuple, Union

import numpy as np

from .polyring import Polynomial

Entry = Union[Polynomial, int]


class Orientation(Enum):
    ROW = "row"
    COLUMN = "column"


def as_poly(value: Entry) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(value)


def object_array(rows: Sequence[Sequence[Entry]]) -> np.ndarray:
    """Pack nested sequences into a 2-D numpy array of ``dtype=object``.

    Entries are stored one by one so numpy never tries to unpack them.
    """
    height, width = len(rows), len(rows[0]) if rows else 0
    array = np.empty((height, width), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            array[i, j] = value
    return array


def chain_product(arrays: Sequence[np.ndarray]) -> np.ndarray:
    """Left-to-right product of object arrays."""
    return reduce(np.matmul, arrays)


@dataclass(frozen=True)
class PolyVector:
    """A row or column vector of polynomials.

    Attributes:
        entries (Tuple[Polynomial, ...]): The components, first to last.
        orientation (Orientation): Whether the vector is a row or a column.
    """

    entries: Tuple[Polynomial, ...]
    orientation: Orientation = Orientation.ROW

    size: ClassVar[Optional[int]] = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(as_poly(e) for e in self.entries))
        if self.size is not None and len(self.entries) != self.size:
            raise ValueError(
                f"{type(self).__name__} needs exactly {self.size} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def row(cls, *entries: Entry):
        return cls(tuple(entries), Orientation.ROW)

    @classmethod
    def column(cls, *entries: Entry):
        return cls(tuple(entries), Orientation.COLUMN)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def is_row(self) -> bool:
        return self.orientation is Orientation.ROW

    @property
    def array(self) -> np.ndarray:
        if self.is_row:
            return object_array([self.entries])
        return object_array([[e] for e in self.entries])

    def transpose(self):
        flipped = Orientation.COLUMN if self.is_row else Orientation.ROW
        return type(self)(self.entries, flipped)

    def __add__(self, other):
        if type(other) is not type(self) or other.orientation is not self.orientation:
            return NotImplemented
        summed = tuple(x + y for x, y in zip(self.entries, other.entries))
        return type(self)(summed, self.orientation)

    def __str__(self) -> str:
        kind = "row" if self.is_row else "col"
        return f"{kind}{self.dim}(" + ",".join(str(e) for e in self.entries) + ")"


@dataclass(frozen=True)
class PolyMatrix:
    """A rectangular matrix of polynomials.

    Attributes:
        rows (Tuple[Tuple[Polynomial, ...], ...]): Entries in row-major order.
    """

    rows: Tuple[Tuple[Polynomial, ...], ...]

    size: ClassVar[Optional[int]] = None

    def __post_init__(self):
        rows = tuple(tuple(as_poly(e) for e in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise ValueError("Matrix rows must all have the same length")
        if self.size is not None and (len(rows) != self.size or widths != {self.size}):
            raise ValueError(f"{type(self).__name__} must be {self.size}x{self.size}")

    @classmethod
    def from_array(cls, array: np.ndarray):
        return cls(tuple(tuple(as_poly(v) for v in row) for row in array.tolist()))

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def array(self) -> np.ndarray:
        return object_array(self.rows)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.rows[i][j]

    def transpose(self):
        return type(self)(tuple(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def __matmul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return type(self).from_array(self.array @ other.array)

    def __str__(self) -> str:
        body = "; ".join(",".join(str(e) for e in row) for row in self.rows)
        return f"mat{self.shape[0]}({body})"
