"""Error hierarchy for the Conway table engine.

Every error raised by the library derives from :class:`ConwayTableError` and
from :class:`ValueError`, so callers that only catch ``ValueError`` keep
working. Verification failures are never raised: they are reported as data.
"""

from typing import Optional, Tuple


class ConwayTableError(ValueError):
    """Base class of all library errors."""


class InvalidVariableError(ConwayTableError):
    """A variable index below 1 was requested."""


class MissingVariableError(ConwayTableError):
    """An evaluation was asked for without a value for some variable.

    Attributes:
        variable (int): Index ``j`` of the first uncovered variable ``a_j``.
    """

    def __init__(self, variable: int):
        self.variable = variable
        super().__init__(f"No value assigned to variable a{variable}")


class OrientationError(ConwayTableError):
    """A row vector was used where a column vector is required, or vice versa."""


class NotationError(ConwayTableError):
    """Base class of errors raised while reading factorization text.

    Attributes:
        position (int): Zero-based character offset of the problem.
    """

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at offset {position}")


class LexicalError(NotationError):
    """The text contains a character that starts no token."""


class NotationSyntaxError(NotationError):
    """The token sequence does not match the grammar.

    Attributes:
        expected (Tuple[str, ...]): Tokens that would have been accepted.
    """

    def __init__(self, message: str, position: int, expected: Tuple[str, ...] = ()):
        self.expected = tuple(expected)
        super().__init__(message, position)


class ArityError(NotationError):
    """A vector or matrix literal has the wrong number of entries."""


class DimensionError(ConwayTableError):
    """Adjacent factors of a product do not chain dimensionally.

    Attributes:
        pair (Optional[Tuple[str, str]]): Printed forms of the offending
            adjacent atoms, when the problem is between two atoms.
    """

    def __init__(self, message: str, pair: Optional[Tuple[str, str]] = None):
        self.pair = pair
        super().__init__(message)


class RegistryError(ConwayTableError):
    """Base class of registry loading errors."""


class RegistrySchemaError(RegistryError):
    """A registry document does not match the record schema.

    Attributes:
        field (str): Name of the offending field.
        index (Optional[int]): Position of the offending record, if any.
    """

    def __init__(self, message: str, field: str, index: Optional[int] = None):
        self.field = field
        self.index = index
        where = f"record {index}, " if index is not None else ""
        super().__init__(f"{where}field '{field}': {message}")


class DuplicateFamilyError(RegistryError):
    """Two registry records share one id."""


class UnknownFamilyError(RegistryError, KeyError):
    """A family id was requested that the registry does not contain."""

    def __str__(self) -> str:
        return ValueError.__str__(self)
