"""Exact Sparse Multivariate Polynomial Module.

This module provides the polynomial ring every Conway function lives in:
integer coefficients of arbitrary precision over the variables
``a1, a2, ...`` (the conways). Values are immutable and kept in a canonical
form, so two polynomials are equal exactly when their printed forms are equal.

Terms are ordered graded-lexicographically: by total degree first, then by the
ascending list of variable indices (a variable repeated once per unit of its
exponent).

Example:
    >>> from conway_table.polyring import poly_var
    >>> a1, a2, a3 = (poly_var(j) for j in (1, 2, 3))
    >>> trefoil = a1 * a2 + a2 * a3 + a3 * a1
    >>> print(trefoil)
    a1*a2 + a1*a3 + a2*a3
    >>> trefoil.evaluate({1: 1, 2: 1, 3: 1})
    3
"""

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple, Union

from .exceptions import InvalidVariableError, MissingVariableError

# Index j of the conway a_j.
VarId = int


def _check_var(j: VarId) -> None:
    if isinstance(j, bool) or not isinstance(j, int) or j < 1:
        raise InvalidVariableError(f"Variable index must be a positive integer, got {j!r}")


@dataclass(frozen=True)
class Monomial:
    """A product of variables with positive exponents.

    Attributes:
        exponents (Tuple[Tuple[int, int], ...]): ``(variable, exponent)`` pairs
            sorted by variable. The empty tuple is the unit monomial.
    """

    exponents: Tuple[Tuple[VarId, int], ...] = ()

    def __post_init__(self):
        previous = 0
        for var, exp in self.exponents:
            _check_var(var)
            if var <= previous:
                raise ValueError("Monomial variables must be strictly increasing")
            if exp < 1:
                raise ValueError(f"Exponent of a{var} must be positive, got {exp}")
            previous = var

    @classmethod
    def from_mapping(cls, mapping: Mapping[VarId, int]) -> "Monomial":
        """Build a monomial from a ``variable -> exponent`` mapping, dropping zeros."""
        return cls(tuple(sorted((v, e) for v, e in mapping.items() if e != 0)))

    @property
    def degree(self) -> int:
        """Total degree, the sum of the exponents."""
        return sum(exp for _, exp in self.exponents)

    def variables(self) -> Tuple[VarId, ...]:
        """Indices of the variables, ascending."""
        return tuple(var for var, _ in self.exponents)

    def sort_key(self) -> Tuple[int, Tuple[VarId, ...]]:
        """Graded-lexicographic key.

        Returns:
            Tuple[int, Tuple[int, ...]]: The total degree, then the variable
                indices with each one repeated once per unit of its exponent.
                ``a1*a2^2`` has key ``(3, (1, 2, 2))``.
        """
        expanded = tuple(var for var, exp in self.exponents for _ in range(exp))
        return (len(expanded), expanded)

    def is_multilinear(self) -> bool:
        """True when no variable has an exponent above 1."""
        return all(exp == 1 for _, exp in self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        """Product of two monomials; exponents of shared variables add."""
        if not isinstance(other, Monomial):
            return NotImplemented
        merged = dict(self.exponents)
        for var, exp in other.exponents:
            merged[var] = merged.get(var, 0) + exp
        return Monomial.from_mapping(merged)

    def evaluate(self, assignment: Mapping[VarId, int]) -> int:
        """Exact value at an integer assignment.

        Args:
            assignment (Mapping[int, int]): Value of ``a_j`` keyed by ``j``.

        Raises:
            KeyError: If a variable has no value. :meth:`Polynomial.evaluate`
                checks the assignment first and raises
                :class:`MissingVariableError` instead.
        """
        return math.prod(assignment[var] ** exp for var, exp in self.exponents)

    def render(self) -> str:
        """Render as ``a1*a2^2``; the unit monomial renders as the empty string."""
        return "*".join(
            f"a{var}" if exp == 1 else f"a{var}^{exp}" for var, exp in self.exponents
        )


UNIT = Monomial()


@dataclass(frozen=True, eq=False)
class Polynomial:
    """An exact polynomial with integer coefficients in canonical form.

    Instances are normally built with :func:`poly_var`, :meth:`constant` and the
    arithmetic operators rather than by passing ``terms`` directly.

    Attributes:
        terms (Tuple[Tuple[Monomial, int], ...]): Nonzero ``(monomial,
            coefficient)`` pairs in canonical (graded lexicographic) order.
    """

    terms: Tuple[Tuple[Monomial, int], ...] = ()

    @classmethod
    def from_dict(cls, coefficients: Mapping[Monomial, int]) -> "Polynomial":
        """Build the canonical polynomial from a ``monomial -> coefficient`` mapping."""
        kept = [(m, c) for m, c in coefficients.items() if c != 0]
        kept.sort(key=lambda item: item[0].sort_key())
        return cls(tuple(kept))

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Monomial, int]]) -> "Polynomial":
        """Build a polynomial from possibly repeated terms, combining like ones."""
        acc: Dict[Monomial, int] = {}
        for mono, coef in terms:
            acc[mono] = acc.get(mono, 0) + coef
        return cls.from_dict(acc)

    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls.from_dict({UNIT: int(value)})

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.constant(1)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        """Number of nonzero terms."""
        return len(self.terms)

    def variables(self) -> Tuple[VarId, ...]:
        """Sorted indices of the variables occurring in the polynomial."""
        return tuple(sorted({var for mono, _ in self.terms for var in mono.variables()}))

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((mono.degree for mono, _ in self.terms), default=-1)

    def coefficient(self, monomial: Monomial) -> int:
        """Coefficient of ``monomial``; 0 when the term is absent.

        Args:
            monomial (Monomial): The term to look up.

        Returns:
            int: Its coefficient.
        """
        for mono, coef in self.terms:
            if mono == monomial:
                return coef
        return 0

    def constant_term(self) -> int:
        """Coefficient of the unit monomial, the value at the origin."""
        return self.coefficient(UNIT)

    def is_unit_multilinear(self) -> bool:
        """True when every coefficient is 1 and every exponent is at most 1."""
        return all(coef == 1 and mono.is_multilinear() for mono, coef in self.terms)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, assignment: Mapping[VarId, int]) -> int:
        """Evaluate exactly at an integer assignment of the variables.

        Args:
            assignment (Mapping[int, int]): Value of ``a_j`` keyed by ``j``.
                Extra keys are ignored.

        Returns:
            int: The exact value.

        Raises:
            MissingVariableError: If a variable of the polynomial has no value;
                the error names the lowest such index.
        """
        for var in self.variables():
            if var not in assignment:
                raise MissingVariableError(var)
        return sum(coef * mono.evaluate(assignment) for mono, coef in self.terms)

    def substitute(self, mapping: Mapping[VarId, Union["Polynomial", int]]) -> "Polynomial":
        """Replace variables by polynomials (or integers); unmapped variables stay."""
        result = Polynomial()
        for mono, coef in self.terms:
            term = Polynomial.constant(coef)
            rest = {}
            for var, exp in mono.exponents:
                if var in mapping:
                    term = term * (_coerce(mapping[var]) ** exp)
                else:
                    rest[var] = exp
            result = result + term * Polynomial.from_dict({Monomial.from_mapping(rest): 1})
        return result

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for mono, coef in other.terms:
            acc[mono] = acc.get(mono, 0) + coef
        return Polynomial.from_dict(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple((mono, -coef) for mono, coef in self.terms))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: Dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mono = m1 * m2
                acc[mono] = acc.get(mono, 0) + c1 * c2
        return Polynomial.from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if isinstance(exponent, bool) or not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {exponent!r}")
        result, base = Polynomial.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- text --------------------------------------------------------------

    def render(self) -> str:
        """Canonical text: ``1 + a1*a2``, ``a1 - 2*a2^3``, ``0``."""
        if not self.terms:
            return "0"
        pieces = []
        for i, (mono, coef) in enumerate(self.terms):
            magnitude = abs(coef)
            body = mono.render()
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            if i == 0:
                pieces.append(f"-{text}" if coef < 0 else text)
            else:
                pieces.append(f" - {text}" if coef < 0 else f" + {text}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial('{self.render()}')"


def _coerce(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Polynomial.constant(value)
    return NotImplemented


def poly_var(j: VarId) -> Polynomial:
    """The polynomial ``a_j``.

    Raises:
        InvalidVariableError: If ``j`` is not a positive integer.
    """
    _check_var(j)
    return Polynomial.from_dict({Monomial(((j, 1),)): 1})


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Sum of two polynomials.

    Args:
        p (Polynomial): First summand.
        q (Polynomial): Second summand.

    Returns:
        Polynomial: ``p + q`` in canonical form; cancelled terms are dropped.
    """
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Product of two polynomials, ``p * q``."""
    return p * q


def evaluate(p: Polynomial, assignment: Mapping[VarId, int]) -> int:
    """Module-level form of :meth:`Polynomial.evaluate`."""
    return p.evaluate(assignment)


def is_unit_multilinear(p: Polynomial) -> bool:
    """Whether ``p`` has every coefficient 1 and every exponent 1.

    Every Conway function of the table has this form.
    """
    return p.is_unit_multilinear()


def term_count(p: Polynomial) -> int:
    """Number of nonzero terms. For a Conway function this is the Conway number."""
    return p.term_count()


def all_ones(p: Polynomial) -> Dict[VarId, int]:
    """The seed assignment: every variable of ``p`` set to one."""
    return {var: 1 for var in p.variables()}
