"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from conway_table.notation import (
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
)
from conway_table.polyring import Monomial, Polynomial
from conway_table.tangle2 import Chain2, Mat2, Vec2

monomials = st.dictionaries(
    st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=3), max_size=3
).map(Monomial.from_mapping)

polynomials = st.dictionaries(monomials, st.integers(min_value=-5, max_value=5), max_size=4).map(
    Polynomial.from_dict
)

points = st.fixed_dictionaries({j: st.integers(min_value=-20, max_value=20) for j in range(1, 5)})

mat2s = st.tuples(polynomials, polynomials, polynomials, polynomials).map(lambda t: Mat2.of(*t))

chains = st.builds(
    Chain2,
    st.tuples(polynomials, polynomials).map(lambda t: Vec2.row(*t)),
    st.lists(mat2s, max_size=4).map(tuple),
    st.tuples(polynomials, polynomials).map(lambda t: Vec2.column(*t)),
)


def _extend(children):
    several = st.lists(children, min_size=2, max_size=3).map(tuple)
    return st.one_of(
        children.map(Neg),
        several.map(Add),
        several.map(Mul),
        st.builds(Pow, children, st.integers(min_value=0, max_value=3)),
    )


poly_literals = st.recursive(
    st.one_of(
        st.integers(min_value=0, max_value=12).map(Num),
        st.integers(min_value=1, max_value=9).map(Var),
    ),
    _extend,
    max_leaves=8,
)


def _entries(n):
    return st.lists(poly_literals, min_size=n, max_size=n).map(tuple)


atoms = st.one_of(
    st.sampled_from([Metric("M"), Metric("P5")]),
    st.sampled_from([2, 5]).flatmap(lambda n: _entries(n).map(RowVec)),
    st.sampled_from([2, 5]).flatmap(lambda n: _entries(n).map(ColVec)),
    st.tuples(_entries(2), _entries(2)).map(MatLit),
)

products = st.lists(atoms, min_size=1, max_size=5).map(lambda xs: Product(tuple(xs)))

expressions = st.one_of(
    products,
    st.lists(products, min_size=2, max_size=3).map(lambda xs: IdentityAssertion(tuple(xs))),
)
