import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conway_table.exceptions import InvalidVariableError, MissingVariableError
from conway_table.polyring import (
    Monomial,
    Polynomial,
    all_ones,
    is_unit_multilinear,
    poly_var,
    term_count,
)

from .strategies import monomials, points, polynomials

a1, a2, a3, a4 = (poly_var(j) for j in range(1, 5))


def to_sympy(p: Polynomial):
    return sympy.sympify(p.render().replace("^", "**"))


class TestCanonicalForm:
    def test_trefoil_renders_in_graded_order(self):
        trefoil = a1 * a2 + a2 * a3 + a3 * a1
        assert trefoil.render() == "a1*a2 + a1*a3 + a2*a3"

    def test_constant_comes_first(self):
        assert str(1 + a1 * a2) == "1 + a1*a2"

    def test_signs_and_exponents(self):
        assert str(a1 - 2 * a2**3) == "a1 - 2*a2^3"
        assert str(-a1) == "-a1"
        assert str(a1 * a1) == "a1^2"

    def test_zero(self):
        assert str(a1 - a1) == "0"
        assert (a1 - a1).is_zero()
        assert not Polynomial.zero()

    def test_equal_to_int(self):
        assert (a1 - a1 + 3) == 3
        assert Polynomial.constant(0) == Polynomial.zero()

    def test_repr(self):
        assert repr(a1 + 1) == "Polynomial('1 + a1')"

    def test_from_terms_combines(self):
        mono = Monomial.from_mapping({1: 1})
        assert Polynomial.from_terms([(mono, 2), (mono, -2)]).is_zero()

    def test_hashable(self):
        assert len({a1 + a2, a2 + a1, a1}) == 2

    @given(
        terms=st.lists(st.tuples(monomials, st.integers(min_value=-5, max_value=5)), max_size=6)
        .flatmap(lambda xs: st.tuples(st.just(xs), st.permutations(xs)))
    )
    @settings(max_examples=200, deadline=None)
    def test_construction_order_does_not_matter(self, terms):
        original, shuffled = terms
        p = Polynomial.from_terms(original)
        q = Polynomial.from_terms(shuffled)
        assert p == q
        assert p.render() == q.render()
        assert hash(p) == hash(q)

    @given(ps=st.lists(polynomials, min_size=1, max_size=5).flatmap(
        lambda xs: st.tuples(st.just(xs), st.permutations(xs))
    ))
    @settings(max_examples=100)
    def test_sum_order_does_not_matter(self, ps):
        original, shuffled = ps
        zero = Polynomial.zero()
        assert sum(original, zero).render() == sum(shuffled, zero).render()


class TestVariables:
    @pytest.mark.parametrize("bad", [0, -1, True, 1.0])
    def test_invalid_index(self, bad):
        with pytest.raises(InvalidVariableError):
            poly_var(bad)

    def test_monomial_needs_sorted_variables(self):
        with pytest.raises(ValueError):
            Monomial(((2, 1), (1, 1)))

    def test_variables_and_degree(self):
        p = a3 * a1**2 + a4
        assert p.variables() == (1, 3, 4)
        assert p.degree() == 3
        assert Polynomial.zero().degree() == -1


class TestEvaluate:
    def test_trefoil_at_point(self):
        trefoil = a1 * a2 + a2 * a3 + a3 * a1
        assert trefoil.evaluate({1: 2, 2: 3, 3: 5}) == 31

    def test_seed_value_is_term_count(self):
        trefoil = a1 * a2 + a2 * a3 + a3 * a1
        assert trefoil.evaluate(all_ones(trefoil)) == term_count(trefoil) == 3

    def test_missing_variable_names_lowest(self):
        with pytest.raises(MissingVariableError) as info:
            (a1 * a2 + a3).evaluate({1: 1})
        assert info.value.variable == 2
        assert "a2" in str(info.value)

    def test_extra_keys_ignored(self):
        assert (a1 + 1).evaluate({1: 4, 7: 100}) == 5

    def test_big_integers(self):
        assert (a1**5).evaluate({1: 2**40}) == 2**200

    def test_coefficients(self):
        p = 3 + a1 * a2 - 2 * a3**2
        assert p.coefficient(Monomial.from_mapping({1: 1, 2: 1})) == 1
        assert p.coefficient(Monomial.from_mapping({3: 2})) == -2
        assert p.coefficient(Monomial.from_mapping({3: 1})) == 0
        assert p.constant_term() == 3
        assert (a1 * a2).constant_term() == 0

    def test_value_at_zero_is_constant_term(self):
        p = 1 + a1 * a2
        assert p.evaluate({1: 0, 2: 0}) == p.constant_term() == 1

    @given(p=polynomials)
    @settings(max_examples=200)
    def test_value_at_zero_is_constant_term_for_any_polynomial(self, p):
        assert p.evaluate({var: 0 for var in p.variables()}) == p.constant_term()


class TestMultilinear:
    def test_unit_multilinear(self):
        assert is_unit_multilinear(1 + a1 * a2)
        assert not is_unit_multilinear(a1 * a1)
        assert not is_unit_multilinear(2 * a1)
        assert not is_unit_multilinear(a1 - a2)


class TestSubstitute:
    def test_rename(self):
        assert (a1 * a2).substitute({1: a3}) == a2 * a3

    def test_polynomial_image(self):
        assert (a1**2).substitute({1: a2 + 1}) == a2 * a2 + 2 * a2 + 1

    def test_integer_image(self):
        assert (a1 * a2 + a2).substitute({2: 0}) == 0


class TestRingLaws:
    @given(p=polynomials, q=polynomials)
    @settings(max_examples=200)
    def test_commutative(self, p, q):
        assert p + q == q + p
        assert p * q == q * p

    @given(p=polynomials, q=polynomials, r=polynomials)
    @settings(max_examples=200, deadline=None)
    def test_associative(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)

    @given(p=polynomials, q=polynomials, r=polynomials)
    @settings(max_examples=200, deadline=None)
    def test_distributive(self, p, q, r):
        assert p * (q + r) == p * q + p * r

    @given(p=polynomials)
    @settings(max_examples=200)
    def test_identities_and_inverse(self, p):
        assert p + 0 == p
        assert p * 1 == p
        assert p * 0 == 0
        assert (p - p).is_zero()

    @given(p=polynomials, q=polynomials, point=points)
    @settings(max_examples=200)
    def test_evaluation_is_a_homomorphism(self, p, q, point):
        assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)

    @given(p=polynomials, q=polynomials)
    @settings(max_examples=30, deadline=None)
    def test_product_matches_sympy(self, p, q):
        assert sympy.expand(to_sympy(p) * to_sympy(q) - to_sympy(p * q)) == 0

    @given(p=polynomials)
    @settings(max_examples=200, deadline=None)
    def test_power_is_repeated_product(self, p):
        assert p**3 == p * p * p
        assert p**0 == 1

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            a1 ** -1
