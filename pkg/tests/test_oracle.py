import pytest

from conway_table.exceptions import DimensionError
from conway_table.notation import IdentityAssertion, expand, parse
from conway_table.oracle import merge_terms, naive_expand, point_check, product_value, terms_equal

TREFOIL = "row2(a1,1) M mat2(0,a2;a2,1) M col2(a3,1)"
BORROMEAN = (
    "row5(a1+a3+a5, a3 a5, a5 a1, a1 a3, a1 a3 a5) P5 "
    "col5(1, a2, a4, a6, a2 a4 + a4 a6 + a6 a2)"
)


class TestNaiveExpand:
    def test_trefoil(self):
        assert naive_expand(parse(TREFOIL)) == [(1, (1, 2)), (1, (1, 3)), (1, (2, 3))]

    def test_zero(self):
        assert naive_expand(parse("row2(1,0) M col2(1,0)")) == []

    def test_borromean_has_sixteen_terms(self):
        terms = naive_expand(parse(BORROMEAN))
        assert len(terms) == 16
        assert terms_equal(terms, expand(parse(BORROMEAN)))

    def test_cancellation(self):
        assert naive_expand(parse("row2(a1, -a1) M col2(1, 1)")) == []

    def test_dimension_error(self):
        with pytest.raises(DimensionError):
            naive_expand(parse("row2(1,0) P5 col5(1,1,1,1,1)"))

    def test_matches_every_registry_expression(self, registry):
        for record in registry:
            for text in record.expressions:
                node = parse(text)
                assert terms_equal(naive_expand(node), expand(node)), text


class TestMergeTerms:
    def test_combines_and_sorts(self):
        terms = [(1, (2, 1)), (2, ()), (1, (1, 2)), (-2, ())]
        assert merge_terms(terms) == [(2, (1, 2))]

    def test_graded_order(self):
        assert merge_terms([(1, (1, 2)), (1, (3,)), (1, ())]) == [(1, ()), (1, (3,)), (1, (1, 2))]


class TestPointCheck:
    def test_value_at_point(self):
        assert product_value(parse(TREFOIL), {1: 2, 2: 3, 3: 5}) == 31

    def test_single_trial_identical_branches(self):
        node = parse(f"{TREFOIL} = {TREFOIL}")
        assert point_check(node, trials=1, seed=0)

    def test_registry_identities(self, registry):
        for record in registry:
            products = tuple(parse(text) for text in record.expressions)
            node = IdentityAssertion(products) if len(products) > 1 else products[0]
            assert point_check(node, trials=100, seed=1912), record.id

    def test_fault_injection(self, registry):
        record = registry.get("c5-whitehead-6")
        faulty = record.expressions[0].replace("a5 (a3 + a4) + 1", "a5 (a3 + a4) + 2")
        assert faulty != record.expressions[0]
        node = parse(" = ".join((faulty,) + record.expressions[1:]))
        assert not point_check(node, trials=100, seed=1912)
        assert not terms_equal(naive_expand(node.branches[0]), expand(node.branches[1]))

    def test_deterministic(self):
        node = parse("row2(1,a1) M col2(a2,1) = row2(a1,1) M col2(1,a2)")
        assert point_check(node, 10, seed=5) == point_check(node, 10, seed=5)

    def test_trials_must_be_positive(self):
        with pytest.raises(ValueError):
            point_check(parse(TREFOIL), trials=0)
