import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsocle.monomial import (
    DimensionMismatch,
    MonomialIdeal,
    colon,
    colon_monomial,
    colon_mpower,
    compositions,
    contains,
    ideal_sum,
    intersect,
    is_subset,
    maximal_power,
    minimalize,
    power,
    product,
)

from oracles import colon_members, minimal, product_members


def ideal(*gens):
    return MonomialIdeal(gens)


def ideals(d, max_exp=3, max_gens=4):
    vec = st.tuples(*[st.integers(0, max_exp)] * d)
    return st.lists(vec, min_size=1, max_size=max_gens).map(lambda g: MonomialIdeal(g, d))


class TestMinimalize:
    def test_drops_divisible_generator(self):
        assert minimalize([(2, 0), (3, 1), (0, 2)]).generators == ((0, 2), (2, 0))

    def test_empty_is_zero_ideal(self):
        J = minimalize([], dim=2)
        assert J.is_zero() and len(J) == 0

    def test_one_absorbs_everything(self):
        J = minimalize([(0, 0), (1, 2)])
        assert J.is_unit() and J.generators == ((0, 0),)

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(DimensionMismatch):
            minimalize([(1, 0), (1, 0, 0)])

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            minimalize([(1, -1)])

    def test_large_input_takes_dense_path(self):
        pts = list(itertools.product(range(6), repeat=3))
        assert minimalize(pts).is_unit()
        shifted = [p for p in pts if sum(p) >= 4]
        assert set(minimalize(shifted).generators) == {p for p in pts if sum(p) == 4}

    @given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30), st.integers(0, 5)),
                    min_size=1, max_size=120))
    def test_matches_bruteforce_minimal(self, pts):
        assert set(minimalize(pts).generators) == minimal(pts)


class TestContains:
    J = ideal((2, 0), (0, 2))

    def test_member(self):
        assert contains(self.J, (2, 1))

    def test_non_member(self):
        assert not contains(self.J, (1, 1))

    def test_unit_contains_all(self):
        assert contains(MonomialIdeal.unit(2), (0, 0))
        assert (5, 7) in MonomialIdeal.unit(2)

    def test_zero_contains_nothing(self):
        assert not contains(MonomialIdeal.zero(2), (9, 9))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            contains(self.J, (1, 1, 1))


class TestArithmetic:
    def test_intersect_coprime_is_lcm(self):
        assert intersect(ideal((2, 0)), ideal((0, 3))) == ideal((2, 3))

    def test_power_of_maximal_ideal(self):
        m = ideal((1, 0), (0, 1))
        assert set(power(m, 3).generators) == {(3, 0), (2, 1), (1, 2), (0, 3)}

    def test_product_with_unit_is_identity(self):
        J = ideal((2, 1), (0, 3))
        assert product(J, MonomialIdeal.unit(2)) == J

    def test_power_zero_is_unit(self):
        assert power(ideal((1, 1)), 0).is_unit()

    def test_zero_conventions(self):
        J = ideal((1, 2), (3, 0))
        zero = MonomialIdeal.zero(2)
        assert ideal_sum(zero, J) == J
        assert product(zero, J).is_zero()
        assert intersect(J, zero).is_zero()
        with pytest.raises(ValueError):
            colon(J, zero)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            product(ideal((1, 0)), ideal((1, 0, 0)))

    def test_operators(self):
        J, K = ideal((1, 0)), ideal((0, 1))
        assert J + K == ideal_sum(J, K)
        assert J * K == ideal((1, 1))
        assert J & K == ideal((1, 1))
        assert J ** 2 == ideal((2, 0))
        assert J <= J + K and not (J + K <= J)


class TestColon:
    def test_squares_by_m_cubed(self):
        Q = ideal((2, 0, 0), (0, 2, 0), (0, 0, 2))
        assert colon(Q, maximal_power(3, 3)) == maximal_power(3, 1)

    def test_cubes_by_m_squared(self):
        # expected generators come from the brute-force colon oracle
        Q = ideal((3, 0), (0, 3))
        expect = minimal(colon_members(Q.generators, maximal_power(2, 2).generators, 3, 2))
        assert expect == {(3, 0), (2, 1), (1, 2), (0, 3)}
        assert colon(Q, maximal_power(2, 2)) == maximal_power(2, 3)

    def test_unit_once_m_power_inside(self):
        assert colon(ideal((2, 0), (0, 2)), maximal_power(2, 5)).is_unit()

    def test_by_unit_is_identity(self):
        J = ideal((3, 1), (0, 4))
        assert colon(J, MonomialIdeal.unit(2)) == J

    def test_colon_monomial(self):
        assert colon_monomial(ideal((3, 1), (0, 4)), (1, 2)) == ideal((2, 0), (0, 2))

    @pytest.mark.parametrize("a", [(2, 3), (3, 3), (2, 2, 2), (1, 4, 2)])
    @pytest.mark.parametrize("q", [0, 1, 2, 3, 6])
    def test_iterated_colon_matches_direct(self, a, q):
        Q = MonomialIdeal.diagonal(a)
        assert colon_mpower(Q, q) == colon(Q, maximal_power(len(a), q))

    @given(ideals(2, 4), ideals(2, 3))
    def test_matches_bruteforce_colon(self, J, K):
        bound = max(max(g) for g in J.generators)
        assert set(colon(J, K).generators) == minimal(colon_members(J.generators, K.generators, bound, 2))


class TestMaximalPower:
    def test_square_in_two_variables(self):
        assert set(maximal_power(2, 2).generators) == {(2, 0), (1, 1), (0, 2)}

    def test_first_power_is_unit_vectors(self):
        assert set(maximal_power(3, 1).generators) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}

    def test_zeroth_power_is_unit(self):
        assert maximal_power(2, 0).is_unit()

    @pytest.mark.parametrize("total,parts", [(0, 1), (4, 1), (3, 3), (5, 4)])
    def test_compositions_complete(self, total, parts):
        got = list(compositions(total, parts))
        brute = [p for p in itertools.product(range(total + 1), repeat=parts) if sum(p) == total]
        assert sorted(got) == sorted(brute)


class TestInvariants:
    @given(ideals(2), ideals(2))
    def test_colon_adjunction(self, J, K):
        assert is_subset(product(K, colon(J, K)), J)

    @given(ideals(3, 3, 3), st.integers(0, 4))
    def test_colon_monotone_in_q(self, J, q):
        assert is_subset(colon(J, maximal_power(3, q)), colon(J, maximal_power(3, q + 1)))

    @given(st.lists(st.tuples(st.integers(0, 4), st.just(0)), min_size=1, max_size=3),
           st.lists(st.tuples(st.just(0), st.integers(0, 4)), min_size=1, max_size=3))
    def test_intersect_is_product_on_disjoint_supports(self, gx, gy):
        J, K = MonomialIdeal(gx, 2), MonomialIdeal(gy, 2)
        assert intersect(J, K) == product(J, K)

    @given(ideals(3), ideals(3))
    def test_results_already_minimal(self, J, K):
        for out in (ideal_sum(J, K), product(J, K), intersect(J, K), colon(J, K), power(J, 2)):
            assert minimalize(out.generators, out.dim) == out
            assert minimal(out.generators) == set(out.generators)

    @settings(max_examples=40)
    @given(ideals(2, 3, 3), ideals(2, 3, 3))
    def test_product_membership_bruteforce(self, J, K):
        bound = 7
        brute = set(product_members(J.generators, K.generators, bound, 2))
        P = product(J, K)
        assert {a for a in itertools.product(range(bound + 1), repeat=2) if contains(P, a)} == brute
