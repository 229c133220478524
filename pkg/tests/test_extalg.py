import random

import pytest

from qhowe.exception import BadValue
from qhowe.extalg import (ExtVec, Stats, Subset, bar, basis, bilinear,
                          confluence_report, dual_scalar, dual_vector,
                          flatness_counts, index_at, leq, multiply,
                          normalize, omega_twist, overlap_words, position,
                          reduce_pair, reversed_expand, sesquilinear, v,
                          v_k_minus, w_gt, w_lt, weight_vector,
                          window_members)
from qhowe.qarith import ONE, Q, QINV, ZERO, LaurentInt, q_power


class TestSubset:

    def test_members_and_mask(self):
        S = Subset(2, [-1, 1])
        assert S.members == (1, -1)
        assert S.mask == 0b1001
        assert str(S) == "{1,-1}"
        assert len(S) == 2
        assert 1 in S and -1 in S and 2 not in S and 5 not in S
        assert S.to_json() == [1, -1]

    def test_position_roundtrip(self):
        n = 3
        order = [1, 2, 3, -3, -2, -1]
        assert [position(x, n) for x in order] == list(range(6))
        assert [index_at(p, n) for p in range(6)] == order

    def test_parse(self):
        S = Subset.parse("1,3,-4,-1", 4)
        assert S.members == (1, 3, -4, -1)
        assert Subset.parse("{}", 2) == Subset(2)
        assert Subset.parse(" -2 , 2", 2).members == (2, -2)

    def test_invalid(self):
        with pytest.raises(BadValue):
            Subset.parse("1,1", 2)
        for members in [[3], [0], [True]]:
            with pytest.raises(BadValue):
                Subset(2, members)
        for n in [0, -1, "2", True]:
            with pytest.raises(BadValue):
                Subset(n)

    def test_columns(self):
        S = Subset(3, [1, -1, 2])
        assert S.column(1) == 2
        assert S.column(2) == 1
        assert S.column(3) == 0
        assert S.full_columns() == [1]
        assert S.empty_columns() == [3]
        assert S.weight() == (0, 1, 0)
        assert S.negate() == Subset(3, [1, -1, -2])
        assert S.complement() == Subset(3, [3, -3, -2])
        assert S.remove_column(1) == Subset(3, [2])
        assert S.add_column(3) == Subset(3, [1, -1, 2, 3, -3])
        assert S.count_right(1) == 1

    def test_stats(self):
        S = Subset(2, [1, -1])
        stats = Stats(S)
        assert stats.S0 == S
        assert stats.S0c == Subset(2, [2, -2])
        assert stats.w == 0 == len(S) - S.n
        assert w_gt(S, 1) == -1
        assert w_lt(S, 2) == -1

    def test_window(self):
        S = Subset(3, [1, 2, -3, -1])
        assert window_members(S, 1) == frozenset([1, 2, -1])
        assert window_members(S, 2) == frozenset([2, -3])
        assert window_members(S, 3) == frozenset([-3])

    def test_basis(self):
        assert len(basis(2)) == 16
        assert basis(2, 1) == [Subset(2, [x]) for x in (1, 2, -2, -1)]
        assert basis(2, 5) == []
        assert basis(3, 0) == [Subset(3)]
        sizes = [len(S) for S in basis(3)]
        assert sizes == sorted(sizes)

    def test_leq(self):
        low = Subset(2, [1, -1])
        high = Subset(2, [2, -2])
        assert leq(low, high)
        assert not leq(high, low)
        assert leq(low, low)
        assert not leq(Subset(2, [1]), Subset(2, [2]))

    def test_v_k_minus(self):
        assert v_k_minus(3, 3, 1) == Subset(3, [1, 3, -3])
        assert v_k_minus(2, 3, 1) == Subset(2, [1, 2, -2])
        assert v_k_minus(2, 2, 0) == Subset(2, [1, 2])
        with pytest.raises(BadValue):
            v_k_minus(2, 4, 1)
        with pytest.raises(BadValue):
            v_k_minus(2, 1, 1)


class TestExtVec:

    def test_zero_coefficients_dropped(self):
        S = Subset(1, [1])
        x = ExtVec(1, {S: 2, Subset(1, [-1]): 0})
        assert len(x) == 1
        assert x.coefficient(S) == 2
        assert (x - x).is_zero()
        assert not ExtVec.zero(1)

    def test_arithmetic(self):
        a = v(Subset(2, [1]))
        b = v(Subset(2, [2, -1]))
        x = a.scale(Q) + b
        assert x.coefficient(Subset(2, [1])) == Q
        assert (3 * x).coefficient(Subset(2, [2, -1])) == 3
        assert x.scale(0).is_zero()
        assert (-x + x).is_zero()
        assert x.degree_part(1) == a.scale(Q)
        assert str(a) == "(1)*v{1}"
        assert str(ExtVec.zero(2)) == "0"

    def test_weight_vector(self):
        x = v(Subset(2, [1, -1])) + v(Subset(2, [2, -2])).scale(QINV)
        assert weight_vector(x) == (0, 0)
        assert weight_vector(v(Subset(2, [2]))) == (0, 1)
        with pytest.raises(BadValue):
            weight_vector(ExtVec.zero(2))
        with pytest.raises(BadValue):
            weight_vector(v(Subset(2, [1])) + v(Subset(2, [2])))

    def test_rank_mismatch(self):
        with pytest.raises(BadValue):
            v(Subset(1, [1])) + v(Subset(2, [1]))
        with pytest.raises(BadValue):
            ExtVec(2, {Subset(1, [1]): 1})

    def test_json(self):
        x = normalize([-1, 1], 2)
        data = x.to_json()
        assert data == {
            "n": 2,
            "terms": [{"S": [1, -1], "c": {"2": -1}},
                      {"S": [2, -2], "c": {"1": -1, "3": 1}}]
        }
        assert ExtVec.from_json(data) == x
        for invalid in [{"terms": []}, {"n": 1, "terms": [{"S": [1]}]}, []]:
            with pytest.raises(BadValue):
                ExtVec.from_json(invalid)


class TestRelations:

    def test_reduce_pair(self):
        assert reduce_pair(2, 2, 1) == [(-Q, (1, 2))]
        assert reduce_pair(2, -1, -2) == [(-Q, (-2, -1))]
        assert reduce_pair(2, -1, 2) == [(-Q, (2, -1))]
        mixed = reduce_pair(2, -1, 1)
        assert mixed[0] == (LaurentInt({2: -1}), (1, -1))
        assert mixed[1] == ((Q - QINV) * q_power(2), (2, -2))

    def test_rank_one(self):
        assert normalize([-1, 1], 1) == v(Subset(1, [1, -1])).scale(
            LaurentInt({2: -1}))
        assert normalize([1, 1], 1).is_zero()
        assert normalize([-1, -1], 1).is_zero()
        assert normalize([], 1) == v(Subset(1))
        assert reversed_expand(Subset(1, [1, -1])) == \
            normalize([-1, 1], 1)

    def test_rank_two(self):
        expected = ExtVec(2, {
            Subset(2, [1, -1]): LaurentInt({2: -1}),
            Subset(2, [2, -2]): LaurentInt({3: 1, 1: -1})
        })
        assert normalize([-1, 1], 2) == expected
        assert normalize([2, 1], 2) == v(Subset(2, [1, 2])).scale(-Q)
        assert normalize([-1, -2], 2) == v(Subset(2, [-2, -1])).scale(-Q)
        assert normalize([-2, 2], 2) == v(Subset(2, [2, -2])).scale(
            LaurentInt({2: -1}))

    def test_invalid_words(self):
        with pytest.raises(BadValue):
            normalize([3], 2)
        with pytest.raises(BadValue):
            normalize([1], 2, strategy="middle")

    def test_multiply(self):
        one = v(Subset(1, [1]))
        minus = v(Subset(1, [-1]))
        assert multiply(one, minus) == v(Subset(1, [1, -1]))
        assert multiply(minus, one) == normalize([-1, 1], 1)
        assert multiply(one, one).is_zero()

    @pytest.mark.parametrize("seed", range(5))
    def test_strategies_agree(self, seed):
        rng = random.Random(seed)
        n = 2
        indices = [1, 2, -1, -2]
        word = [rng.choice(indices) for _ in range(5)]
        reference = normalize(word, n)
        assert normalize(word, n, strategy="rightmost") == reference
        assert normalize(word, n, strategy="random", rng=rng) == reference


class TestFlatness:

    def test_overlap_words(self):
        assert overlap_words(1) == [(1, 1, 1), (-1, 1, 1), (-1, -1, 1),
                                    (-1, -1, -1)]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_confluence(self, n):
        report = confluence_report(n)
        assert report["overlaps"] == len(overlap_words(n))
        assert report["failures"] == []

    def test_confluence_with_samples(self):
        report = confluence_report(2, samples=20, seed=7)
        assert report["samples"] == 20
        assert report["failures"] == []

    @pytest.mark.parametrize("n,expected", [(1, [1, 2, 1]),
                                            (2, [1, 4, 6, 4, 1]),
                                            (3, [1, 6, 15, 20, 15, 6, 1])])
    def test_flatness_counts(self, n, expected):
        counts = flatness_counts(n)
        assert counts == expected
        assert sum(counts) == 4**n


class TestInvolutions:

    def test_dual_scalar(self):
        assert dual_scalar(Subset(1, [1])) == ONE
        assert dual_scalar(Subset(1, [-1])) == LaurentInt({-2: -1})
        assert dual_scalar(Subset(2, [2])) == LaurentInt({-1: -1})
        assert dual_scalar(Subset(2)) == ONE
        assert dual_vector(Subset(2, [2])) == v(Subset(2, [2])).scale(
            LaurentInt({-1: -1}))

    def test_bar_small(self):
        assert bar(v(Subset(1, [1]))) == v(Subset(1, [1]))
        assert bar(v(Subset(1, [1, -1]))) == v(Subset(1, [1, -1]))
        expected = ExtVec(2, {
            Subset(2, [1, -1]): ONE,
            Subset(2, [2, -2]): QINV - Q
        })
        assert bar(v(Subset(2, [1, -1]))) == expected
        assert bar(v(Subset(1, [1])).scale(Q)) == v(Subset(1, [1])).scale(
            QINV)

    @pytest.mark.parametrize("n", [1, 2])
    def test_bar_is_an_involution(self, n):
        for S in basis(n):
            assert bar(bar(v(S))) == v(S)

    def test_sesquilinear_duality(self):
        n = 2
        for S in basis(n, 2):
            for T in basis(n, 2):
                value = sesquilinear(v(S), bar(v(T)))
                assert value == (ONE if S == T else ZERO)

    def test_bilinear(self):
        x = v(Subset(1, [1])).scale(Q) + v(Subset(1, [-1]))
        assert bilinear(x, x) == Q * Q + 1

    def test_omega_twist(self):
        assert omega_twist(v(Subset(2, [1, -2]))) == v(Subset(2, [2, -1]))
        x = normalize([-1, 1], 2)
        assert omega_twist(omega_twist(x)) == x
