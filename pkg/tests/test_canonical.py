import pytest

from qhowe.canonical import (base_change_matrix, canonical_basis,
                             canonical_json, canonical_vector, dot_condition,
                             expected_f_action, f_action_defect,
                             from_canonical, fundamental_subsets,
                             has_canonical_shape, inverse_base_change_matrix,
                             is_fundamental, ordered_basis, rainbow,
                             to_canonical)
from qhowe.characters import fundamental_dimension
from qhowe.exception import BadValue
from qhowe.extalg import ExtVec, Subset, bar, basis, v
from qhowe.qarith import ONE, Q, QINV, qint


class TestRainbow:

    def test_single_arc(self):
        rb = rainbow(Subset(2, [1, -1]))
        assert rb.pairing == {1: 2}
        assert rb.unmatched == ()
        assert rb.partner(1) == 2
        assert rb.to_json() == [[1, 2]]

    def test_nested_arcs(self):
        rb = rainbow(Subset(4, [1, 2, -2, -1]))
        assert rb.pairing == {1: 4, 2: 3}
        assert rb.left_ends() == [1, 2]
        assert rb.right_ends() == [3, 4]

    def test_unmatched(self):
        rb = rainbow(Subset(3, [1, 2, -2, -1]))
        assert rb.pairing == {2: 3}
        assert rb.unmatched == (1, )
        assert rb.partner(1) == 1
        assert not is_fundamental(Subset(3, [1, 2, -2, -1]))
        for n in (1, 2, 3):
            assert rainbow(Subset(n, [n, -n])).unmatched == (n, )

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_arcs_do_not_cross(self, n):
        for S in basis(n):
            arcs = sorted(rainbow(S).pairing.items())
            for x, y in arcs:
                assert x < y
                assert S.column(x) == 2 and S.column(y) == 0
                for a, b in arcs:
                    assert not x < a < y < b


class TestFundamentalSubsets:

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_counts(self, n):
        for k in range(n + 1):
            assert len(fundamental_subsets(n, k)) == \
                fundamental_dimension(n, k)

    def test_small(self):
        assert fundamental_subsets(2, 2) == [
            S for S in basis(2, 2) if S != Subset(2, [2, -2])
        ]
        assert len(fundamental_subsets(3, 3)) == 14
        assert dot_condition(Subset(2, [1, -1]), 1)
        assert not dot_condition(Subset(2, [2, -2]), 2)
        with pytest.raises(BadValue):
            fundamental_subsets(2, 3)


class TestCanonicalVector:

    def test_single_arc(self):
        b = canonical_vector(Subset(2, [1, -1]))
        expected = ExtVec(2, {Subset(2, [1, -1]): ONE,
                              Subset(2, [2, -2]): QINV})
        assert b == expected

    def test_json(self):
        data = canonical_json(Subset(2, [1, -1]))
        assert data == {
            "n": 2,
            "terms": [{"S": [1, -1], "c": {"0": 1}},
                      {"S": [2, -2], "c": {"-1": 1}}],
            "rainbow": [[1, 2]]
        }

    def test_unmatched_column_stays(self):
        S = Subset(3, [1, 2, -2, -1])
        expected = ExtVec(3, {S: ONE, Subset(3, [1, 3, -3, -1]): QINV})
        assert canonical_vector(S) == expected

    def test_canonical_basis(self):
        pairs = canonical_basis(2, 2)
        assert [S for S, _ in pairs] == basis(2, 2)
        for S, b in pairs:
            assert b == canonical_vector(S)

    def test_without_arcs(self):
        S = Subset(3, [1, -3])
        assert canonical_vector(S) == v(S)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_shape(self, n):
        for S in basis(n):
            assert has_canonical_shape(S)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_bar_invariant(self, n):
        for S in basis(n):
            b = canonical_vector(S)
            assert bar(b) == b


class TestBaseChange:

    @pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (2, 3), (3, 2)])
    def test_inverse(self, n, k):
        X = base_change_matrix(n, k)
        Y = inverse_base_change_matrix(n, k)
        assert (Y * X).is_identity()
        assert (X * Y).is_identity()

    def test_unitriangular(self):
        X = base_change_matrix(2, 2)
        size = X.nrows
        for i in range(size):
            assert X[i, i] == ONE
            for j in range(i + 1, size):
                assert X[i, j].is_zero()

    def test_ordered_basis(self):
        order = ordered_basis(2, 2)
        assert order[-1] == Subset(2, [2, -2])
        assert len(order) == 6

    def test_coordinates(self):
        x = v(Subset(2, [2, -2])).scale(Q) + v(Subset(2, [1, -1]))
        coords = to_canonical(x)
        assert coords == [(Subset(2, [1, -1]), ONE),
                          (Subset(2, [2, -2]), Q - QINV)]
        assert from_canonical(2, coords) == x


class TestFAction:

    def test_expected_table(self):
        S = Subset(2, [1, -2])
        assert expected_f_action(1, S) == (ONE, Subset(2, [1, -1]))
        assert expected_f_action(2, S) is None
        assert expected_f_action(1, Subset(1, [1])) == (ONE,
                                                        Subset(1, [-1]))
        assert expected_f_action(1, Subset(2, [1, -1])) == (
            qint(2), Subset(2, [2, -1]))

    def test_rank_one(self):
        assert f_action_defect(1, Subset(1, [1])).is_zero()
        for S in [Subset(1), Subset(1, [-1]), Subset(1, [1, -1])]:
            assert f_action_defect(1, S) is None

    def test_mixed_window(self):
        assert f_action_defect(1, Subset(2, [1, -2])).is_zero()

    def test_unlisted_windows_are_not_predicted(self):
        S = Subset(3, [1, -1])
        assert expected_f_action(2, S) is None
        assert f_action_defect(2, S) is None
        assert expected_f_action(3, Subset(4, [1, 2])) is None

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_listed_windows(self, n):
        checked = 0
        for S in basis(n):
            for i in range(1, n + 1):
                defect = f_action_defect(i, S)
                if defect is None:
                    continue
                assert defect.is_zero(), (i, str(S))
                checked += 1
        assert checked > 0
