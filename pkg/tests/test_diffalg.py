import pytest

from qhowe.diffalg import (CORRECTED, DER, PRINTED, VAR, DiffVec, DiffWord,
                           basis_size, classical_omega,
                           confluence_report_diff, flatness_report_diff,
                           generators, normalize_diff, omega_action_defect,
                           omega_elements, omega_in_exterior, overlap_words,
                           rank_in_order, resolve_overlap)
from qhowe.exception import BadValue
from qhowe.extalg import Subset, basis
from qhowe.qarith import ONE, Q, QINV


class TestDiffWord:

    def test_parse(self):
        word = DiffWord.parse("d1 v_-1 v2", 2)
        assert word.tokens == ((DER, 1), (VAR, -1), (VAR, 2))
        assert str(word) == "d1 v-1 v2"
        assert len(word) == 3
        assert str(DiffWord(1)) == "1"

    def test_invalid(self):
        with pytest.raises(BadValue):
            DiffWord.parse("x1", 1)
        with pytest.raises(BadValue):
            DiffWord(1, [(VAR, 2)])
        with pytest.raises(BadValue):
            DiffWord(1, [("w", 1)])
        with pytest.raises(BadValue):
            DiffWord(1, [VAR])

    def test_rank_in_order(self):
        assert [rank_in_order(x, 2) for x in (1, 2, -2, -1)] == [1, 2, 3, 4]


class TestNormalize:

    def test_rank_one_cross_relation(self):
        result = normalize_diff([(DER, 1), (VAR, 1)], 1)
        empty, one = Subset(1), Subset(1, [1])
        assert result == DiffVec(1, {(one, one): -1, (empty, empty): 1})
        assert result.to_json() == {
            "n": 1,
            "terms": [{"d": [], "v": [], "c": {"0": 1}},
                      {"d": [1], "v": [1], "c": {"0": -1}}]
        }

    def test_commuting_past(self):
        result = normalize_diff(DiffWord.parse("d1 v2", 2))
        assert result == DiffVec(2, {(Subset(2, [1]), Subset(2, [2])): -Q})

    def test_primed_index(self):
        result = normalize_diff(DiffWord.parse("d1 v-1", 1))
        one, minus = Subset(1, [1]), Subset(1, [-1])
        assert result == DiffVec(1, {(one, minus): -Q * Q})

    def test_squares_vanish(self):
        assert not normalize_diff(DiffWord.parse("v1 v1", 1))
        assert not normalize_diff(DiffWord.parse("d-2 d-2", 2))

    def test_ordered_words_are_fixed(self):
        word = DiffWord.parse("v1 v-1 d1", 1)
        assert normalize_diff(word) == DiffVec(
            1, {(Subset(1, [1]), Subset(1, [1, -1])): ONE})

    def test_derivations_follow_bar_relations(self):
        result = normalize_diff(DiffWord.parse("d2 d1", 2))
        assert result == DiffVec(2, {(Subset(2, [1, 2]), Subset(2)): -QINV})

    def test_unknown_variant(self):
        with pytest.raises(BadValue):
            normalize_diff(DiffWord.parse("d1 v1", 1), variant="literal")

    def test_arithmetic(self):
        x = normalize_diff(DiffWord.parse("d1 v1", 1))
        assert not (x - x)
        assert (x + x).coefficient(Subset(1), Subset(1)) == 2
        assert x.scale(0) == DiffVec.zero(1)
        assert str(DiffVec.zero(1)) == "0"


class TestConfluence:

    def test_overlap_words(self):
        words = overlap_words(1)
        assert ((DER, -1), (VAR, -1), (VAR, 1)) in words
        assert len(generators(2)) == 8

    @pytest.mark.parametrize("n", [1, 2])
    def test_corrected_relations(self, n):
        report = confluence_report_diff(n)
        assert report["variant"] == CORRECTED
        assert report["overlaps"] == len(overlap_words(n))
        assert report["failures"] == []

    def test_printed_relations_fail(self):
        report = confluence_report_diff(1, variant=PRINTED)
        words = [failure["word"] for failure in report["failures"]]
        assert "d-1 v-1 v1" in words
        left, right = resolve_overlap(1, ((DER, -1), (VAR, -1), (VAR, 1)),
                                      variant=PRINTED)
        assert left != right

    def test_flatness(self):
        report = flatness_report_diff(1)
        assert report["words"] == 1 + 4 + 16 + 64 + 256
        assert report["failures"] == []

    def test_basis_size(self):
        assert basis_size(1) == 16
        assert basis_size(2) == 256


class TestOmega:

    def test_rank_one(self):
        omega, omega_vee = omega_elements(1)
        empty, both = Subset(1), Subset(1, [1, -1])
        assert omega == DiffVec(1, {(empty, both): -Q})
        assert omega_vee == DiffVec(1, {(both, empty): -QINV})

    def test_rank_two(self):
        omega, omega_vee = omega_elements(2)
        assert len(omega) == 2
        assert len(omega_vee) == 2
        assert omega.coefficient(Subset(2), Subset(2, [2, -2])) == Q * Q

    def test_in_exterior(self):
        x = omega_in_exterior(2)
        assert x.coefficient(Subset(2, [1, -1])) == -Q
        assert x.coefficient(Subset(2, [2, -2])) == Q * Q

    @pytest.mark.parametrize("n", [1, 2])
    def test_multiplication_is_e(self, n):
        for S in basis(n):
            assert omega_action_defect(S).is_zero()

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_classical_limit(self, n):
        assert set(classical_omega(n).values()) == {(-1)**n}
