from fractions import Fraction

import pytest
import sympy

from qhowe.exception import BadValue, InexactDivision
from qhowe.qarith import (GENERIC, ONE, Q, QINV, ZERO, LaurentInt,
                          Specialization, bar_conj, cyclotomic,
                          neg_q_power, padic_expand, q_power, qbinom,
                          qbinom_nonzero, qfact, qfact_i, qint, qint_i,
                          reconstruct, vanishes_at_root)

_q = sympy.Symbol("q")


def _to_sympy(x):
    return sum((c * _q**e for e, c in x.items()), sympy.Integer(0))


def _sympy_qint(k):
    return (_q**k - _q**(-k)) / (_q - 1 / _q)


class TestLaurentInt:

    def test_canonical_form(self):
        x = LaurentInt({2: 1, 0: 0, -1: -3})
        assert x.terms == {2: 1, -1: -3}
        assert x.valuation() == -1
        assert x.degree() == 2
        assert LaurentInt() == ZERO
        assert LaurentInt(0).is_zero()
        assert LaurentInt(5) == 5
        assert ZERO.valuation() is None

    def test_invalid_input(self):
        for invalid in ["q", 1.5, [1, 2]]:
            with pytest.raises(BadValue):
                LaurentInt(invalid)

    def test_ring_operations(self):
        x = Q + 1
        y = Q - 1
        assert x * y == LaurentInt({2: 1, 0: -1})
        assert x - x == ZERO
        assert 3 - Q == LaurentInt({0: 3, 1: -1})
        assert Q * QINV == ONE
        assert (Q + QINV)**2 == LaurentInt({2: 1, 0: 2, -2: 1})
        assert (-Q)**-1 == LaurentInt({-1: -1})

    def test_negative_power_of_non_unit(self):
        with pytest.raises(InexactDivision):
            (Q + 1)**-1

    def test_bar_and_shift(self):
        x = LaurentInt({-2: 1, 1: 4})
        assert x.bar() == LaurentInt({2: 1, -1: 4})
        assert x.bar().bar() == x
        assert bar_conj(x) == x.bar()
        assert x.shift(2) == LaurentInt({0: 1, 3: 4})
        assert qint(2).substitute_power(2) == LaurentInt({-2: 1, 2: 1})

    def test_str(self):
        assert str(qint(3)) == "q^-2 + 1 + q^2"
        assert str(LaurentInt({1: -1, 3: 2})) == "-q + 2q^3"
        assert str(ZERO) == "0"

    def test_json(self):
        x = LaurentInt({-1: 1, 1: 2})
        assert x.to_json() == {"-1": 1, "1": 2}
        assert LaurentInt.from_json(x.to_json()) == x
        with pytest.raises(BadValue):
            LaurentInt.from_json([1, 2])
        with pytest.raises(BadValue):
            LaurentInt.from_json({"a": 1})

    def test_evaluate(self):
        assert qint(2).evaluate(2) == Fraction(5, 2)
        assert qint(3).evaluate(1) == 3
        assert LaurentInt({2: 1, 0: -1}).evaluate(3) == 8

    def test_divexact(self):
        x = qint(3) * qint(4)
        assert x.divexact(qint(4)) == qint(3)
        assert (Q * 6).divexact(LaurentInt({-1: 2})) == LaurentInt({2: 3})
        assert (Q + 1).try_divexact(Q - 1) is None
        assert ONE.try_divexact(ZERO) is None

    def test_divexact_logs_and_raises(self, mocker):
        mock_error = mocker.patch.object(LaurentInt.log, "error")
        with pytest.raises(InexactDivision):
            (Q + 1).divexact(Q - 1)
        assert mock_error.call_count == 1


class TestQuantumNumbers:

    @pytest.mark.parametrize("k", range(-3, 7))
    def test_qint_against_sympy(self, k):
        assert sympy.cancel(_to_sympy(qint(k)) - _sympy_qint(k)) == 0

    @pytest.mark.parametrize("k,l", [(4, 2), (5, 2), (6, 3), (7, 0), (3, 5),
                                     (-2, 3)])
    def test_qbinom_against_sympy(self, k, l):
        expected = sympy.Integer(1)
        for j in range(l):
            expected *= _sympy_qint(k - j) / _sympy_qint(j + 1)
        assert sympy.cancel(_to_sympy(qbinom(k, l)) - expected) == 0

    def test_small_values(self):
        assert qint(0) == ZERO
        assert qint(-2) == -qint(2)
        assert qfact(0) == ONE
        assert qfact(3) == qint(2) * qint(3)
        assert qbinom(4, 2) == LaurentInt({-4: 1, -2: 1, 0: 2, 2: 1, 4: 1})
        assert qbinom(-1, 3) == -ONE
        assert qbinom(3, 5) == ZERO
        assert qint_i(2, 2, 2) == LaurentInt({-2: 1, 2: 1})
        assert qint_i(2, 1, 2) == qint(2)
        assert qfact_i(2, 2, 2) == qint_i(2, 2, 2)
        assert qfact_i(3, 1, 2) == qfact(3)
        assert neg_q_power(3) == q_power(3, -1)
        assert neg_q_power(-2) == q_power(-2)

    def test_invalid_arguments(self):
        with pytest.raises(BadValue):
            qfact(-1)
        with pytest.raises(BadValue):
            qbinom(3, -1)


class TestSpecialization:

    def test_parse(self):
        spec = Specialization.parse("7,3")
        assert (spec.p, spec.ell) == (7, 3)
        assert str(spec) == "(7,3)"
        assert spec.to_json() == {"p": "7", "ell": "3"}
        assert Specialization.parse("inf, 4") == Specialization(None, 4)
        assert str(Specialization.parse("oo,inf")) == "(inf,inf)"
        assert Specialization.parse("inf,inf") == GENERIC
        assert GENERIC.is_generic()

    def test_invalid(self):
        invalid = [(4, 3), (7, None), (None, 1), (3, 6), (True, 3)]
        for p, ell in invalid:
            with pytest.raises(BadValue):
                Specialization(p, ell)
        for text in ["7", "7,3,1", "x,3"]:
            with pytest.raises(BadValue):
                Specialization.parse(text)

    def test_ell_equal_to_p(self):
        spec = Specialization(3, 3)
        assert spec.digit_weight(2) == 9

    def test_digit_weight(self):
        spec = Specialization(7, 3)
        assert [spec.digit_weight(i) for i in range(4)] == [1, 3, 21, 147]
        assert Specialization(None, 4).digit_weight(1) == 4
        with pytest.raises(BadValue):
            Specialization(None, 4).digit_weight(2)
        with pytest.raises(BadValue):
            GENERIC.digit_weight(1)


class TestDigits:

    @pytest.fixture(autouse=True)
    def spec(self):
        return Specialization(7, 3)

    def test_padic_expand(self, spec):
        digits = padic_expand(68, spec)
        assert tuple(digits) == (2, 1, 3)
        assert digits.high_to_low() == (3, 1, 2)
        assert str(digits) == "[3,1,2]_(7,3)"
        assert digits.value() == 68
        assert tuple(padic_expand(78, spec)) == (0, 5, 3)
        assert tuple(padic_expand(9, Specialization(None, 4))) == (1, 2)
        assert tuple(padic_expand(9, GENERIC)) == (9, )

    @pytest.mark.parametrize("m", range(0, 200, 7))
    def test_reconstruct(self, spec, m):
        assert reconstruct(padic_expand(m, spec), spec) == m

    def test_negative(self, spec):
        with pytest.raises(BadValue):
            padic_expand(-1, spec)

    def test_quantum_lucas(self, spec):
        assert not qbinom_nonzero(68, 28, spec)
        assert qbinom_nonzero(68, 25, spec)
        assert qbinom_nonzero(5, 2, GENERIC)
        assert not qbinom_nonzero(2, 5, spec)
        assert not qbinom_nonzero(5, -1, spec)

    @pytest.mark.parametrize("m", range(1, 12))
    def test_lucas_against_root_of_unity(self, m):
        # at a primitive third root of unity of q^2 in characteristic 0
        spec = Specialization(None, 3)
        for i in range(m + 1):
            value = qbinom(m, i).shift(i * (m - i))
            vanishes = vanishes_at_root(value, spec)
            assert vanishes == (not qbinom_nonzero(m, i, spec))


class TestCyclotomic:

    def test_small(self):
        assert cyclotomic(1) == LaurentInt({1: 1, 0: -1})
        assert cyclotomic(3) == LaurentInt({2: 1, 1: 1, 0: 1})
        assert cyclotomic(4) == LaurentInt({2: 1, 0: 1})
        assert cyclotomic(6) == LaurentInt({2: 1, 1: -1, 0: 1})
        with pytest.raises(BadValue):
            cyclotomic(0)

    def test_vanishes_at_root(self):
        assert vanishes_at_root(qint(3), Specialization(None, 3))
        assert not vanishes_at_root(qint(3), Specialization(None, 4))
        assert not vanishes_at_root(qint(3), GENERIC)
        assert vanishes_at_root(ZERO, GENERIC)
        with pytest.raises(BadValue):
            vanishes_at_root(Q, GENERIC)
