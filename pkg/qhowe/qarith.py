"""Exact coefficient arithmetic over ``A = Z[q, q^-1]``

Laurent polynomials are kept as sparse ``{exponent: coefficient}``
dictionaries without zero entries, so two values are equal exactly when
their dictionaries are.
"""

import functools
import logging
from fractions import Fraction

from qhowe import exception
from qhowe.utils import format_int_or_infinity, is_prime
from qhowe.utils import parse_int_or_infinity

_log = logging.getLogger("qarith")


class LaurentInt(object):
    """An integer Laurent polynomial in ``q``

    :param terms: a ``{exponent: coefficient}`` mapping, an int (constant
        polynomial) or another :class:`LaurentInt`
    """

    __slots__ = ("_terms", )
    log = logging.getLogger("qarith.LaurentInt")

    def __init__(self, terms=None):
        if terms is None:
            self._terms = {}
        elif isinstance(terms, LaurentInt):
            self._terms = dict(terms._terms)
        elif isinstance(terms, int) and not isinstance(terms, bool):
            self._terms = {0: terms} if terms else {}
        elif isinstance(terms, dict):
            self._terms = dict((int(e), int(c)) for e, c in terms.items()
                               if c)
        else:
            err_msg = "Cannot build a Laurent polynomial from %r" % (terms, )
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)

    @classmethod
    def _wrap(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls._wrap({exponent: coefficient} if coefficient else {})

    @classmethod
    def from_json(cls, data):
        """Inverse of :meth:`to_json`"""

        if not isinstance(data, dict):
            err_msg = "Laurent JSON must be an object, got %r" % (data, )
            cls.log.error(err_msg)
            raise exception.BadValue(err_msg)
        try:
            return cls(dict((int(e), int(c)) for e, c in data.items()))
        except (TypeError, ValueError):
            err_msg = "Invalid Laurent JSON %r" % (data, )
            cls.log.error(err_msg)
            raise exception.BadValue(err_msg)

    def to_json(self):
        """Exponents as decimal strings, ascending"""

        return dict((str(e), self._terms[e]) for e in sorted(self._terms))

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, exponent):
        return self._terms.get(exponent, 0)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def is_unit(self):
        """True for ``+-q^j``"""

        return (len(self._terms) == 1 and
                list(self._terms.values())[0] in (1, -1))

    def valuation(self):
        if not self._terms:
            return None
        return min(self._terms)

    def degree(self):
        if not self._terms:
            return None
        return max(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    __nonzero__ = __bool__

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __eq__(self, other):
        if isinstance(other, LaurentInt):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentInt):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentInt(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            total = terms.get(e, 0) + c
            if total:
                terms[e] = total
            else:
                terms.pop(e, None)
        return LaurentInt._wrap(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt._wrap(dict((e, -c) for e, c in self._terms.items()))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentInt._wrap(dict((e, c) for e, c in terms.items() if c))

    __rmul__ = __mul__

    def __pow__(self, power):
        if not isinstance(power, int):
            return NotImplemented
        if power < 0:
            if not self.is_unit():
                err_msg = "Only units can be raised to negative powers: %s" % self
                self.log.error(err_msg)
                raise exception.InexactDivision(err_msg)
            (e, c), = self._terms.items()
            return LaurentInt.monomial(e * power, c**(-power))
        result = LaurentInt(1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def shift(self, k):
        """Multiply by ``q^k``"""

        return LaurentInt._wrap(
            dict((e + k, c) for e, c in self._terms.items()))

    def bar(self):
        """The ring involution ``q -> q^-1``"""

        return LaurentInt._wrap(dict((-e, c) for e, c in self._terms.items()))

    def substitute_power(self, k):
        """Substitute ``q -> q^k``"""

        if k == 0:
            return LaurentInt(sum(self._terms.values()))
        return LaurentInt._wrap(dict((e * k, c) for e, c in self._terms.items()))

    def evaluate(self, x):
        """Evaluate at an integer or :class:`fractions.Fraction`

        Negative exponents are evaluated exactly through
        :class:`fractions.Fraction`.
        """

        total = 0
        for e, c in self._terms.items():
            if e >= 0:
                total += c * x**e
            else:
                total += c * Fraction(1, 1) / Fraction(x)**(-e)
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def divexact(self, other):
        """Exact division in ``A``

        :raises InexactDivision: when ``other`` does not divide ``self``
        """

        quotient = self.try_divexact(other)
        if quotient is None:
            err_msg = "%s is not divisible by %s" % (self, other)
            self.log.error(err_msg)
            raise exception.InexactDivision(err_msg)
        return quotient

    def try_divexact(self, other):
        """Like :meth:`divexact` but returns None instead of raising"""

        other = self._coerce(other)
        if other is None or other.is_zero():
            return None
        if self.is_zero():
            return LaurentInt()
        if other.is_monomial():
            (e, c), = other._terms.items()
            terms = {}
            for e1, c1 in self._terms.items():
                quot, rem = divmod(c1, c)
                if rem:
                    return None
                terms[e1 - e] = quot
            return LaurentInt._wrap(terms)
        num_val, den_val = self.valuation(), other.valuation()
        remainder = self.shift(-num_val)._terms
        divisor = other.shift(-den_val)._terms
        top_div = max(divisor)
        lead_div = divisor[top_div]
        quotient = {}
        while remainder:
            top = max(remainder)
            if top < top_div:
                return None
            quot, rem = divmod(remainder[top], lead_div)
            if rem:
                return None
            shift = top - top_div
            quotient[shift] = quot
            for e, c in divisor.items():
                total = remainder.get(e + shift, 0) - quot * c
                if total:
                    remainder[e + shift] = total
                else:
                    remainder.pop(e + shift, None)
        return LaurentInt._wrap(quotient).shift(num_val - den_val)

    def rem_monic(self, divisor):
        """Remainder modulo a monic polynomial with nonnegative exponents

        Both polynomials must only carry nonnegative exponents.
        """

        if self.valuation() is not None and self.valuation() < 0:
            err_msg = "rem_monic needs a polynomial, got %s" % self
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        top_div = divisor.degree()
        if divisor.coefficient(top_div) != 1:
            err_msg = "rem_monic needs a monic divisor, got %s" % divisor
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        remainder = dict(self._terms)
        while remainder and max(remainder) >= top_div:
            top = max(remainder)
            lead = remainder[top]
            shift = top - top_div
            for e, c in divisor._terms.items():
                total = remainder.get(e + shift, 0) - lead * c
                if total:
                    remainder[e + shift] = total
                else:
                    remainder.pop(e + shift, None)
        return LaurentInt._wrap(remainder)

    def reduce_mod(self, p):
        """Reduce coefficients modulo ``p`` into ``[0, p)``"""

        return LaurentInt(dict((e, c % p) for e, c in self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e in sorted(self._terms):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "q" if e == 1 else "q^%d" % e
                body = power if mag == 1 else "%d%s" % (mag, power)
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "LaurentInt('%s')" % self


ZERO = LaurentInt()
ONE = LaurentInt(1)
Q = LaurentInt.monomial(1)
QINV = LaurentInt.monomial(-1)


def q_power(k, coefficient=1):
    """``coefficient * q^k``"""

    return LaurentInt.monomial(k, coefficient)


def neg_q_power(k):
    """``(-q)^k``"""

    return LaurentInt.monomial(k, -1 if k % 2 else 1)


@functools.lru_cache(maxsize=None)
def qint(k):
    """The quantum integer ``[k] = q^(1-k) + q^(3-k) + ... + q^(k-1)``

    ``[-k] = -[k]`` and ``[0] = 0``.
    """

    if k < 0:
        return -qint(-k)
    return LaurentInt(dict((-k + 1 + 2 * j, 1) for j in range(k)))


def qint_i(k, i, n):
    """Quantum integer for the simple root ``i``; ``q_n = q^2``"""

    value = qint(k)
    return value.substitute_power(2) if i == n else value


@functools.lru_cache(maxsize=None)
def qfact(k):
    if k < 0:
        err_msg = "Quantum factorial of a negative number %s" % k
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    result = ONE
    for j in range(1, k + 1):
        result = result * qint(j)
    return result


def qfact_i(k, i, n):
    value = qfact(k)
    return value.substitute_power(2) if i == n else value


@functools.lru_cache(maxsize=None)
def qbinom(k, l):
    """The quantum binomial ``[k choose l]`` for any integer ``k``

    :param k: the upper entry, may be negative
    :param l: the lower entry, ``l >= 0``
    """

    if l < 0:
        err_msg = "Lower entry of a quantum binomial must be >= 0, got %s" % l
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    numerator = ONE
    for j in range(l):
        numerator = numerator * qint(k - j)
    return numerator.divexact(qfact(l))


def bar_conj(x):
    return x.bar()


class Specialization(object):
    """A specialization ``(p, ell)`` of ``A`` to a field

    ``None`` stands for infinity in both slots. ``p`` is the characteristic
    and ``ell`` the least ``k`` with ``[k] = 0``.
    """

    log = logging.getLogger("qarith.Specialization")

    def __init__(self, p=None, ell=None):
        if p is not None:
            if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
                err_msg = "Characteristic must be a prime or infinity, got %r" % (p, )
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
            if ell is None:
                err_msg = "A finite characteristic %s needs a finite ell" % p
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
        if ell is not None:
            if isinstance(ell, bool) or not isinstance(ell, int) or ell < 2:
                err_msg = "ell must be an integer >= 2 or infinity, got %r" % (ell, )
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
            if p is not None and ell != p and ell % p == 0:
                err_msg = ("ell=%s is impossible in characteristic %s: it is "
                           "either p or prime to p" % (ell, p))
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
        self.p = p
        self.ell = ell

    @classmethod
    def parse(cls, text):
        """Parse ``"P,L"`` where either entry may be ``inf``"""

        pieces = [piece.strip() for piece in str(text).split(",")]
        if len(pieces) != 2:
            err_msg = "A specialization is written P,L; got %r" % (text, )
            cls.log.error(err_msg)
            raise exception.BadValue(err_msg)
        return cls(parse_int_or_infinity(pieces[0]),
                   parse_int_or_infinity(pieces[1]))

    def is_generic(self):
        return self.ell is None

    def digit_weight(self, i):
        """``p^(i)``: 1 for ``i = 0`` and ``p^(i-1) * ell`` otherwise"""

        if i == 0:
            return 1
        if self.ell is None:
            err_msg = "No digit %s when ell is infinite" % i
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        if self.p is None:
            if i > 1:
                err_msg = "No digit %s when p is infinite" % i
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
            return self.ell
        return self.p**(i - 1) * self.ell

    def to_json(self):
        return {"ell": format_int_or_infinity(self.ell),
                "p": format_int_or_infinity(self.p)}

    def __str__(self):
        return "(%s,%s)" % (format_int_or_infinity(
            self.p), format_int_or_infinity(self.ell))

    def __repr__(self):
        return "<Specialization %s>" % self

    def __eq__(self, other):
        if not isinstance(other, Specialization):
            return False
        return (self.p, self.ell) == (other.p, other.ell)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.p, self.ell))


GENERIC = Specialization(None, None)


class Digits(tuple):
    """``(p, ell)``-adic digits stored low-to-high

    The conventional printed form reads high-to-low, see :meth:`__str__`.
    """

    def __new__(cls, digits, spec):
        obj = tuple.__new__(cls, digits)
        obj.spec = spec
        return obj

    def high_to_low(self):
        return tuple(reversed(self))

    def value(self):
        return reconstruct(self, self.spec)

    def __str__(self):
        return "[%s]_%s" % (",".join(str(a) for a in self.high_to_low()),
                            self.spec)

    def __repr__(self):
        return "<Digits %s>" % self


def padic_expand(m, spec):
    """The ``(p, ell)``-adic expansion ``m = sum a_i p^(i)``

    :param m: a nonnegative integer
    :param spec: a :class:`Specialization`
    :return: the digits ``a_0, a_1, ...``
    :rtype: Digits
    """

    if m < 0:
        err_msg = "Only nonnegative integers have digits, got %s" % m
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    if spec.ell is None:
        return Digits([m], spec)
    digits = [m % spec.ell]
    rest = m // spec.ell
    if spec.p is None:
        if rest:
            digits.append(rest)
        return Digits(digits, spec)
    while rest:
        digits.append(rest % spec.p)
        rest //= spec.p
    return Digits(digits, spec)


def reconstruct(digits, spec):
    return sum(a * spec.digit_weight(i) for i, a in enumerate(digits))


def qbinom_nonzero(m, i, spec):
    """Quantum Lucas: ``[m choose i]`` is nonzero under ``spec``

    True exactly when every digit of ``i`` is at most the matching digit of
    ``m``.
    """

    if i < 0 or m < 0 or i > m:
        return False
    if spec.ell is None:
        return True
    top = padic_expand(m, spec)
    bottom = padic_expand(i, spec)
    for j, a in enumerate(bottom):
        upper = top[j] if j < len(top) else 0
        if a > upper:
            return False
    return True


@functools.lru_cache(maxsize=None)
def cyclotomic(ell):
    """The cyclotomic polynomial ``Phi_ell`` as a polynomial in ``q``"""

    if ell < 1:
        err_msg = "Cyclotomic index must be positive, got %s" % ell
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    result = LaurentInt({ell: 1, 0: -1})
    for d in range(1, ell):
        if ell % d == 0:
            result = result.divexact(cyclotomic(d))
    return result


def vanishes_at_root(x, spec):
    """Whether ``x``, written in ``q^2``, vanishes at every ``q^2`` of the
    order prescribed by ``spec``

    The reduction is symbolic: ``x`` is rewritten in ``y = q^2``, reduced
    modulo ``Phi_ell(y)`` and then modulo ``p``.

    :param x: a :class:`LaurentInt` with even exponents only
    """

    if any(e % 2 for e in x.terms):
        err_msg = "vanishes_at_root needs even exponents, got %s" % x
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    if x.is_zero():
        return True
    y = LaurentInt(dict((e // 2, c) for e, c in x.terms.items()))
    y = y.shift(-y.valuation())
    if spec.ell is None:
        return False
    if spec.p is not None and spec.ell == spec.p:
        return sum(y.terms.values()) % spec.p == 0
    remainder = y.rem_monic(cyclotomic(spec.ell))
    if spec.p is not None:
        remainder = remainder.reduce_mod(spec.p)
    return remainder.is_zero()
