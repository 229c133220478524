"""The differential operator algebra on the exterior algebra

The algebra is generated by ``v_x`` (multiplication) and ``d_x``
(differentiation) for ``x`` in ``[1,-1]``. The ``v_x`` obey the exterior
algebra relations, the ``d_x`` their bar image, and every ``d_x v_y`` is
rewritten into ``v`` before ``d``. Normal forms are ``v_S d_T``, stored
under the key ``(T, S)``.

Two relation sets are available. ``printed`` takes the mixed relations
literally; its ``d_{-i} v_{-i}`` relation ends in ``d_k v_k`` and its
correction terms for ``i' < j`` carry the sign ``+``. That system does not
resolve the overlap ``d_{-1} v_{-1} v_1`` already at rank 1. ``corrected``
(the default) ends that relation in ``v_k d_k`` and flips the sign of the
``i' < j`` correction terms.
"""

import functools
import itertools
import logging
import re

from qhowe import exception
from qhowe.actions import DIFF, GeneratorTag, apply_diff
from qhowe.base import HoweBase
from qhowe.extalg import ExtVec, Subset, check_index, multiply, position
from qhowe.extalg import reduce_pair, v
from qhowe.qarith import ONE, Q, QINV, LaurentInt, neg_q_power, q_power

_log = logging.getLogger("diffalg")

VAR = "v"
DER = "d"
FLAVORS = (VAR, DER)

CORRECTED = "corrected"
PRINTED = "printed"
VARIANTS = (CORRECTED, PRINTED)

_TOKEN = re.compile(r"^([vd])_?(-?\d+)$")


def rank_in_order(x, n):
    """``|x|``: the place of ``x`` in ``1 < ... < n < -n < ... < -1``,
    counted from 1"""

    return position(x, n) + 1


def primed(x):
    """``x' = 2n + 1 - |x|`` read back as an index, which is ``-x``"""

    return -x


def sign(x):
    return 1 if x > 0 else -1


def _check_variant(variant):
    if variant not in VARIANTS:
        err_msg = "Unknown relation set %r, expected one of %s" % (
            variant, ", ".join(VARIANTS))
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return variant


class DiffWord(HoweBase):
    """A word in the generators ``v_x`` and ``d_x``

    :param n: the rank
    :param tokens: ``(flavor, index)`` pairs with flavor ``"v"`` or ``"d"``
    """

    log = logging.getLogger("diffalg.DiffWord")

    def __init__(self, n, tokens=()):
        self.n = self.validate_rank(n)
        checked = []
        for token in tokens:
            try:
                flavor, x = token
            except (TypeError, ValueError):
                err_msg = "Invalid token %r" % (token, )
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
            if flavor not in FLAVORS:
                err_msg = "Unknown generator flavor %r" % (flavor, )
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
            checked.append((flavor, check_index(x, n)))
        self.tokens = tuple(checked)

    @classmethod
    def parse(cls, text, n):
        """Parse ``"d1 v-1"``; an underscore after the flavor is allowed"""

        tokens = []
        for piece in text.split():
            match = _TOKEN.match(piece)
            if match is None:
                err_msg = "Cannot parse generator %r" % piece
                cls.log.error(err_msg)
                raise exception.BadValue(err_msg)
            tokens.append((match.group(1), int(match.group(2))))
        return cls(n, tokens)

    def _key(self):
        return (self.n, self.tokens)

    def __str__(self):
        return " ".join("%s%s" % token for token in self.tokens) or "1"

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


class DiffVec(HoweBase):
    """A sparse element ``sum c_{T,S} v_S d_T`` in normal form

    :param n: the rank
    :param terms: a mapping from ``(T, S)`` to coefficients; ``T`` and
        ``S`` are :class:`~qhowe.extalg.Subset` or raw bit masks
    """

    log = logging.getLogger("diffalg.DiffVec")

    def __init__(self, n, terms=None):
        self.n = self.validate_rank(n)
        self._terms = {}
        for (T, S), coeff in (terms or {}).items():
            key = (self._mask_of(T), self._mask_of(S))
            total = self._terms.get(key, LaurentInt()) + LaurentInt(coeff)
            if total:
                self._terms[key] = total
            else:
                self._terms.pop(key, None)

    def _mask_of(self, subset):
        if isinstance(subset, Subset):
            if subset.n != self.n:
                err_msg = "Subset %s has rank %s, expected %s" % (
                    subset, subset.n, self.n)
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
            return subset.mask
        return subset

    @classmethod
    def _wrap(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, n):
        return cls._wrap(n, {})

    def _key(self):
        return (self.n, frozenset(self._terms.items()))

    def items(self):
        """``((T, S), coefficient)`` ordered by ``T`` then ``S``"""

        pairs = [((Subset.from_mask(self.n, t), Subset.from_mask(self.n, s)),
                  c) for (t, s), c in self._terms.items()]
        pairs.sort(key=lambda pair: (pair[0][0].sort_key(),
                                     pair[0][1].sort_key()))
        return pairs

    def raw_items(self):
        return self._terms.items()

    def coefficient(self, T, S):
        return self._terms.get((self._mask_of(T), self._mask_of(S)),
                               LaurentInt())

    def keys(self):
        return [key for key, _ in self.items()]

    def __bool__(self):
        return bool(self._terms)

    __nonzero__ = __bool__

    def __len__(self):
        return len(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join("(%s)*v%s d%s" % (c, S, T)
                          for (T, S), c in self.items())

    def __add__(self, other):
        self.check_same_rank(self, other)
        terms = dict(self._terms)
        _accumulate(terms, ONE, other._terms)
        return DiffVec._wrap(self.n, terms)

    def __neg__(self):
        return DiffVec._wrap(self.n,
                             dict((k, -c) for k, c in self._terms.items()))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        coeff = LaurentInt(coeff)
        if not coeff:
            return DiffVec.zero(self.n)
        return DiffVec._wrap(
            self.n, dict((k, coeff * c) for k, c in self._terms.items()))

    def to_json(self):
        return {
            "n": self.n,
            "terms": [{"d": T.to_json(), "v": S.to_json(), "c": c.to_json()}
                      for (T, S), c in self.items()]
        }


def _accumulate(target, coeff, terms):
    for key, c in terms.items():
        total = target.get(key, LaurentInt()) + coeff * c
        if total:
            target[key] = total
        else:
            target.pop(key, None)


def _var_pair(n, a, b):
    return [(c, ((VAR, x), (VAR, y))) for c, (x, y) in reduce_pair(n, a, b)]


def _der_pair(n, a, b):
    return [(c.bar(), ((DER, x), (DER, y)))
            for c, (x, y) in reduce_pair(n, a, b)]


def _vd(c, x):
    return (c, ((VAR, x), (DER, x)))


def _cross(n, i, j, variant):
    """Rewrite ``d_i v_j`` as a combination of ``v d`` words and ``1``"""

    diff = Q - QINV
    if j == primed(i):
        return [(-q_power(2), ((VAR, j), (DER, i)))]
    if j == i:
        before = [x for x in _order(n) if position(x, n) < position(i, n)]
        result = [(-ONE, ((VAR, i), (DER, i))), (ONE, ())]
        if i > 0:
            result.extend(_vd(Q * diff, k) for k in before)
            return result
        m = -i
        result.append(_vd(q_power(2 * (n - m + 1) + 1) * diff, m))
        for k in before:
            if variant == PRINTED:
                result.append((Q * diff, ((DER, k), (VAR, k))))
            else:
                result.append(_vd(Q * diff, k))
        return result
    swap = (-Q, ((VAR, j), (DER, i)))
    gap = rank_in_order(j, n) - rank_in_order(primed(i), n)
    if gap < 0:
        return [swap]
    coeff = (Q if sign(i) != sign(j) else q_power(2)) * neg_q_power(gap) * diff
    if variant == CORRECTED:
        coeff = -coeff
    return [swap, (coeff, ((VAR, primed(i)), (DER, primed(j))))]


def _order(n):
    return list(range(1, n + 1)) + list(range(-n, 0))


def _out_of_order(n, left, right):
    (f1, a), (f2, b) = left, right
    if f1 == DER and f2 == VAR:
        return True
    if f1 != f2:
        return False
    return position(a, n) >= position(b, n)


def _rewrite_pair(n, left, right, variant):
    (f1, a), (f2, b) = left, right
    if f1 == f2:
        if a == b:
            return []
        return _var_pair(n, a, b) if f1 == VAR else _der_pair(n, a, b)
    return _cross(n, a, b, variant)


def _reduce_at(n, word, idx, variant):
    prefix, suffix = word[:idx], word[idx + 2:]
    return [(c, prefix + pair + suffix)
            for c, pair in _rewrite_pair(n, word[idx], word[idx + 1], variant)]


def _normal_key(n, word):
    vmask = dmask = 0
    for flavor, x in word:
        if flavor == VAR:
            vmask |= 1 << position(x, n)
        else:
            dmask |= 1 << position(x, n)
    return (dmask, vmask)


@functools.lru_cache(maxsize=None)
def _normal_form(n, word, variant):
    """Leftmost rewriting, memoized; the result must not be mutated"""

    for idx in range(len(word) - 1):
        if _out_of_order(n, word[idx], word[idx + 1]):
            result = {}
            for coeff, reduced in _reduce_at(n, word, idx, variant):
                _accumulate(result, coeff, _normal_form(n, reduced, variant))
            return result
    return {_normal_key(n, word): ONE}


def normalize_diff(word, n=None, variant=CORRECTED):
    """Rewrite a word to the ``v_S d_T`` basis

    :param word: a :class:`DiffWord` or a sequence of ``(flavor, index)``
    :param n: the rank, required unless ``word`` is a :class:`DiffWord`
    :param variant: ``corrected`` or ``printed`` mixed relations
    :rtype: DiffVec
    """

    if not isinstance(word, DiffWord):
        word = DiffWord(n, word)
    _check_variant(variant)
    return DiffVec._wrap(word.n,
                         dict(_normal_form(word.n, word.tokens, variant)))


def generators(n):
    """All ``4n`` generators, the ``v`` before the ``d``"""

    return [(flavor, x) for flavor in FLAVORS for x in _order(n)]


def overlap_words(n):
    """Length three words in which both adjacent pairs are rewritable"""

    gens = generators(n)
    return [(a, b, c) for a, b, c in itertools.product(gens, repeat=3)
            if _out_of_order(n, a, b) and _out_of_order(n, b, c)]


def resolve_overlap(n, word, variant=CORRECTED):
    """Normal forms after rewriting the left pair first and the right pair
    first"""

    sides = []
    for idx in (0, 1):
        result = {}
        for coeff, reduced in _reduce_at(n, word, idx, variant):
            _accumulate(result, coeff, _normal_form(n, reduced, variant))
        sides.append(DiffVec._wrap(n, result))
    return sides[0], sides[1]


def _word_text(word):
    return " ".join("%s%s" % token for token in word)


def confluence_report_diff(n, variant=CORRECTED):
    """Resolve every overlap ambiguity at rank ``n``

    :return: a dict with the overlap count and a list of failures, each
        carrying the witness word and both normal forms
    """

    HoweBase.validate_rank(n)
    _check_variant(variant)
    words = overlap_words(n)
    failures = []
    for word in words:
        left, right = resolve_overlap(n, word, variant)
        if left != right:
            failures.append({"word": _word_text(word),
                             "left": left.to_json(),
                             "right": right.to_json()})
    _log.info("Checked %s overlaps of the %s relations at n=%s: %s failures",
              len(words), variant, n, len(failures))
    return {"n": n, "variant": variant, "overlaps": len(words),
            "failures": failures}


def _words_up_to(n, length):
    gens = generators(n)
    for size in range(length + 1):
        for word in itertools.product(gens, repeat=size):
            yield word


def flatness_report_diff(n, max_length=4, variant=CORRECTED):
    """Normalize every word of length at most ``max_length``

    Ordered words must be fixed points and no normal form may exceed the
    length of its word.
    """

    HoweBase.validate_rank(n)
    failures = []
    count = 0
    for word in _words_up_to(n, max_length):
        count += 1
        terms = _normal_form(n, word, variant)
        if all(not _out_of_order(n, a, b) for a, b in zip(word, word[1:])):
            if terms != {_normal_key(n, word): ONE}:
                failures.append(_word_text(word))
            continue
        for dmask, vmask in terms:
            if bin(dmask).count("1") + bin(vmask).count("1") > len(word):
                failures.append(_word_text(word))
                break
    _log.info("Normalized %s words up to length %s at n=%s: %s failures",
              count, max_length, n, len(failures))
    return {"n": n, "words": count, "failures": failures}


def basis_size(n):
    """Number of normal monomials ``v_S d_T``, which is ``4^n * 4^n``"""

    HoweBase.validate_rank(n)
    size = 1 << 2 * n
    return size * size


def omega_elements(n, variant=CORRECTED):
    """``omega_q = sum (-q)^i v_i v_-i`` and
    ``omega_q^vee = sum (-q)^-i d_i d_-i``"""

    HoweBase.validate_rank(n)
    omega = DiffVec.zero(n)
    omega_vee = DiffVec.zero(n)
    for i in range(1, n + 1):
        omega = omega + normalize_diff(
            [(VAR, i), (VAR, -i)], n, variant).scale(neg_q_power(i))
        omega_vee = omega_vee + normalize_diff(
            [(DER, i), (DER, -i)], n, variant).scale(neg_q_power(-i))
    return omega, omega_vee


def omega_in_exterior(n):
    """``omega_q`` read as an element of the exterior algebra"""

    return ExtVec(n, dict((Subset(n, [i, -i]), neg_q_power(i))
                          for i in range(1, n + 1)))


def omega_action_defect(S):
    """``omega_q v_S - e v_S``, zero when multiplication by ``omega_q`` is
    the Chevalley operator ``e``"""

    x = v(S)
    product = multiply(omega_in_exterior(S.n), x)
    return product - apply_diff(GeneratorTag(DIFF, "e"), x)


def classical_omega(n):
    """Coefficients of ``omega_q`` at ``q = 1`` in the rescaled basis
    ``u``, where ``v_-j = -u_-j`` for ``j = n-1, n-3, ...``

    :return: ``{i: coefficient of u_i u_-i}``
    """

    HoweBase.validate_rank(n)
    result = {}
    for i in range(1, n + 1):
        rescale = -1 if (n - i) % 2 else 1
        result[i] = neg_q_power(i).evaluate(1) * rescale
    return result
