"""The quantum exterior algebra of type C over ``A = Z[q, q^-1]``

Generators ``v_x`` are indexed by ``x`` in ``[1,-1] = 1 < ... < n < -n <
... < -1``. A subset ``S`` of that ordered set stands for the standard basis
vector ``v_S``, the ordered product of its generators, and is stored as a
``2n`` bit mask with ``pos(i) = i - 1`` and ``pos(-i) = 2n - i``.
"""

import functools
import itertools
import logging
import random

from qhowe import exception
from qhowe.base import HoweBase
from qhowe.qarith import ONE, Q, QINV, LaurentInt, neg_q_power, q_power
from qhowe.utils import parse_int_list

_log = logging.getLogger("extalg")


def position(x, n):
    """Bit position of the signed index ``x`` in the order ``[1,-1]``"""

    return x - 1 if x > 0 else 2 * n + x


def index_at(pos, n):
    """Inverse of :func:`position`"""

    return pos + 1 if pos < n else pos - 2 * n


def check_index(x, n):
    if isinstance(x, bool) or not isinstance(x, int) or x == 0 or abs(x) > n:
        err_msg = "Index %r is outside +-1..+-%s" % (x, n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return x


class Subset(HoweBase):
    """A subset ``S`` of ``[1,-1]`` at rank ``n``, read as a dot diagram

    The diagram has ``n`` columns; column ``i`` carries a top dot when
    ``i`` is in ``S`` and a bottom dot when ``-i`` is in ``S``.

    :param n: the ambient rank
    :param members: an iterable of signed indices
    """

    log = logging.getLogger("extalg.Subset")

    def __init__(self, n, members=()):
        self.n = self.validate_rank(n)
        mask = 0
        for x in members:
            check_index(x, n)
            mask |= 1 << position(x, n)
        self.mask = mask

    @classmethod
    def from_mask(cls, n, mask):
        obj = cls.__new__(cls)
        obj.n = n
        obj.mask = mask
        return obj

    @classmethod
    def parse(cls, text, n):
        """Parse the literal ``"1,3,-4,-1"``; member order is irrelevant"""

        members = parse_int_list(text)
        if len(set(members)) != len(members):
            err_msg = "Repeated entries in subset literal %r" % text
            cls.log.error(err_msg)
            raise exception.BadValue(err_msg)
        return cls(n, members)

    @classmethod
    def interval(cls, n, k):
        """``{1, ..., k}``"""

        return cls.from_mask(n, (1 << k) - 1)

    def _key(self):
        return (self.n, self.mask)

    @property
    def members(self):
        n, mask = self.n, self.mask
        return tuple(
            index_at(pos, n) for pos in range(2 * n) if mask >> pos & 1)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, x):
        if x == 0 or abs(x) > self.n:
            return False
        return bool(self.mask >> position(x, self.n) & 1)

    def __str__(self):
        return "{%s}" % ",".join(str(x) for x in self.members)

    def sort_key(self):
        """Serialization order: by size, then lexicographically in ``[1,-1]``"""

        n, mask = self.n, self.mask
        return (len(self),
                tuple(pos for pos in range(2 * n) if mask >> pos & 1))

    def to_json(self):
        return list(self.members)

    def column(self, i):
        """0 for an undotted, 2 for a fully dotted and 1 for a half column"""

        return int(i in self) + int(-i in self)

    def full_columns(self):
        return [i for i in range(1, self.n + 1) if self.column(i) == 2]

    def empty_columns(self):
        return [i for i in range(1, self.n + 1) if self.column(i) == 0]

    def negate(self):
        return Subset(self.n, [-x for x in self.members])

    def complement(self):
        return Subset.from_mask(self.n, ((1 << 2 * self.n) - 1) & ~self.mask)

    def with_members(self, added=(), removed=()):
        mask = self.mask
        for x in removed:
            mask &= ~(1 << position(x, self.n))
        for x in added:
            mask |= 1 << position(x, self.n)
        return Subset.from_mask(self.n, mask)

    def add_column(self, i):
        return self.with_members(added=(i, -i))

    def remove_column(self, i):
        return self.with_members(removed=(i, -i))

    def weight(self):
        """``wt S`` as a vector in ``Z^n``: ``+1`` for ``i``, ``-1`` for ``-i``"""

        return tuple(int(i in self) - int(-i in self)
                     for i in range(1, self.n + 1))

    def count_right(self, x):
        """``|S_{>x}|``: members in columns strictly right of ``x``"""

        return sum(self.column(j) for j in range(x + 1, self.n + 1))


class Stats(object):
    """Dot statistics of a subset

    ``w = (|S0| - |S0c|) / 2`` is always integral and equals ``|S| - n``.
    """

    def __init__(self, S):
        full = S.full_columns()
        empty = S.empty_columns()
        self.S0 = Subset(S.n, full + [-i for i in full])
        self.S0c = Subset(S.n, empty + [-i for i in empty])
        self.w = len(full) - len(empty)
        self.wgt = S.weight()

    def __repr__(self):
        return "<Stats S0=%s S0c=%s w=%s wgt=%s>" % (self.S0, self.S0c,
                                                    self.w, self.wgt)


def stats(S):
    return Stats(S)


def w(S):
    return len(S) - S.n


def w_gt(S, i):
    """``w_{>i}``: fully dotted minus undotted columns right of ``i``"""

    full = empty = 0
    for j in range(i + 1, S.n + 1):
        col = S.column(j)
        full += col == 2
        empty += col == 0
    return full - empty


def w_lt(S, i):
    """``w_{<i}``: undotted minus fully dotted columns left of ``i``"""

    full = empty = 0
    for j in range(1, i):
        col = S.column(j)
        full += col == 2
        empty += col == 0
    return empty - full


def window(S, i):
    """``S_{i,i+1}`` for ``i < n`` and ``S_n`` for ``i = n``"""

    cols = (i, ) if i == S.n else (i, i + 1)
    return Subset(S.n, [x for x in S.members if abs(x) in cols])


def window_members(S, i):
    """The members of :func:`window` as a frozenset of signed indices"""

    cols = (i, ) if i == S.n else (i, i + 1)
    return frozenset(x for x in S.members if abs(x) in cols)


@functools.lru_cache(maxsize=None)
def _basis_masks(n, k):
    masks = []
    for combo in itertools.combinations(range(2 * n), k):
        mask = 0
        for pos in combo:
            mask |= 1 << pos
        masks.append(mask)
    return tuple(masks)


def basis(n, k=None):
    """Standard basis subsets in serialization order

    :param n: the rank
    :param k: only subsets of size ``k`` when given
    """

    HoweBase.validate_rank(n)
    degrees = range(2 * n + 1) if k is None else [k]
    result = []
    for d in degrees:
        if 0 <= d <= 2 * n:
            result.extend(Subset.from_mask(n, m) for m in _basis_masks(n, d))
    return result


class ExtVec(HoweBase):
    """A sparse element ``sum c_S v_S`` of the exterior algebra

    :param n: the rank
    :param terms: a mapping from :class:`Subset` (or raw bit mask) to
        :class:`~qhowe.qarith.LaurentInt` or int coefficients
    """

    log = logging.getLogger("extalg.ExtVec")

    def __init__(self, n, terms=None):
        self.n = self.validate_rank(n)
        self._terms = {}
        for key, coeff in (terms or {}).items():
            mask = self._mask_of(key)
            coeff = LaurentInt(coeff)
            if coeff:
                total = self._terms.get(mask, LaurentInt()) + coeff
                if total:
                    self._terms[mask] = total
                else:
                    self._terms.pop(mask, None)

    def _mask_of(self, key):
        if isinstance(key, Subset):
            if key.n != self.n:
                err_msg = "Subset %s has rank %s, expected %s" % (key, key.n,
                                                                  self.n)
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)
            return key.mask
        return key

    @classmethod
    def _wrap(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    @classmethod
    def basis_vector(cls, S, coeff=1):
        return cls._wrap(S.n, {S.mask: LaurentInt(coeff)} if coeff else {})

    @classmethod
    def zero(cls, n):
        return cls._wrap(n, {})

    @classmethod
    def from_json(cls, data):
        """Inverse of :meth:`to_json`"""

        try:
            n = data["n"]
            result = cls.zero(cls.validate_rank(n))
            for term in data["terms"]:
                S = Subset(n, term["S"])
                result = result + cls.basis_vector(
                    S, LaurentInt.from_json(term["c"]))
        except (KeyError, TypeError):
            err_msg = "Invalid element JSON %r" % (data, )
            cls.log.error(err_msg)
            raise exception.BadValue(err_msg)
        return result

    def _key(self):
        return (self.n, frozenset(self._terms.items()))

    def to_json(self):
        return {
            "n": self.n,
            "terms": [{"S": S.to_json(), "c": c.to_json()}
                      for S, c in self.items()]
        }

    def items(self):
        """``(Subset, coefficient)`` pairs in serialization order"""

        pairs = [(Subset.from_mask(self.n, m), c)
                 for m, c in self._terms.items()]
        pairs.sort(key=lambda pair: pair[0].sort_key())
        return pairs

    def raw_items(self):
        return self._terms.items()

    def support(self):
        return [S for S, _ in self.items()]

    def coefficient(self, S):
        return self._terms.get(self._mask_of(S), LaurentInt())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    __nonzero__ = __bool__

    def __len__(self):
        return len(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join("(%s)*v%s" % (c, S) for S, c in self.items())

    def __add__(self, other):
        self.check_same_rank(self, other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            total = terms.get(m, LaurentInt()) + c
            if total:
                terms[m] = total
            else:
                terms.pop(m, None)
        return ExtVec._wrap(self.n, terms)

    def __neg__(self):
        return ExtVec._wrap(self.n,
                            dict((m, -c) for m, c in self._terms.items()))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        coeff = LaurentInt(coeff)
        if not coeff:
            return ExtVec.zero(self.n)
        return ExtVec._wrap(self.n,
                            dict((m, coeff * c) for m, c in self._terms.items()))

    def __rmul__(self, coeff):
        if isinstance(coeff, (int, LaurentInt)):
            return self.scale(coeff)
        return NotImplemented

    def degree_part(self, k):
        return ExtVec._wrap(
            self.n,
            dict((m, c) for m, c in self._terms.items()
                 if bin(m).count("1") == k))

    def map_basis(self, func):
        """Linear extension of ``func(Subset) -> ExtVec``"""

        result = {}
        for m, c in self._terms.items():
            image = func(Subset.from_mask(self.n, m))
            for m2, c2 in image._terms.items():
                total = result.get(m2, LaurentInt()) + c * c2
                if total:
                    result[m2] = total
                else:
                    result.pop(m2, None)
        return ExtVec._wrap(self.n, result)

    def map_coefficients(self, func):
        terms = {}
        for m, c in self._terms.items():
            image = func(c)
            if image:
                terms[m] = image
        return ExtVec._wrap(self.n, terms)


def v(S):
    """The standard basis vector ``v_S``"""

    return ExtVec.basis_vector(S)


def weight_vector(x):
    """The common ``sp_2n`` weight of a weight vector

    :param x: a nonzero :class:`ExtVec` whose terms share one weight
    :rtype: tuple
    """

    weights = set(S.weight() for S in x.support())
    if len(weights) != 1:
        err_msg = "Not a nonzero weight vector: %s" % x
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return weights.pop()


def reduce_pair(n, a, b):
    """Rewrite the out-of-order pair ``v_a v_b`` as ordered pairs

    :return: ``[(coefficient, (x, y)), ...]`` with ``pos(x) < pos(y)``
    """

    if a > 0 and b > 0:
        return [(-Q, (b, a))]
    if a < 0 and b < 0:
        return [(-Q, (b, a))]
    # a = -i, b = j
    i, j = -a, b
    if i != j:
        return [(-Q, (b, a))]
    result = [(LaurentInt.monomial(2, -1), (i, -i))]
    diff = Q - QINV
    for k in range(1, n - i + 1):
        result.append((diff * neg_q_power(k + 1), (i + k, -(i + k))))
    return result


def _is_out_of_order(n, a, b):
    return position(a, n) >= position(b, n)


def _ordered_mask(n, word):
    mask = 0
    for x in word:
        mask |= 1 << position(x, n)
    return mask


def _reduce_at(n, word, idx):
    """One rewriting step at the pair ``(idx, idx + 1)``

    :return: a list of ``(coefficient, word)``; empty when the pair is a
        repeated generator
    """

    a, b = word[idx], word[idx + 1]
    if a == b:
        return []
    prefix, suffix = word[:idx], word[idx + 2:]
    return [(c, prefix + pair + suffix) for c, pair in reduce_pair(n, a, b)]


def _accumulate(target, coeff, terms):
    for m, c in terms.items():
        total = target.get(m, LaurentInt()) + coeff * c
        if total:
            target[m] = total
        else:
            target.pop(m, None)


@functools.lru_cache(maxsize=None)
def _normal_form(n, word):
    """Leftmost rewriting to normal form, memoized per word

    The returned dict is shared by the cache and must not be mutated.
    """

    for idx in range(len(word) - 1):
        if _is_out_of_order(n, word[idx], word[idx + 1]):
            result = {}
            for coeff, reduced in _reduce_at(n, word, idx):
                _accumulate(result, coeff, _normal_form(n, reduced))
            return result
    return {_ordered_mask(n, word): ONE}


STRATEGIES = ("leftmost", "rightmost", "random")


def _normal_form_with(n, word, choose):
    reducible = [idx for idx in range(len(word) - 1)
                 if _is_out_of_order(n, word[idx], word[idx + 1])]
    if not reducible:
        return {_ordered_mask(n, word): ONE}
    result = {}
    for coeff, reduced in _reduce_at(n, word, choose(reducible)):
        _accumulate(result, coeff, _normal_form_with(n, reduced, choose))
    return result


def normalize(word, n, strategy="leftmost", rng=None):
    """Expand a product of generators in the standard basis

    :param word: a sequence of signed indices
    :param n: the rank
    :param strategy: ``leftmost`` (memoized), ``rightmost`` or ``random``
        choice of the pair rewritten at each step
    :param rng: a :class:`random.Random` for the ``random`` strategy
    :rtype: ExtVec
    """

    HoweBase.validate_rank(n)
    word = tuple(word)
    for x in word:
        check_index(x, n)
    if strategy == "leftmost":
        terms = _normal_form(n, word)
    elif strategy == "rightmost":
        terms = _normal_form_with(n, word, lambda idxs: idxs[-1])
    elif strategy == "random":
        rng = rng or random.Random(0)
        terms = _normal_form_with(n, word, rng.choice)
    else:
        err_msg = "Unknown rewriting strategy %r" % (strategy, )
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return ExtVec._wrap(n, dict(terms))


def multiply(x, y):
    """The bilinear product of two elements"""

    n = HoweBase.check_same_rank(x, y)
    result = {}
    for m1, c1 in x.raw_items():
        w1 = Subset.from_mask(n, m1).members
        for m2, c2 in y.raw_items():
            w2 = Subset.from_mask(n, m2).members
            _accumulate(result, c1 * c2, _normal_form(n, w1 + w2))
    return ExtVec._wrap(n, result)


def reversed_expand(S):
    """``v_S^rev``: the generators of ``S`` multiplied in reverse order"""

    return ExtVec._wrap(S.n, dict(_normal_form(S.n, S.members[::-1])))


def overlap_words(n):
    """All length three words whose two adjacent pairs both need rewriting"""

    indices = [x for x in range(1, n + 1)] + [-x for x in range(n, 0, -1)]
    words = []
    for a, b, c in itertools.product(indices, repeat=3):
        if _is_out_of_order(n, a, b) and _is_out_of_order(n, b, c):
            words.append((a, b, c))
    return words


def resolve_overlap(n, word):
    """Normal forms after rewriting the left pair first, and the right pair
    first

    :return: a pair of :class:`ExtVec`
    """

    sides = []
    for idx in (0, 1):
        result = {}
        for coeff, reduced in _reduce_at(n, word, idx):
            _accumulate(result, coeff, _normal_form(n, reduced))
        sides.append(ExtVec._wrap(n, result))
    return sides[0], sides[1]


def confluence_report(n, samples=0, seed=0):
    """Check every overlap ambiguity of the rewriting system at rank ``n``

    :param samples: additionally compare this many random words of length
        ``2n`` under the three strategies
    :return: a dict with the number of overlaps checked and any failures
    """

    HoweBase.validate_rank(n)
    failures = []
    words = overlap_words(n)
    for word in words:
        left, right = resolve_overlap(n, word)
        if left != right:
            failures.append({"word": list(word), "left": left.to_json(),
                             "right": right.to_json()})
    rng = random.Random(seed)
    indices = [x for x in range(1, n + 1)] + [-x for x in range(1, n + 1)]
    for _ in range(samples):
        word = [rng.choice(indices) for _ in range(2 * n)]
        reference = normalize(word, n)
        for strategy in ("rightmost", "random"):
            other = normalize(word, n, strategy=strategy, rng=rng)
            if other != reference:
                failures.append({"word": word, "strategy": strategy,
                                 "left": reference.to_json(),
                                 "right": other.to_json()})
    _log.info("Checked %s overlaps and %s random words at n=%s: %s failures",
              len(words), samples, n, len(failures))
    return {"n": n, "overlaps": len(words), "samples": samples,
            "failures": failures}


def flatness_counts(n):
    """Irreducible words per degree

    The irreducible words are the strictly increasing words in ``[1,-1]``.
    Together with :func:`confluence_report` this certifies that the ordered
    monomials form a basis.

    :return: the counts, or None when an irreducible word does not
        normalize to its own monomial
    """

    HoweBase.validate_rank(n)
    ordered = [x for x in range(1, n + 1)] + [-x for x in range(n, 0, -1)]
    counts = []
    for k in range(2 * n + 1):
        count = 0
        for word in itertools.combinations(ordered, k):
            if _normal_form(n, word) != {_ordered_mask(n, word): ONE}:
                _log.warning("Irreducible word %s is rewritten at n=%s",
                             word, n)
                return None
            count += 1
        counts.append(count)
    return counts


def dual_scalar(S):
    """The scalar ``c`` with ``d_S = c * v_S``

    ``d_i = (-q)^-(i-1) v_i`` and ``d_-i = -q^-2n (-q)^(i-1) v_-i``.
    """

    n = S.n
    result = ONE
    for x in S.members:
        if x > 0:
            result = result * neg_q_power(-(x - 1))
        else:
            result = result * neg_q_power(-x - 1) * q_power(-2 * n, -1)
    return result


def dual_vector(S):
    return ExtVec.basis_vector(S, dual_scalar(S))


def _bar_scalar(S):
    size = len(S)
    full = len(S.full_columns())
    return neg_q_power(-(size * (size - 1) // 2)) * q_power(-full)


def bar_basis(S):
    """``bar(v_S)``"""

    return reversed_expand(S).scale(_bar_scalar(S))


def bar(x):
    """The antilinear bar involution"""

    result = ExtVec.zero(x.n)
    for S, c in x.items():
        result = result + bar_basis(S).scale(c.bar())
    return result


def omega_twist(x):
    """Linear extension of ``v_S -> v_-S``"""

    return x.map_basis(lambda S: ExtVec.basis_vector(S.negate()))


def bilinear(x, y):
    """The symmetric form with orthonormal standard basis"""

    HoweBase.check_same_rank(x, y)
    total = LaurentInt()
    for m, c in x.raw_items():
        other = y._terms.get(m)
        if other is not None:
            total = total + c * other
    return total


def sesquilinear(x, y):
    return bilinear(x, bar(y))


def leq(S, T):
    """The partial order used for unitriangularity of the bar involution

    ``S <= T`` iff both agree off their fully dotted columns and the sorted
    fully dotted columns of ``S`` are entrywise at most those of ``T``.
    """

    if S.n != T.n or len(S) != len(T):
        return False
    full_s, full_t = S.full_columns(), T.full_columns()
    if len(full_s) != len(full_t):
        return False
    rest_s = S.mask & ~Subset(S.n, full_s + [-i for i in full_s]).mask
    rest_t = T.mask & ~Subset(T.n, full_t + [-i for i in full_t]).mask
    if rest_s != rest_t:
        return False
    return all(a <= b for a, b in zip(full_s, full_t))


def v_k_minus(n, k, i):
    """``v_{k,k-2i}``: ``{1..k-2i}`` followed by the last ``i`` columns full"""

    if i < 0 or k - 2 * i < 0 or k - i > n:
        err_msg = "No vector v_{%s,%s} at rank %s" % (k, k - 2 * i, n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    members = list(range(1, k - 2 * i + 1))
    for c in range(n - i + 1, n + 1):
        members.extend([c, -c])
    return Subset(n, members)
