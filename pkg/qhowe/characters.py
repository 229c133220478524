"""Character combinatorics of the exterior algebra on both sides of the
duality

Characters are recorded as multiplicity vectors over the fundamental Weyl
modules ``Delta(varpi_k)`` on the ``sp_2n`` side and over ``Delta(m)`` on
the ``sl_2`` side. Tilting characters are solved from the decomposition of
the exterior powers into tilting summands, whose multiplicities are read
off quantum binomials under a :class:`~qhowe.qarith.Specialization`.
"""

import collections
import itertools
import logging
from math import comb

from qhowe import exception
from qhowe.base import HoweBase
from qhowe.canonical import fundamental_subsets
from qhowe.extalg import basis
from qhowe.qarith import (LaurentInt, Specialization, padic_expand,
                          qbinom_nonzero, q_power, vanishes_at_root)

_log = logging.getLogger("characters")

SUMMAND, PRINTED = "summand", "printed"
CONVENTIONS = (SUMMAND, PRINTED)


class CharVec(HoweBase):
    """A character as a multiplicity vector

    :param side: ``sp`` (index ``k`` stands for ``varpi_k``) or ``sl2``
        (index ``m`` stands for the highest weight ``m``)
    :param n: the rank
    :param mults: integer multiplicities indexed ``0..n``
    """

    log = logging.getLogger("characters.CharVec")

    def __init__(self, side, n, mults=None):
        if side not in ("sp", "sl2"):
            err_msg = "Unknown character side %r" % side
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        self.side = side
        self.n = self.validate_rank(n)
        self.mults = list(mults) if mults is not None else [0] * (n + 1)
        if len(self.mults) != n + 1:
            err_msg = "Expected %s multiplicities, got %s" % (n + 1,
                                                              len(self.mults))
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)

    def _key(self):
        return (self.side, self.n, tuple(self.mults))

    def __str__(self):
        symbol = "varpi_%s" if self.side == "sp" else "Delta(%s)"
        pieces = []
        for idx in range(self.n, -1, -1):
            c = self.mults[idx]
            if c:
                name = symbol % idx
                pieces.append(name if c == 1 else "%s*%s" % (c, name))
        return " + ".join(pieces) or "0"

    def __getitem__(self, idx):
        return self.mults[idx]

    def _combine(self, other, sign):
        if (self.side, self.n) != (other.side, other.n):
            err_msg = "Cannot combine %r and %r" % (self, other)
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        return CharVec(self.side, self.n,
                       [a + sign * b for a, b in zip(self.mults, other.mults)])

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c):
        return CharVec(self.side, self.n, [c * a for a in self.mults])

    def support(self):
        return [idx for idx, c in enumerate(self.mults) if c]

    def is_nonnegative(self):
        return all(c >= 0 for c in self.mults)

    def to_json(self):
        return {"side": self.side, "n": self.n, "mults": list(self.mults)}


def unit_vector(side, n, idx):
    mults = [0] * (n + 1)
    mults[idx] = 1
    return CharVec(side, n, mults)


def fundamental_dimension(n, k):
    """``dim Delta(varpi_k) = C(2n, k) - C(2n, k - 2)``"""

    return comb(2 * n, k) - (comb(2 * n, k - 2) if k >= 2 else 0)


def lambda_sp_character(n, k):
    """Weyl character of ``Lambda^k`` on the ``sp_2n`` side"""

    HoweBase.validate_rank(n)
    if not 0 <= k <= 2 * n:
        err_msg = "Degree %s outside 0..%s" % (k, 2 * n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    if k > n:
        k = 2 * n - k
    result = CharVec("sp", n)
    for j in range(k, -1, -2):
        result.mults[j] = 1
    return result


def lambda_sl2_character(n):
    """Weyl character of the whole exterior algebra on the ``sl_2`` side:
    ``Delta(n - k)`` occurs ``dim Delta(varpi_k)`` times"""

    HoweBase.validate_rank(n)
    result = CharVec("sl2", n)
    for k in range(n + 1):
        result.mults[n - k] = fundamental_dimension(n, k)
    return result


def total_dimension(n):
    """``sum_k dim Delta(varpi_k) (n - k + 1)``, which must equal ``4^n``"""

    return sum(fundamental_dimension(n, k) * (n - k + 1)
               for k in range(n + 1))


def summand_multiplicity(n, k, i, spec):
    """Multiplicity of ``T(varpi_k)`` as a summand of ``Lambda^(k + 2i)``

    :return: 1 when ``[n - k choose i]`` survives ``spec``, else 0
    """

    if k < 0 or i < 0 or k + 2 * i > 2 * n:
        err_msg = "No summand T(varpi_%s) of degree %s at rank %s" % (
            k, k + 2 * i, n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return int(qbinom_nonzero(n - k, i, spec))


def tilting_weyl_matrix(n, spec, convention=SUMMAND, kmax=None):
    """``(T(varpi_k) : Delta(varpi_l))`` for ``0 <= l, k <= kmax``

    :param n: the rank
    :param spec: a :class:`~qhowe.qarith.Specialization`
    :param convention: ``summand`` solves
        ``[Lambda^K] = sum [T(varpi_{K-2i})]`` over the summands with
        ``[n - K + 2i choose i] != 0``; ``printed`` applies the recursion
        with the binomial ``[n - K choose i]`` instead, which can produce
        negative entries
    :param kmax: the last row, ``n`` by default
    :return: a list of rows of integers
    :raises NegativeMultiplicity: for a negative entry under ``summand``
    """

    HoweBase.validate_rank(n)
    if convention not in CONVENTIONS:
        err_msg = "Unknown tilting convention %r" % (convention, )
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    kmax = n if kmax is None else min(kmax, n)
    size = kmax + 1
    rows = []
    for K in range(size):
        row = [0] * size
        for j in range(K, -1, -2):
            row[j] = 1
        for i in range(1, K // 2 + 1):
            if convention == SUMMAND:
                subtract = qbinom_nonzero(n - K + 2 * i, i, spec)
            else:
                subtract = qbinom_nonzero(n - K, i, spec)
            if subtract:
                row = [a - b for a, b in zip(row, rows[K - 2 * i])]
        negative = [l for l, a in enumerate(row) if a < 0]
        if negative:
            msg = "Negative multiplicity in row %s at n=%s, %s: columns %s" % (
                K, n, spec, negative)
            if convention == SUMMAND:
                _log.error(msg)
                raise exception.NegativeMultiplicity(msg)
            _log.warning(msg)
        rows.append(row)
    return rows


def tilting_character(n, k, spec, convention=SUMMAND):
    rows = tilting_weyl_matrix(n, spec, convention, kmax=k)
    return CharVec("sp", n, rows[k] + [0] * (n - k))


def sl2_tilting_deltas(m, spec):
    """Weyl factors of the ``sl_2`` tilting module ``T(m)`` by digit flips

    Write ``m + 1 = sum a_j p^(j)``; the factors ``Delta(m')`` have
    ``m' + 1 = sum e_j a_j p^(j)`` with the top sign fixed to ``+1``.
    """

    if m < 0:
        err_msg = "sl_2 tilting module with negative weight %s" % m
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    digits = padic_expand(m + 1, spec)
    top = len(digits) - 1
    values = set()
    for signs in itertools.product((1, -1), repeat=top):
        total = digits[top] * spec.digit_weight(top)
        for j, sign in enumerate(signs):
            total += sign * digits[j] * spec.digit_weight(j)
        if total >= 1:
            values.add(total - 1)
    return values


def sp_decomposition_matrix(n, spec):
    """``[nabla(varpi_l) : L(varpi_k)]`` as rows ``l``, columns ``k``, read
    off the ``sl_2`` tilting modules ``T(n - k)``"""

    HoweBase.validate_rank(n)
    matrix = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        for m in sl2_tilting_deltas(n - k, spec):
            matrix[n - m][k] = 1
    return matrix


def weyl_weights(m):
    return collections.Counter(range(-m, m + 1, 2))


def _tensor(left, right):
    result = collections.Counter()
    for a, x in left.items():
        for b, y in right.items():
            result[a + b] += x * y
    return result


def _frobenius(weights, factor):
    return collections.Counter(dict((factor * w, c)
                                    for w, c in weights.items()))


def decompose_weyl(weights):
    """Write a weight multiset as an integer combination of Weyl characters

    :return: ``{m: multiplicity}`` without zero entries
    """

    remaining = collections.Counter(dict((w, c) for w, c in weights.items()
                                         if c))
    result = {}
    while remaining:
        top = max(remaining)
        c = remaining[top]
        if top < 0:
            err_msg = "Weight multiset %s is not W-invariant" % dict(weights)
            _log.error(err_msg)
            raise exception.BadValue(err_msg)
        result[top] = c
        for w in range(-top, top + 1, 2):
            remaining[w] -= c
            if not remaining[w]:
                del remaining[w]
    return result


def sl2_simple_weights(m, spec):
    """Weights of the simple module ``L(m)`` by Steinberg's tensor product
    theorem; the top digit is a classical Weyl character when ``p`` is
    infinite"""

    weights = collections.Counter([0])
    for j, a in enumerate(padic_expand(m, spec)):
        weights = _tensor(weights,
                          _frobenius(weyl_weights(a), spec.digit_weight(j)))
    return weights


def sl2_decomposition_number(m, m2, spec):
    """``[nabla(m) : L(m2)]``, computed by peeling simple characters off
    the Weyl character"""

    remaining = weyl_weights(m)
    count = 0
    while remaining:
        top = max(remaining)
        c = remaining[top]
        if top == m2:
            count = c
        simple = sl2_simple_weights(top, spec)
        for w, x in simple.items():
            remaining[w] -= c * x
            if not remaining[w]:
                del remaining[w]
    return count


def sl2_tilting_character(m, spec):
    """Weyl factors of ``T(m)`` by Donkin's tensor product formula

    ``T(ell - 1 + r + ell m1) = T(ell - 1 + r) (x) T(m1)^Fr`` with
    ``T(ell - 1 + r) = Delta(ell - 1 + r) + Delta(ell - 1 - r)``; the
    Frobenius twisted factor is classical (a Weyl module when ``p`` is
    infinite, a tilting module in characteristic ``p`` otherwise).

    :return: ``{m': multiplicity}``
    """

    ell = spec.ell
    if ell is None or m < ell - 1:
        return {m: 1}
    r = (m - ell + 1) % ell
    m1 = (m - ell + 1) // ell
    head = weyl_weights(ell - 1 + r)
    if r:
        head = head + weyl_weights(ell - 1 - r)
    if spec.p is None:
        tail = weyl_weights(m1)
    else:
        tail = collections.Counter()
        classical = Specialization(spec.p, spec.p)
        for m2, c in sl2_tilting_character(m1, classical).items():
            for w in range(-m2, m2 + 1, 2):
                tail[w] += c
    return decompose_weyl(_tensor(head, _frobenius(tail, ell)))


def ringel_crosscheck(n, spec):
    """Compare ``(T(varpi_k) : Delta(varpi_l))`` with
    ``[nabla(n - l) : L(n - k)]`` on the ``sl_2`` side

    :return: a list of mismatches ``(k, l, left, right)``; empty when the
        identity holds
    """

    matrix = tilting_weyl_matrix(n, spec)
    mismatches = []
    for k in range(n + 1):
        for l in range(n + 1):
            right = sl2_decomposition_number(n - l, n - k, spec) \
                if l <= k else 0
            if matrix[k][l] != right:
                mismatches.append((k, l, matrix[k][l], right))
    if mismatches:
        _log.warning("Ringel identity fails at n=%s, %s: %s", n, spec,
                     mismatches)
    return mismatches


def digit_flip_crosscheck(m_max, spec):
    """Compare the digit flip rule with Donkin's formula for ``m <= m_max``

    :return: the list of ``m`` where the two disagree
    """

    failures = []
    for m in range(m_max + 1):
        expected = dict((x, 1) for x in sl2_tilting_deltas(m, spec))
        if sl2_tilting_character(m, spec) != expected:
            failures.append(m)
    return failures


def decomposition_closure(n, spec):
    """Check ``[Lambda^K] = sum_i mult(n, K - 2i, i) [T(varpi_{K-2i})]``

    :return: the degrees ``K`` where the identity fails
    """

    rows = tilting_weyl_matrix(n, spec)
    failures = []
    for K in range(n + 1):
        total = [0] * (n + 1)
        for i in range(K // 2 + 1):
            k = K - 2 * i
            if summand_multiplicity(n, k, i, spec):
                total = [a + b for a, b in zip(total, rows[k] + [0] *
                                               (n + 1 - len(rows[k])))]
        if total != lambda_sp_character(n, K).mults:
            failures.append(K)
    return failures


def two_rho_pairing(S):
    n = S.n
    return sum(2 * (n - i) * x for i, x in enumerate(S.weight()))


def qdim_fund(n, k):
    """``sum_{S in C(varpi_k)} q^(2rho, wt S)``"""

    total = LaurentInt()
    for S in fundamental_subsets(n, k):
        total = total + q_power(two_rho_pairing(S))
    return total


def qdim_tilting(n, k, spec):
    row = tilting_weyl_matrix(n, spec, kmax=k)[k]
    total = LaurentInt()
    for l, c in enumerate(row):
        if c:
            total = total + qdim_fund(n, l) * c
    return total


def qdim_probe(n, spec):
    """For each ``k``: does ``qdim T(varpi_k)`` vanish under ``spec``, and
    does that match digitwise dominance of ``n`` over ``k``

    The result is a report; no outcome is treated as a failure.
    """

    rows = []
    for k in range(n + 1):
        value = qdim_tilting(n, k, spec)
        nonzero = not vanishes_at_root(value, spec)
        dominant = qbinom_nonzero(n, k, spec)
        rows.append({"k": k, "qdim_nonzero": nonzero,
                     "digit_dominant": dominant,
                     "agree": nonzero == dominant})
    return rows


def weight_multiset(n, k):
    """``sp_2n`` weights of ``Lambda^k`` with multiplicities"""

    return collections.Counter(S.weight() for S in basis(n, k))


def fundamental_weight_multiset(n, k):
    return collections.Counter(S.weight() for S in fundamental_subsets(n, k))


def character_identity(n):
    """Graded bookkeeping of ``Lambda = sum_k Delta(varpi_k) (x)
    Delta(n - k)`` per ``sp_2n`` weight

    :return: a list of weights where the two sides differ
    """

    left = collections.Counter()
    for S in basis(n):
        left[(S.weight(), len(S) - n)] += 1
    right = collections.Counter()
    for k in range(n + 1):
        for wt, c in fundamental_weight_multiset(n, k).items():
            for m in range(-(n - k), n - k + 1, 2):
                right[(wt, m)] += c
    return sorted(key for key in set(left) | set(right)
                  if left[key] != right[key])
