"""The commuting quantum ``sp_2n`` and ``sl_2`` actions on the exterior
algebra, Lusztig's operator ``T``, weight projectors and the rescaled
operators of the differential picture
"""

import itertools
import logging
import re

from qhowe import exception
from qhowe.base import HoweBase
from qhowe.exactla import LaurentMatrix, in_span, rank
from qhowe.extalg import ExtVec, basis, normalize, w_gt, w_lt
from qhowe.qarith import ZERO, neg_q_power, q_power, qfact_i, qint, qint_i

_log = logging.getLogger("actions")

SP, SL2, DIFF = "sp", "sl2", "sl2-diff"
SP_KINDS = ("e", "f", "k", "kinv")
SL2_KINDS = ("E", "F", "K", "Kinv", "T", "Tinv")
DIFF_KINDS = ("e", "f", "Ed", "Fd", "pr")


class GeneratorTag(HoweBase):
    """One generator of either action

    :param side: ``sp``, ``sl2`` or ``sl2-diff``
    :param kind: the generator name, e.g. ``f`` or ``Kinv``
    :param index: the simple root for ``sp`` or the weight for ``pr``
    :param power: the divided power, ``1`` for a plain generator
    """

    log = logging.getLogger("actions.GeneratorTag")

    def __init__(self, side, kind, index=None, power=1):
        kinds = {SP: SP_KINDS, SL2: SL2_KINDS, DIFF: DIFF_KINDS}.get(side)
        if kinds is None or kind not in kinds:
            err_msg = "Unknown generator %r on side %r" % (kind, side)
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        if isinstance(power, bool) or not isinstance(power, int) or power < 1:
            err_msg = "Divided power must be a positive integer: %r" % power
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        if power > 1 and (side == DIFF or kind not in ("e", "f", "E", "F")):
            err_msg = "Generator %s admits no divided power" % kind
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        if (side == SP or kind == "pr") and not isinstance(index, int):
            err_msg = "Generator %s needs an integer index" % kind
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        self.side = side
        self.kind = kind
        self.index = index
        self.power = power

    def _key(self):
        return (self.side, self.kind, self.index, self.power)

    def __str__(self):
        if self.side == SP:
            if self.kind == "kinv":
                return "k%sinv" % self.index
            text = "%s%s" % (self.kind, self.index)
        elif self.kind == "pr":
            return "pr%s" % self.index
        else:
            text = self.kind
        if self.power > 1:
            text += "(%s)" % self.power
        return text

    def degree_shift(self, k, n):
        """Degree of the image of a degree ``k`` vector, or None when
        there is none"""

        if self.side == SP or self.kind in ("K", "Kinv", "pr"):
            target = k
        elif self.kind in ("T", "Tinv"):
            target = 2 * n - k
        elif self.kind in ("E", "e", "Ed"):
            target = k + 2 * self.power
        else:
            target = k - 2 * self.power
        return target if 0 <= target <= 2 * n else None


_TOKEN = re.compile(
    r"^(?:(?P<sp>[ef])(?P<spi>\d+)|k(?P<ki>\d+)(?P<kinv>inv)?"
    r"|(?P<sl2>Kinv|Tinv|[EFKT])|(?P<diff>Ed|Fd|[ef])|pr(?P<pr>-?\d+))"
    r"(?:\^(?P<rep>\d+)|\((?P<div>\d+)\))?$")


def parse_token(token):
    """Parse one word token into a list of tags

    ``f1^2`` repeats ``f1`` twice, ``f1(2)`` is the divided power.
    """

    match = _TOKEN.match(token)
    if match is None:
        err_msg = "Cannot parse generator token %r" % token
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    groups = match.groupdict()
    power = int(groups["div"]) if groups["div"] else 1
    repeat = int(groups["rep"]) if groups["rep"] else 1
    if groups["sp"]:
        tag = GeneratorTag(SP, groups["sp"], int(groups["spi"]), power)
    elif groups["ki"]:
        kind = "kinv" if groups["kinv"] else "k"
        tag = GeneratorTag(SP, kind, int(groups["ki"]), power)
    elif groups["sl2"]:
        tag = GeneratorTag(SL2, groups["sl2"], power=power)
    elif groups["diff"]:
        tag = GeneratorTag(DIFF, groups["diff"], power=power)
    else:
        tag = GeneratorTag(DIFF, "pr", int(groups["pr"]), power)
    return [tag] * repeat


def parse_word(text):
    """Parse a whitespace separated word such as ``"f1^2 e3 K E F(2) T pr0"``

    :return: the tags in written order; :func:`apply_word` applies them
        right to left
    """

    tags = []
    for token in text.split():
        tags.extend(parse_token(token))
    return tags


def _check_index(tag, n):
    if tag.side == SP and not 1 <= tag.index <= n:
        err_msg = "Simple root index %s out of range 1..%s" % (tag.index, n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    if tag.kind == "pr" and not -n <= tag.index <= n:
        err_msg = "Weight %s out of range %s..%s" % (tag.index, -n, n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)


def root_pairing(i, x, n):
    """``(alpha_i, wt v_x)`` with ``alpha_n = 2 eps_n``"""

    sign = 1 if x > 0 else -1
    col = abs(x)
    if i == n:
        return 2 * sign if col == n else 0
    return sign * ((col == i) - (col == i + 1))


def coroot_pairing(i, S):
    """``(alpha_i^vee, wt S)``"""

    wt = S.weight()
    if i == S.n:
        return wt[i - 1]
    return wt[i - 1] - wt[i]


def _vector_f(i, x, n):
    if i == n:
        return -n if x == n else None
    if x == i:
        return i + 1
    if x == -(i + 1):
        return -i
    return None


def _vector_e(i, x, n):
    if i == n:
        return n if x == -n else None
    if x == i + 1:
        return i
    if x == -i:
        return -(i + 1)
    return None


def _sp_basis(kind, i, S):
    n = S.n
    word = S.members
    if kind in ("k", "kinv"):
        exponent = sum(root_pairing(i, x, n) for x in word)
        sign = 1 if kind == "k" else -1
        return ExtVec.basis_vector(S, q_power(sign * exponent))
    move = _vector_f if kind == "f" else _vector_e
    result = ExtVec.zero(n)
    for j, x in enumerate(word):
        y = move(i, x, n)
        if y is None:
            continue
        if kind == "f":
            exponent = -sum(root_pairing(i, z, n) for z in word[j + 1:])
        else:
            exponent = sum(root_pairing(i, z, n) for z in word[:j])
        image = normalize(word[:j] + (y, ) + word[j + 1:], n)
        result = result + image.scale(q_power(exponent))
    return result


def apply_sp(tag, x):
    """Apply an ``sp_2n`` generator

    Divided powers are computed as the plain power followed by exact
    division by ``[m]!`` in ``q_i``.
    """

    _check_index(tag, x.n)
    kind, i = tag.kind, tag.index
    result = x
    for _ in range(tag.power):
        result = result.map_basis(lambda S: _sp_basis(kind, i, S))
    if tag.power > 1:
        denominator = qfact_i(tag.power, i, x.n)
        result = result.map_coefficients(lambda c: c.divexact(denominator))
    return result


def _sl2_E(S, k):
    empty = S.empty_columns()
    scale = q_power(k * (k - 1) // 2)
    result = ExtVec.zero(S.n)
    for cols in itertools.combinations(empty, k):
        exponent = sum(w_gt(S, i) for i in cols)
        target = S.with_members(added=[c for i in cols for c in (i, -i)])
        result = result + ExtVec.basis_vector(target,
                                              scale * neg_q_power(exponent))
    return result


def _sl2_F(S, k):
    full = S.full_columns()
    scale = q_power(k * (k - 1) // 2)
    result = ExtVec.zero(S.n)
    for cols in itertools.combinations(full, k):
        exponent = sum(w_lt(S, i) for i in cols)
        target = S.with_members(removed=[c for i in cols for c in (i, -i)])
        result = result + ExtVec.basis_vector(target,
                                              scale * neg_q_power(exponent))
    return result


def divided_E(x, k):
    if k == 0:
        return x
    return x.map_basis(lambda S: _sl2_E(S, k))


def divided_F(x, k):
    if k == 0:
        return x
    return x.map_basis(lambda S: _sl2_F(S, k))


def _T_basis(S):
    n = S.n
    m = len(S) - n
    sign = -1 if m % 2 == 0 else 1
    start = ExtVec.basis_vector(S)
    result = ExtVec.zero(n)
    bound = n + 1
    for a in range(bound + 1):
        for c in range(bound + 1):
            b = m + a + c
            if not 0 <= b <= bound:
                continue
            inner = divided_E(start, c)
            if not inner:
                continue
            term = divided_E(divided_F(inner, b), a)
            if not term:
                continue
            coeff = q_power(b - a * c, (-1)**b * sign**(a + c))
            result = result + term.scale(coeff)
    return result


def _T_inv_basis(S):
    n = S.n
    m = len(S) - n
    sign = -1 if m % 2 == 0 else 1
    start = ExtVec.basis_vector(S)
    result = ExtVec.zero(n)
    bound = n + 1
    for a in range(bound + 1):
        for c in range(bound + 1):
            b = a + c - m
            if not 0 <= b <= bound:
                continue
            inner = divided_F(start, c)
            if not inner:
                continue
            term = divided_F(divided_E(inner, b), a)
            if not term:
                continue
            coeff = q_power(a * c - b, (-1)**b * sign**b)
            result = result + term.scale(coeff)
    return result


def apply_T(x):
    """Lusztig's quantum Weyl group operator, weight component by weight
    component; it maps degree ``k`` onto degree ``2n - k``
    """

    return x.map_basis(_T_basis)


def apply_T_inv(x):
    return x.map_basis(_T_inv_basis)


def apply_sl2(tag, x):
    """Apply an ``sl_2`` generator, divided powers by closed formulas"""

    kind = tag.kind
    if kind == "E":
        return divided_E(x, tag.power)
    if kind == "F":
        return divided_F(x, tag.power)
    if kind in ("K", "Kinv"):
        sign = 1 if kind == "K" else -1
        return x.map_basis(lambda S: ExtVec.basis_vector(
            S, neg_q_power(sign * (len(S) - S.n))))
    if kind == "T":
        return apply_T(x)
    return apply_T_inv(x)


def _diff_basis(kind, index, S):
    n = S.n
    size = len(S)
    if kind == "pr":
        return ExtVec.basis_vector(S) if size - n == index else \
            ExtVec.zero(n)
    if kind in ("e", "Ed"):
        image = _sl2_E(S, 1).scale(neg_q_power(n))
        if kind == "Ed":
            image = image.scale(q_power(-size - 1))
        return image
    image = _sl2_F(S, 1).scale(neg_q_power(size - 1))
    if kind == "Fd":
        image = image.scale(q_power(-n))
    return image


def apply_diff(tag, x):
    """The operators ``e``, ``f``, their rescaled forms ``Ed``, ``Fd`` and
    the weight projectors ``pr_m``"""

    _check_index(tag, x.n)
    return x.map_basis(lambda S: _diff_basis(tag.kind, tag.index, S))


def apply(tag, x):
    if tag.side == SP:
        return apply_sp(tag, x)
    if tag.side == SL2:
        return apply_sl2(tag, x)
    return apply_diff(tag, x)


def apply_word(tags, x):
    """Apply parsed tags right to left, so the rightmost acts first"""

    for tag in reversed(tags):
        x = apply(tag, x)
    return x


def serre_defect(i, j, S):
    """``(e_i f_j - f_j e_i - delta_ij [h_i]_{q_i}) v_S``, zero when the
    commutator relation holds on ``v_S``
    """

    n = S.n
    x = ExtVec.basis_vector(S)
    e_i, f_j = GeneratorTag(SP, "e", i), GeneratorTag(SP, "f", j)
    result = apply_sp(e_i, apply_sp(f_j, x)) - apply_sp(f_j, apply_sp(e_i, x))
    if i == j:
        result = result - x.scale(qint_i(coroot_pairing(i, S), i, n))
    return result


def filtration_scalar(n, k, i):
    """The coefficient of ``F^(i) v_{k,k-2i}`` on ``v_{1..k-2i}``"""

    binom = i * (i - 1) // 2
    return q_power(binom) * neg_q_power(i * (n - k + i) - binom)


def operator_bases(tag, n, degrees=None):
    """Domain and codomain bases of :func:`operator_matrix`"""

    HoweBase.validate_rank(n)
    degrees = sorted(range(2 * n + 1) if degrees is None else degrees)
    targets = sorted(set(d for d in (tag.degree_shift(k, n) for k in degrees)
                         if d is not None))
    domain = [S for k in degrees for S in basis(n, k)]
    codomain = [S for k in targets for S in basis(n, k)]
    return domain, codomain


def operator_matrix(tag, n, degrees=None):
    """Matrix of a generator on the standard basis of the given degrees

    Columns follow the domain basis in serialization order, rows the
    basis of the degrees the domain is sent to.
    """

    domain, codomain = operator_bases(tag, n, degrees)
    row_of = dict((S.mask, r) for r, S in enumerate(codomain))
    rows = [[ZERO] * len(domain) for _ in codomain]
    for col, S in enumerate(domain):
        for T, c in apply(tag, ExtVec.basis_vector(S)).items():
            rows[row_of[T.mask]][col] = c
    return LaurentMatrix(rows, ncols=len(domain))


def saturate_algebra(generators):
    """A basis of the unital algebra generated by square matrices

    :return: flattened matrices spanning the algebra over ``Q(q)``
    """

    size = generators[0].nrows
    span = [LaurentMatrix.identity(size).flatten()]
    matrices = [LaurentMatrix.identity(size)]
    frontier = []
    for G in generators:
        flat = G.flatten()
        if not in_span(span, flat):
            span.append(flat)
            matrices.append(G)
            frontier.append(G)
    while frontier:
        fresh = []
        for B in frontier:
            for G in generators:
                P = G * B
                flat = P.flatten()
                if not in_span(span, flat):
                    span.append(flat)
                    matrices.append(P)
                    fresh.append(P)
        frontier = fresh
    return span


def images_agree(n):
    """Compare the algebra generated by ``Ed pr_m``, ``Fd pr_m`` and
    ``pr_m`` with the one generated by ``E``, ``F`` and ``K^{+-1}``

    :return: ``(agree, dim_dotted, dim_plain)``
    """

    def full(tag):
        return operator_matrix(tag, n)

    plain = [full(GeneratorTag(SL2, kind)) for kind in ("E", "F", "K",
                                                         "Kinv")]
    dotted = []
    for m in range(-n, n + 1):
        pr = full(GeneratorTag(DIFF, "pr", m))
        dotted.append(pr)
        dotted.append(full(GeneratorTag(DIFF, "Ed")) * pr)
        dotted.append(full(GeneratorTag(DIFF, "Fd")) * pr)
    span_plain = saturate_algebra(plain)
    span_dotted = saturate_algebra(dotted)
    joint = rank(LaurentMatrix.from_columns(span_plain + span_dotted))
    agree = joint == len(span_plain) == len(span_dotted)
    _log.info("Operator algebras at n=%s have dimensions %s and %s",
              n, len(span_dotted), len(span_plain))
    return agree, len(span_dotted), len(span_plain)


def weight_commutator(S):
    """``(Ed Fd - Fd Ed) pr_m v_S - [m] v_S`` with ``m = |S| - n``"""

    x = ExtVec.basis_vector(S)
    Ed, Fd = GeneratorTag(DIFF, "Ed"), GeneratorTag(DIFF, "Fd")
    m = len(S) - S.n
    pr = apply_diff(GeneratorTag(DIFF, "pr", m), x)
    left = apply_diff(Ed, apply_diff(Fd, pr)) - apply_diff(Fd,
                                                           apply_diff(Ed, pr))
    return left - x.scale(qint(m))

