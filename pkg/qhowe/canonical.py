"""Rainbow matchings and the canonical basis ``{b_S}`` of the exterior
algebra
"""

import itertools
import logging

from qhowe import exception
from qhowe.actions import SP, GeneratorTag, apply_sp
from qhowe.base import HoweBase
from qhowe.exactla import LaurentMatrix, invert_unitriangular
from qhowe.extalg import ExtVec, basis, leq
from qhowe.qarith import ONE, ZERO, q_power, qint

_log = logging.getLogger("canonical")


class Rainbow(HoweBase):
    """The rainbow of a subset: arcs from fully dotted columns to undotted
    columns on their right

    :param S: the :class:`~qhowe.extalg.Subset`
    :param pairing: ``{x: x^S}`` for the matched fully dotted columns
    :param unmatched: fully dotted columns without a partner
    """

    log = logging.getLogger("canonical.Rainbow")

    def __init__(self, S, pairing, unmatched):
        self.S = S
        self.pairing = dict(pairing)
        self.unmatched = tuple(sorted(unmatched))

    def _key(self):
        return (self.S, tuple(sorted(self.pairing.items())), self.unmatched)

    def __str__(self):
        arcs = ", ".join("%s->%s" % pair for pair in sorted(self.pairing.items()))
        return "%s [%s]" % (self.S, arcs)

    def partner(self, x):
        """``x^S``, which is ``x`` itself for an unmatched column"""

        return self.pairing.get(x, x)

    def left_ends(self):
        return sorted(self.pairing)

    def right_ends(self):
        return sorted(self.pairing.values())

    def to_json(self):
        return [[x, y] for x, y in sorted(self.pairing.items())]


def rainbow(S):
    """Match fully dotted columns, right to left, with the nearest still
    free undotted column on their right
    """

    n = S.n
    free = []
    pairing = {}
    unmatched = []
    for x in range(n, 0, -1):
        col = S.column(x)
        if col == 0:
            free.append(x)
        elif col == 2:
            if free:
                # nearest free column is the last one pushed
                pairing[x] = free.pop()
            else:
                unmatched.append(x)
    return Rainbow(S, pairing, unmatched)


def dot_condition(S, x):
    """Fewer dots strictly right of column ``x`` than columns there"""

    return S.count_right(x) < S.n - x


def is_fundamental(S):
    """Every fully dotted column is matched

    Equivalently every fully dotted column passes :func:`dot_condition`.
    """

    return all(dot_condition(S, x) for x in S.full_columns())


def fundamental_subsets(n, k):
    """The subsets labelling the canonical basis of the Weyl module
    ``Delta(varpi_k)`` inside degree ``k``"""

    HoweBase.validate_rank(n)
    if not 0 <= k <= n:
        err_msg = "Fundamental weight index %s outside 0..%s" % (k, n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return [S for S in basis(n, k) if is_fundamental(S)]


def canonical_vector(S):
    """``b_S``: every subset of the arcs jumped to its right end, weighted
    by ``q^-(number of jumps)``"""

    rb = rainbow(S)
    arcs = sorted(rb.pairing.items())
    terms = {}
    for size in range(len(arcs) + 1):
        for chosen in itertools.combinations(arcs, size):
            removed = [c for x, _ in chosen for c in (x, -x)]
            added = [c for _, y in chosen for c in (y, -y)]
            target = S.with_members(added=added, removed=removed)
            terms[target] = q_power(-size)
    return ExtVec(S.n, terms)


def canonical_json(S):
    data = canonical_vector(S).to_json()
    data["rainbow"] = rainbow(S).to_json()
    return data


def triangular_key(S):
    """Linear extension of the order used for unitriangularity"""

    return (tuple(S.full_columns()), S.sort_key())


def ordered_basis(n, k):
    return sorted(basis(n, k), key=triangular_key)


def to_canonical(x):
    """Coordinates of ``x`` in the canonical basis

    :return: a list of ``(Subset, coefficient)`` pairs in triangular order
    """

    remaining = x
    coords = []
    while remaining:
        T = min(remaining.support(), key=triangular_key)
        coeff = remaining.coefficient(T)
        coords.append((T, coeff))
        remaining = remaining - canonical_vector(T).scale(coeff)
    return coords


def from_canonical(n, coords):
    result = ExtVec.zero(n)
    for S, coeff in coords:
        result = result + canonical_vector(S).scale(coeff)
    return result


def base_change_matrix(n, k):
    """``X`` with the ``b_S`` of degree ``k`` as columns

    Rows and columns follow :func:`ordered_basis`; ``X`` is lower
    unitriangular.
    """

    order = ordered_basis(n, k)
    index = dict((S.mask, i) for i, S in enumerate(order))
    columns = []
    for S in order:
        col = [ZERO] * len(order)
        for T, c in canonical_vector(S).items():
            col[index[T.mask]] = c
        columns.append(col)
    return LaurentMatrix.from_columns(columns, nrows=len(order))


def inverse_base_change_matrix(n, k):
    """``Y`` with ``Y X = 1``"""

    return invert_unitriangular(base_change_matrix(n, k))


def canonical_basis(n, k=None):
    """``(S, b_S)`` pairs over all subsets of the given degree"""

    return [(S, canonical_vector(S)) for S in basis(n, k)]


def expected_f_action(i, S):
    """The coefficient free action of ``f_i`` on ``b_S``

    The table has no zero case. Windows it does not list carry other
    coefficients, e.g. ``f_3 b_{1,2}`` at ``n = 4``.

    :return: ``(coefficient, target)``, or None when the window is not
        listed and nothing is predicted
    """

    n = S.n
    members = frozenset(x for x in S.members
                        if abs(x) in ((i, ) if i == n else (i, i + 1)))
    if i == n:
        if members == frozenset([n]):
            return ONE, S.with_members(added=[-n], removed=[n])
        return None
    up = (i, i + 1)
    down = (-(i + 1), -i)
    table = {
        frozenset([i]): (ONE, up),
        frozenset([-(i + 1)]): (ONE, down),
        frozenset([i, -(i + 1)]): (ONE, down),
        frozenset([i, -i]): (qint(2), up),
        frozenset([i + 1, -(i + 1)]): (ONE, down),
        frozenset([i, -(i + 1), -i]): (ONE, up),
        frozenset([i, i + 1, -(i + 1)]): (ONE, down),
    }
    if members not in table:
        return None
    coeff, (old, new) = table[members]
    return coeff, S.with_members(added=[new], removed=[old])


def f_action_defect(i, S):
    """``f_i b_S`` minus the coefficient free prediction

    :return: the difference, or None for a window without a prediction
    """

    expected = expected_f_action(i, S)
    if expected is None:
        return None
    coeff, target = expected
    image = apply_sp(GeneratorTag(SP, "f", i), canonical_vector(S))
    return image - canonical_vector(target).scale(coeff)


def has_canonical_shape(S):
    """``b_S`` lies in ``v_S`` plus ``q^-1 Z[q^-1]`` multiples of larger
    vectors"""

    for T, c in canonical_vector(S).items():
        if T == S:
            if c != ONE:
                return False
        elif not leq(S, T) or c.degree() >= 0:
            return False
    return True
