"""Exact linear algebra over ``A = Z[q, q^-1]``

Elimination is fraction free (Bareiss style Gauss-Jordan): every division
performed is exact in ``A`` and goes through
:meth:`~qhowe.qarith.LaurentInt.divexact`, so an inexact step surfaces as
:class:`~qhowe.exception.InexactDivision` instead of a wrong answer.
"""

import logging
import math

from qhowe import exception
from qhowe.qarith import ONE, ZERO, LaurentInt

_log = logging.getLogger("exactla")


class LaurentMatrix(object):
    """A dense matrix of :class:`~qhowe.qarith.LaurentInt`

    :param rows: a list of equal length lists of entries (ints are coerced)
    :param ncols: the column count, needed only when ``rows`` is empty
    """

    log = logging.getLogger("exactla.LaurentMatrix")

    def __init__(self, rows, ncols=None):
        self.rows = [[LaurentInt(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
        else:
            self.ncols = ncols or 0
        for row in self.rows:
            if len(row) != self.ncols:
                err_msg = "Ragged matrix rows: %s and %s" % (len(row),
                                                            self.ncols)
                self.log.error(err_msg)
                raise exception.BadValue(err_msg)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, size):
        return cls([[ONE if i == j else ZERO for j in range(size)]
                    for i in range(size)], ncols=size)

    @classmethod
    def from_columns(cls, columns, nrows=None):
        columns = [list(col) for col in columns]
        if not columns:
            return cls([[] for _ in range(nrows or 0)], ncols=0)
        height = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(height)],
                   ncols=len(columns))

    def columns(self):
        return [[row[j] for row in self.rows] for j in range(self.ncols)]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return False
        return self.shape == other.shape and self.rows == other.rows

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "<LaurentMatrix %sx%s>" % self.shape

    def __str__(self):
        return "\n".join("[%s]" % ", ".join(str(x) for x in row)
                         for row in self.rows)

    def transpose(self):
        return LaurentMatrix.from_columns(self.rows) if self.rows else \
            LaurentMatrix.zeros(self.ncols, 0)

    def __mul__(self, other):
        if self.ncols != other.nrows:
            err_msg = "Cannot multiply %sx%s by %sx%s" % (self.shape +
                                                           other.shape)
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        result = []
        for row in self.rows:
            out = [ZERO] * other.ncols
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b:
                        out[j] = out[j] + a * b
            result.append(out)
        return LaurentMatrix(result, ncols=other.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            err_msg = "Shape mismatch %s and %s" % (self.shape, other.shape)
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        return LaurentMatrix([[a + b for a, b in zip(r1, r2)]
                              for r1, r2 in zip(self.rows, other.rows)],
                             ncols=self.ncols)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, coeff):
        coeff = LaurentInt(coeff)
        return LaurentMatrix([[coeff * x for x in row] for row in self.rows],
                             ncols=self.ncols)

    def apply(self, vector):
        """Matrix times a column given as a list"""

        return [sum((a * b for a, b in zip(row, vector) if a and b), ZERO)
                for row in self.rows]

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def is_identity(self):
        if self.nrows != self.ncols:
            return False
        return all(x == (ONE if i == j else ZERO)
                   for i, row in enumerate(self.rows)
                   for j, x in enumerate(row))

    def flatten(self):
        """Entries in row-major order, used for spans of matrices"""

        return [x for row in self.rows for x in row]

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.rows]


def _pick_pivot(rows, start, col):
    best = None
    for i in range(start, len(rows)):
        entry = rows[i][col]
        if entry and (best is None or len(entry) < len(rows[best][col])):
            best = i
    return best


def reduce_fraction_free(M):
    """Fraction free reduced row echelon form

    :param M: a :class:`LaurentMatrix`
    :return: ``(rows, pivots, d)``: the reduced rows, the pivot columns and
        the common pivot value ``d``; the pivot columns of ``rows`` equal
        ``d`` times unit vectors
    """

    rows = [list(row) for row in M.rows]
    pivots = []
    prev = ONE
    r = 0
    for c in range(M.ncols):
        if r >= len(rows):
            break
        p = _pick_pivot(rows, r, c)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i == r:
                continue
            row = rows[i]
            factor = row[c]
            updated = []
            for j in range(M.ncols):
                value = piv * row[j]
                if factor and pivot_row[j]:
                    value = value - factor * pivot_row[j]
                updated.append(value.divexact(prev) if value else ZERO)
            rows[i] = updated
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots, prev


def rank(M):
    """Rank over the fraction field ``Q(q)``"""

    return len(reduce_fraction_free(M)[1])


def normalize_vector(vec):
    """Scale by a unit and a common content so the result is canonical

    The leading nonzero entry ends up with valuation 0 and a positive
    lowest coefficient.
    """

    nonzero = [x for x in vec if x]
    if not nonzero:
        return list(vec)
    lead = nonzero[0]
    if lead.is_unit():
        return _unit_normalize(vec)
    # the leading entry often divides everything
    quotients = [x.try_divexact(lead) for x in vec]
    if all(x is not None for x in quotients):
        return _unit_normalize(quotients)
    content = 0
    for x in nonzero:
        for _, c in x.items():
            content = math.gcd(content, c)
    if content > 1:
        vec = [LaurentInt(dict((e, c // content) for e, c in x.items()))
               for x in vec]
    return _unit_normalize(vec)


def _unit_normalize(vec):
    lead = next(x for x in vec if x)
    shift = -lead.valuation()
    sign = -1 if lead.coefficient(lead.valuation()) < 0 else 1
    return [x.shift(shift) * sign for x in vec]


def kernel_basis(M):
    """A basis of the right kernel of ``M`` over ``Q(q)`` with entries in
    ``A``, one vector per free column, each run through
    :func:`normalize_vector`
    """

    rows, pivots, d = reduce_fraction_free(M)
    pivot_set = set(pivots)
    result = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        vec = [ZERO] * M.ncols
        vec[f] = d
        for k, c in enumerate(pivots):
            vec[c] = -rows[k][f]
        result.append(normalize_vector(vec))
    _log.debug("Kernel of a %sx%s matrix has dimension %s", M.nrows, M.ncols,
               len(result))
    return result


def nullity(M):
    return M.ncols - rank(M)


def solve(vectors, x):
    """Coordinates of ``x`` in the span of ``vectors``

    Free directions are set to 0, so the ``A`` verdict is only meaningful
    for linearly independent ``vectors``.

    :param vectors: a list of equal length coefficient lists
    :param x: the target as a list
    :return: the coordinates in ``A``, or None when ``x`` is outside the
        span over ``Q(q)``
    :raises InexactDivision: when ``x`` lies in the span over ``Q(q)`` but
        its coordinates are not in ``A``
    """

    M = LaurentMatrix.from_columns(list(vectors) + [list(x)])
    rows, pivots, d = reduce_fraction_free(M)
    last = len(vectors)
    if last in pivots:
        return None
    coords = [ZERO] * last
    for k, c in enumerate(pivots):
        coeff = rows[k][last].try_divexact(d)
        if coeff is None:
            msg = "Coordinate %s is %s / %s, outside A" % (c, rows[k][last],
                                                           d)
            _log.debug(msg)
            raise exception.InexactDivision(msg)
        coords[c] = coeff
    return coords


def in_span(vectors, x, over_ring=False):
    """Whether ``x`` lies in the span of ``vectors``

    :param over_ring: test the ``A`` span instead of the ``Q(q)`` span;
        ``vectors`` must then be linearly independent
    :raises BadValue: for dependent ``vectors`` with ``over_ring``
    """

    if not vectors:
        return all(not y for y in x)
    if over_ring and rank(LaurentMatrix.from_columns(vectors)) < len(vectors):
        err_msg = "Membership over A needs %s independent vectors" % len(
            vectors)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    try:
        return solve(vectors, x) is not None
    except exception.InexactDivision:
        return not over_ring


def _triangular_shape(M):
    upper = all(not M.rows[i][j] for i in range(M.nrows) for j in range(i))
    lower = all(not M.rows[i][j] for i in range(M.nrows)
                for j in range(i + 1, M.ncols))
    return upper, lower


def invert_unitriangular(M):
    """The inverse of a unitriangular matrix, computed over ``A``

    :raises NotUnitriangular: when ``M`` is not square, has a diagonal entry
        other than 1, or is neither upper nor lower triangular
    """

    size = M.nrows
    upper, lower = _triangular_shape(M) if M.ncols == size else (False,
                                                                 False)
    if not (upper or lower) or any(M.rows[i][i] != ONE for i in range(size)):
        err_msg = "Matrix %r is not unitriangular" % (M, )
        _log.error(err_msg)
        raise exception.NotUnitriangular(err_msg)
    if lower and not upper:
        return invert_unitriangular(M.transpose()).transpose()
    inverse = [[ZERO] * size for _ in range(size)]
    for j in range(size):
        # back substitution for column j
        for i in range(j, -1, -1):
            value = ONE if i == j else ZERO
            for k in range(i + 1, j + 1):
                if M.rows[i][k] and inverse[k][j]:
                    value = value - M.rows[i][k] * inverse[k][j]
            inverse[i][j] = value
    return LaurentMatrix(inverse, ncols=size)


def span_basis(vectors):
    """A maximal linearly independent subfamily, in input order"""

    basis = []
    for vec in vectors:
        if not in_span(basis, vec):
            basis.append(vec)
    return basis
