"""Crystals of the fundamental ``sp_2n`` Weyl modules in the subset model,
the ``sl_2`` crystal on the same subsets and divided power generating words
"""

import collections
import logging

from qhowe import exception
from qhowe.actions import SP, GeneratorTag, apply_sp
from qhowe.base import HoweBase
from qhowe.canonical import is_fundamental, rainbow
from qhowe.extalg import Subset, basis, v, window_members
from qhowe.template import Templater

_log = logging.getLogger("crystal")


def _check_root(i, n):
    if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= n:
        err_msg = "Simple root index %r out of range 1..%s" % (i, n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)


def _f_move(i, S):
    """The member swap of the case table as ``(old, new)``, or None"""

    n = S.n
    window = window_members(S, i)
    if i == n:
        return (n, -n) if window == frozenset([n]) else None
    up = (i, i + 1)
    down = (-(i + 1), -i)
    table = {
        frozenset([i]): up,
        frozenset([-(i + 1)]): down,
        frozenset([i, -(i + 1)]): down,
        frozenset([i, -i]): up,
        frozenset([i, -(i + 1), -i]): up,
        frozenset([i, i + 1, -(i + 1)]): down,
    }
    return table.get(window)


def _e_move(i, S):
    n = S.n
    window = window_members(S, i)
    if i == n:
        return (-n, n) if window == frozenset([-n]) else None
    table = {
        frozenset([i + 1]): (i + 1, i),
        frozenset([-i]): (-i, -(i + 1)),
        frozenset([i, -i]): (-i, -(i + 1)),
        frozenset([i + 1, -i]): (i + 1, i),
        frozenset([i + 1, -(i + 1), -i]): (i + 1, i),
        frozenset([i, i + 1, -i]): (-i, -(i + 1)),
    }
    return table.get(window)


def crystal_f(i, S):
    """Kashiwara operator ``f~_i`` on the crystal of ``varpi_|S|``

    :return: the image subset, or None for ``0``
    """

    _check_root(i, S.n)
    move = _f_move(i, S)
    if move is None:
        return None
    old, new = move
    image = S.with_members(added=[new], removed=[old])
    return image if is_fundamental(image) else None


def crystal_e(i, S):
    """Kashiwara operator ``e~_i``, the partial inverse of :func:`crystal_f`"""

    _check_root(i, S.n)
    move = _e_move(i, S)
    if move is None:
        return None
    old, new = move
    image = S.with_members(added=[new], removed=[old])
    if not is_fundamental(image) or crystal_f(i, image) != S:
        return None
    return image


def source(n, k):
    """The highest weight element ``{1, ..., k}``"""

    return Subset.interval(n, k)


class CrystalGraph(HoweBase):
    """The crystal graph of ``varpi_k`` at rank ``n``

    Nodes are listed breadth first from the source, children in the order
    of the edge labels.
    """

    log = logging.getLogger("crystal.CrystalGraph")

    def __init__(self, n, k):
        self.n = self.validate_rank(n)
        if not 0 <= k <= n:
            err_msg = "Crystal level %s outside 0..%s" % (k, n)
            self.log.error(err_msg)
            raise exception.BadValue(err_msg)
        self.k = k
        self.nodes = []
        self.edges = []
        self.lengths = {}
        self._build()

    def _build(self):
        start = source(self.n, self.k)
        self.lengths[start] = 0
        self.nodes.append(start)
        queue = collections.deque([start])
        while queue:
            S = queue.popleft()
            for i in range(1, self.n + 1):
                T = crystal_f(i, S)
                if T is None:
                    continue
                self.edges.append((S, i, T))
                if T not in self.lengths:
                    self.lengths[T] = self.lengths[S] + 1
                    self.nodes.append(T)
                    queue.append(T)
        self.log.debug("Built crystal of varpi_%s at n=%s: %s nodes, %s "
                       "edges", self.k, self.n, len(self.nodes),
                       len(self.edges))

    def _key(self):
        return (self.n, self.k)

    def __str__(self):
        return "C(varpi_%s) n=%s" % (self.k, self.n)

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, S):
        return S in self.lengths

    def label_counts(self):
        counts = collections.Counter(i for _, i, _ in self.edges)
        return dict(sorted(counts.items()))

    def layers(self):
        """Nodes grouped by length"""

        grouped = collections.OrderedDict()
        for S in self.nodes:
            grouped.setdefault(self.lengths[S], []).append(S)
        return grouped

    def to_json(self):
        """``{"nodes": [...], "links": [...]}`` with integer node ids"""

        ids = dict((S, idx) for idx, S in enumerate(self.nodes))
        return {
            "n": self.n,
            "k": self.k,
            "nodes": [{"id": ids[S], "subset": S.to_json(),
                       "length": self.lengths[S]} for S in self.nodes],
            "links": [{"source": ids[S], "target": ids[T], "label": i}
                      for S, i, T in self.edges]
        }

    def to_dot(self, templater=None):
        templater = templater or Templater()
        return templater.render_crystal(self)


def crystal_graph(n, k):
    return CrystalGraph(n, k)


def export_dot(graph):
    return graph.to_dot()


def check_member(S):
    if not is_fundamental(S):
        err_msg = "%s is not in a fundamental crystal" % S
        _log.error(err_msg)
        raise exception.NotFound(err_msg)


def length(S):
    """Distance from the source along ``f~`` edges"""

    check_member(S)
    return len(generating_path(S))


def generating_path(S):
    """The labels of a path from the source to ``S`` via ``e~`` steps"""

    check_member(S)
    path = []
    target = source(S.n, len(S))
    current = S
    while current != target:
        for i in range(1, S.n + 1):
            parent = crystal_e(i, current)
            if parent is not None:
                path.append(i)
                current = parent
                break
        else:
            err_msg = "No raising operator applies to %s" % current
            _log.error(err_msg)
            raise exception.HoweException(err_msg)
    path.reverse()
    return path


def generating_word(S):
    """A divided power word ``u_S`` with ``u_S v_{1..k} = b_S``

    :return: ``[(i, power), ...]`` in application order; a double step
        through the window ``{i, -i}`` is fused into ``f_i^(2)``
    """

    check_member(S)
    target = source(S.n, len(S))
    word = []
    current = S
    while current != target:
        for i in range(1, S.n + 1):
            parent = crystal_e(i, current)
            if parent is not None:
                break
        else:
            err_msg = "No raising operator applies to %s" % current
            _log.error(err_msg)
            raise exception.HoweException(err_msg)
        if i < S.n and window_members(parent, i) == frozenset([i, -i]):
            grand = crystal_e(i, parent)
            word.append((i, 2))
            current = grand
        else:
            word.append((i, 1))
            current = parent
    word.reverse()
    return word


def word_to_text(word):
    """Render a generating word in the ``act`` grammar, rightmost first"""

    tokens = []
    for i, power in reversed(word):
        tokens.append("f%s(%s)" % (i, power) if power > 1 else "f%s" % i)
    return " ".join(tokens)


def apply_generating_word(S):
    """``u_S v_{1..k}`` computed through the ``sp_2n`` action"""

    x = v(source(S.n, len(S)))
    for i, power in generating_word(S):
        x = apply_sp(GeneratorTag(SP, "f", i, power), x)
    return x


def tableau_condition(S):
    """Column tableau condition: when ``x`` sits at position ``p`` and
    ``-x`` at position ``q``, then ``q - p <= n - x``"""

    members = S.members
    where = dict((x, p) for p, x in enumerate(members, 1))
    for x in S.full_columns():
        if where[-x] - where[x] > S.n - x:
            return False
    return True


def tableau_iso(S):
    """The column tableau of a crystal member, read top to bottom"""

    if not tableau_condition(S):
        err_msg = "%s violates the column tableau condition" % S
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return S.members


def _column(column, n):
    S = Subset(n, column)
    if S.members != tuple(column):
        err_msg = "%r is not a strictly increasing column in [1,-1]" % (
            tuple(column), )
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return S


def _brackets(i, column):
    """Unmatched letters of the ``i`` signature, ``(plus, minus)``

    The column is read lower block first: its negative entries top to
    bottom, then its positive entries. ``i`` and ``-(i+1)`` count as ``+``,
    ``i+1`` and ``-i`` as ``-``, and each ``-`` cancels the nearest
    unmatched ``+`` before it.
    """

    reading = [x for x in column if x < 0] + [x for x in column if x > 0]
    plus, minus = [], []
    for x in reading:
        if x in (i, -(i + 1)):
            plus.append(x)
        elif x in (i + 1, -i):
            if plus:
                plus.pop()
            else:
                minus.append(x)
    return plus, minus


def _tableau_step(column, n, old, new):
    S = _column(column, n)
    image = S.with_members(added=[new], removed=[old])
    if len(image) != len(S) or not tableau_condition(image):
        return None
    return image.members


def tableau_f(i, column, n):
    """Crystal operator ``f~_i`` on a column tableau word

    ``f~_n`` changes ``n`` to ``-n``. Below ``n`` the leftmost unmatched
    ``+`` of :func:`_brackets` moves, ``i`` to ``i+1`` or ``-(i+1)`` to
    ``-i``. Results breaking the tableau condition are 0.

    :return: the image word, or None for ``0``
    """

    S = _column(column, n)
    _check_root(i, n)
    if i == n:
        if n not in S or -n in S:
            return None
        return _tableau_step(column, n, n, -n)
    plus, _ = _brackets(i, S.members)
    if not plus:
        return None
    old = plus[0]
    return _tableau_step(column, n, old, i + 1 if old == i else -i)


def tableau_e(i, column, n):
    """Crystal operator ``e~_i`` on a column tableau word, moving the
    rightmost unmatched ``-`` back"""

    S = _column(column, n)
    _check_root(i, n)
    if i == n:
        if -n not in S or n in S:
            return None
        return _tableau_step(column, n, -n, n)
    _, minus = _brackets(i, S.members)
    if not minus:
        return None
    old = minus[-1]
    return _tableau_step(column, n, old, i if old == i + 1 else -(i + 1))


def sl2_crystal_F(S):
    """Remove the smallest unmatched fully dotted column, or None"""

    unmatched = rainbow(S).unmatched
    if not unmatched:
        return None
    return S.remove_column(unmatched[0])


def _unmatched_empty(S):
    rb = rainbow(S)
    partners = set(rb.pairing.values())
    return [x for x in S.empty_columns() if x not in partners]


def sl2_crystal_E(S):
    """Fill the rightmost unmatched undotted column, or None"""

    free = _unmatched_empty(S)
    if not free:
        return None
    return S.add_column(free[-1])


def howe_decomposition(S):
    """``S -> (core, m)``: the fundamental crystal element underneath ``S``
    and the ``sl_2`` weight ``m = |S| - n``"""

    core = S
    while True:
        lower = sl2_crystal_F(core)
        if lower is None:
            break
        core = lower
    return core, len(S) - S.n


def howe_crystal_decomposition(n):
    """The bijection from all subsets onto pairs ``(core, m)``

    :return: a list of ``(S, core, m)`` in serialization order of ``S``
    """

    result = []
    for S in basis(n):
        core, m = howe_decomposition(S)
        result.append((S, core, m))
    return result


def sl2_string(core):
    """All subsets over a fundamental element, bottom to top"""

    string = [core]
    while True:
        upper = sl2_crystal_E(string[-1])
        if upper is None:
            return string
        string.append(upper)

