"""Exhaustive finite checks of the duality at a fixed rank

Every check sweeps its whole domain at rank ``n`` and records the number of
assertions made and the first failure, so a passing report is a finite
certificate.
"""

from math import comb
from multiprocessing.pool import ThreadPool as Pool
import logging

import xmltodict

from qhowe import OrderedDict, exception
from qhowe.actions import (DIFF, SL2, SP, GeneratorTag, apply_diff, apply_sl2,
                           apply_sp, apply_T, apply_T_inv, divided_E,
                           divided_F, filtration_scalar, images_agree,
                           operator_matrix, weight_commutator)
from qhowe.base import HoweBase
from qhowe.canonical import (base_change_matrix, canonical_vector,
                             fundamental_subsets, has_canonical_shape,
                             inverse_base_change_matrix)
from qhowe.characters import (character_identity, decomposition_closure,
                              fundamental_dimension, ringel_crosscheck,
                              total_dimension)
from qhowe.diffalg import (confluence_report_diff, flatness_report_diff,
                           omega_action_defect)
from qhowe.exactla import LaurentMatrix, in_span, kernel_basis, nullity, rank
from qhowe.extalg import (ExtVec, Subset, basis, bar, confluence_report,
                          dual_vector, flatness_counts, omega_twist,
                          sesquilinear, v, v_k_minus, window_members)
from qhowe.qarith import GENERIC, ONE, ZERO, q_power, qfact
from qhowe.utils import MAX_RANK_ENV, dumps, get_max_rank

_log = logging.getLogger("howeverify")

CHEAP = "cheap"
STANDARD = "standard"
SMALL = "small"
SMALL_RANK = 2


class CheckReport(object):
    """Outcome of one check

    :param check: the check name
    :param params: the parameters, e.g. ``{"n": 2, "s": "(7,3)"}``
    """

    log = logging.getLogger("howeverify.CheckReport")

    def __init__(self, check, params):
        self.check = check
        self.params = dict(params)
        self.assertions = 0
        self.witness = None
        self.details = OrderedDict()

    def __repr__(self):
        return "<CheckReport %s %s %s>" % (self.check, self.param_text(),
                                           self.status)

    def expect(self, condition, witness=None):
        """Count one assertion and keep the first failing witness

        :param witness: a JSON ready dict, or a callable building one
        """

        self.assertions += 1
        if condition or self.witness is not None:
            return bool(condition)
        if callable(witness):
            witness = witness()
        self.witness = witness if witness is not None else {}
        self.log.debug("Check %s failed at %s: %s", self.check,
                       self.param_text(), dumps(self.witness))
        return False

    @property
    def passed(self):
        return self.witness is None

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def param_text(self):
        return " ".join("%s=%s" % (key, self.params[key])
                        for key in sorted(self.params))

    def witness_text(self):
        return "" if self.witness is None else dumps(self.witness)

    def to_dict(self):
        data = {"check": self.check, "params": self.params,
                "status": self.status, "assertions": self.assertions,
                "witness": self.witness}
        if self.details:
            data["details"] = dict(self.details)
        return data

    def to_xml(self):
        """The certificate as XML; the witness is embedded as JSON text"""

        body = OrderedDict()
        body["@check"] = self.check
        body["@status"] = self.status
        body["params"] = dict((key, str(value))
                              for key, value in sorted(self.params.items()))
        body["assertions"] = self.assertions
        body["witness"] = self.witness_text() or None
        if self.details:
            body["details"] = dumps(dict(self.details))
        return xmltodict.unparse({"certificate": body}, pretty=True)


def _vec_witness(label, S, left, right):
    return lambda: {"input": S.to_json(), "operator": label,
                    "left": left.to_json(), "right": right.to_json()}


def _sp_generators(n):
    return [GeneratorTag(SP, kind, i) for i in range(1, n + 1)
            for kind in ("e", "f", "k")]


def _sl2_generators():
    return [GeneratorTag(SL2, kind) for kind in ("E", "F", "K")]


def check_flatness(report, n, spec):
    counts = flatness_counts(n)
    expected = [comb(2 * n, k) for k in range(2 * n + 1)]
    report.details["counts"] = counts
    report.expect(counts == expected,
                  {"counts": counts, "expected": expected})
    report.expect(counts is not None and sum(counts) == 4**n,
                  {"counts": counts, "total": 4**n})


def check_confluence(report, n, spec):
    outcome = confluence_report(n)
    report.details["overlaps"] = outcome["overlaps"]
    for failure in outcome["failures"]:
        report.expect(False, failure)
    report.assertions += outcome["overlaps"] - len(outcome["failures"])


def check_commuting(report, n, spec):
    for S in basis(n):
        x = v(S)
        for small in _sp_generators(n):
            for big in _sl2_generators():
                left = apply_sl2(big, apply_sp(small, x))
                right = apply_sp(small, apply_sl2(big, x))
                report.expect(left == right,
                              _vec_witness("%s %s" % (big, small), S, left,
                                           right))


def check_divided_integrality(report, n, spec):
    for S in basis(n):
        x = v(S)
        for i in range(1, n + 1):
            for kind in ("e", "f"):
                for power in (2, 3):
                    tag = GeneratorTag(SP, kind, i, power)
                    try:
                        apply_sp(tag, x)
                    except exception.InexactDivision:
                        report.expect(False, {"input": S.to_json(),
                                              "operator": str(tag)})
                        continue
                    report.expect(True)
        for k in (2, 3):
            for kind, single, divided in (("E", GeneratorTag(SL2, "E"),
                                           divided_E),
                                          ("F", GeneratorTag(SL2, "F"),
                                           divided_F)):
                power = x
                for _ in range(k):
                    power = apply_sl2(single, power)
                expected = divided(x, k).scale(qfact(k))
                report.expect(power == expected,
                              _vec_witness("%s^%s" % (kind, k), S, power,
                                           expected))


def _stacked_matrix(tags, domain):
    """Rows of all images of the ``domain`` vectors under ``tags``"""

    row_of = {}
    entries = {}
    for col, S in enumerate(domain):
        for t, tag in enumerate(tags):
            if tag.side == SP:
                image = apply_sp(tag, v(S))
            else:
                image = apply_sl2(tag, v(S))
            for T, c in image.items():
                r = row_of.setdefault((t, T.mask), len(row_of))
                entries[(r, col)] = c
    rows = [[entries.get((r, c), ZERO) for c in range(len(domain))]
            for r in range(len(row_of))]
    _log.debug("Stacked %s generators on %s vectors", len(tags), len(domain))
    return LaurentMatrix(rows, ncols=len(domain))


def check_singular_vectors(report, n, spec):
    tags = [GeneratorTag(SP, "e", i) for i in range(1, n + 1)]
    tags.append(GeneratorTag(SL2, "F"))
    for k in range(n + 1):
        weight = tuple([1] * k + [0] * (n - k))
        for degree in range(2 * n + 1):
            domain = [S for S in basis(n, degree) if S.weight() == weight]
            if not domain:
                continue
            kernel = kernel_basis(_stacked_matrix(tags, domain))
            expected_dim = 1 if degree == k else 0
            report.expect(len(kernel) == expected_dim,
                          {"k": k, "degree": degree,
                           "dimension": len(kernel)})
            if degree == k and len(kernel) == 1:
                top = [ONE if S == Subset.interval(n, k) else ZERO
                       for S in domain]
                report.expect(kernel[0] == top,
                              {"k": k, "kernel": [c.to_json()
                                                  for c in kernel[0]]})


def _coordinates(x, domain):
    return [x.coefficient(S) for S in domain]


def check_kernel_weyl(report, n, spec):
    dims = []
    for k in range(n + 1):
        domain = basis(n, k)
        M = operator_matrix(GeneratorTag(SL2, "F"), n, [k])
        kernel = kernel_basis(M)
        dims.append(len(kernel))
        report.expect(len(kernel) == fundamental_dimension(n, k),
                      {"k": k, "dimension": len(kernel),
                       "expected": fundamental_dimension(n, k)})
        canon = [_coordinates(canonical_vector(S), domain)
                 for S in fundamental_subsets(n, k)]
        for S, coords in zip(fundamental_subsets(n, k), canon):
            report.expect(in_span(kernel, coords),
                          {"k": k, "missing": S.to_json()})
        for vec in kernel:
            report.expect(in_span(canon, vec, over_ring=True),
                          {"k": k, "outside": [c.to_json() for c in vec]})
    report.details["kernel_dimensions"] = dims


def check_filtration_kernels(report, n, spec):
    for k in range(n + 1):
        expected = 0
        for j in range(1, k // 2 + 2):
            expected += fundamental_dimension(n, k - 2 * (j - 1))
            M = operator_matrix(GeneratorTag(SL2, "F", power=j), n, [k])
            found = nullity(M)
            report.expect(found == expected,
                          {"k": k, "power": j, "nullity": found,
                           "expected": expected})
        report.expect(expected == comb(2 * n, k),
                      {"k": k, "total": expected})


def check_filtration_scalar(report, n, spec):
    for k in range(2 * n + 1):
        for i in range(k // 2 + 1):
            if k - i > n:
                continue
            image = divided_F(v(v_k_minus(n, k, i)), i)
            expected = ExtVec.basis_vector(Subset.interval(n, k - 2 * i),
                                           filtration_scalar(n, k, i))
            report.expect(image == expected,
                          _vec_witness("F(%s)" % i, v_k_minus(n, k, i),
                                       image, expected))


def check_T_iso(report, n, spec):
    for k in range(2 * n + 1):
        M = operator_matrix(GeneratorTag(SL2, "T"), n, [k])
        report.expect(M.nrows == M.ncols == rank(M),
                      {"degree": k, "shape": list(M.shape), "rank": rank(M)})
    for S in basis(n):
        x = v(S)
        image = apply_T(x)
        back = apply_T_inv(image)
        report.expect(back == x, _vec_witness("Tinv T", S, back, x))
        forth = apply_T(apply_T_inv(x))
        report.expect(forth == x, _vec_witness("T Tinv", S, forth, x))
        for tag in _sp_generators(n):
            left = apply_sp(tag, image)
            right = apply_T(apply_sp(tag, x))
            report.expect(left == right,
                          _vec_witness("%s T" % tag, S, left, right))


def dual_f_table(i, S):
    """``f_i d_S`` from the dual case table, as ``[(coefficient, T)]``"""

    n = S.n
    window = window_members(S, i)
    if i == n:
        if window == frozenset([n]):
            return [(q_power(2, -1), S.with_members(added=[-n], removed=[n]))]
        return []
    up = S.with_members(added=[i + 1], removed=[i])
    down = S.with_members(added=[-i], removed=[-(i + 1)])
    table = {
        frozenset([i]): [(ONE, up)],
        frozenset([-(i + 1)]): [(ONE, down)],
        frozenset([i, -(i + 1)]): [(ONE, down), (q_power(-1), up)],
        frozenset([i, -i]): [(q_power(1), up)],
        frozenset([i + 1, -(i + 1)]): [(ONE, down)],
        frozenset([i, -(i + 1), -i]): [(ONE, up)],
        frozenset([i, i + 1, -(i + 1)]): [(ONE, down)],
    }
    return [(-q_power(1) * c, T) for c, T in table.get(window, [])]


def check_self_dual(report, n, spec):
    for S in basis(n):
        for i in range(1, n + 1):
            left = apply_sp(GeneratorTag(SP, "f", i), dual_vector(S))
            right = ExtVec.zero(n)
            for c, T in dual_f_table(i, S):
                right = right + dual_vector(T).scale(c)
            report.expect(left == right,
                          _vec_witness("f%s on d" % i, S, left, right))


def check_omega_twist(report, n, spec):
    pairs = (("e", "f"), ("f", "e"), ("k", "kinv"))
    for S in basis(n):
        x = v(S)
        twisted = omega_twist(x)
        report.expect(omega_twist(twisted) == x,
                      _vec_witness("omega omega", S, omega_twist(twisted), x))
        for i in range(1, n + 1):
            for kind, partner in pairs:
                left = omega_twist(apply_sp(GeneratorTag(SP, kind, i), x))
                right = apply_sp(GeneratorTag(SP, partner, i), twisted)
                report.expect(left == right,
                              _vec_witness("omega %s%s" % (kind, i), S, left,
                                           right))


def check_bar_canonical(report, n, spec):
    for S in basis(n):
        b = canonical_vector(S)
        report.expect(bar(b) == b, _vec_witness("bar", S, bar(b), b))
        report.expect(has_canonical_shape(S), {"shape": S.to_json()})
        for T in basis(n, len(S)):
            value = sesquilinear(v(S), bar(v(T)))
            report.expect(value == (ONE if S == T else ZERO),
                          {"S": S.to_json(), "T": T.to_json(),
                           "value": value.to_json()})
    for k in range(2 * n + 1):
        product = inverse_base_change_matrix(n, k) * base_change_matrix(n, k)
        report.expect(product.is_identity(), {"degree": k})


def check_diff_sl2(report, n, spec):
    for S in basis(n):
        defect = weight_commutator(S)
        report.expect(not defect,
                      _vec_witness("[Ed,Fd] pr", S, defect, ExtVec.zero(n)))


def check_diff_commute(report, n, spec):
    diff_ops = [GeneratorTag(DIFF, "e"), GeneratorTag(DIFF, "f")]
    for S in basis(n):
        x = v(S)
        for small in _sp_generators(n):
            for big in diff_ops:
                left = apply_diff(big, apply_sp(small, x))
                right = apply_sp(small, apply_diff(big, x))
                report.expect(left == right,
                              _vec_witness("%s %s" % (big, small), S, left,
                                           right))


def check_diff_algebra(report, n, spec):
    outcome = confluence_report_diff(n)
    report.details["overlaps"] = outcome["overlaps"]
    for failure in outcome["failures"]:
        report.expect(False, failure)
    report.assertions += outcome["overlaps"] - len(outcome["failures"])
    if n <= SMALL_RANK:
        flat = flatness_report_diff(n)
        for word in flat["failures"]:
            report.expect(False, {"word": word})
        report.assertions += flat["words"] - len(flat["failures"])
    for S in basis(n):
        defect = omega_action_defect(S)
        report.expect(not defect,
                      _vec_witness("omega_q - e", S, defect, ExtVec.zero(n)))


def check_images_agree(report, n, spec):
    agree, dotted, plain = images_agree(n)
    report.details["dimensions"] = [dotted, plain]
    report.expect(agree, {"dotted": dotted, "plain": plain})


def check_character_identity(report, n, spec):
    report.expect(total_dimension(n) == 4**n,
                  {"total": total_dimension(n), "expected": 4**n})
    for key in character_identity(n):
        report.expect(False, {"weight": list(key[0]), "sl2": key[1]})
    report.assertions += 1


def check_howe_tilting_shadow(report, n, spec):
    try:
        failures = decomposition_closure(n, spec)
    except exception.NegativeMultiplicity as excp:
        report.expect(False, {"error": str(excp)})
        return
    report.expect(not failures, {"closure_degrees": failures})
    mismatches = ringel_crosscheck(n, spec)
    report.expect(not mismatches,
                  {"ringel": [list(m) for m in mismatches]})


# (name, function, cost class, takes a specialization)
REGISTRY = [
    ("flatness", check_flatness, CHEAP, False),
    ("confluence", check_confluence, CHEAP, False),
    ("commuting", check_commuting, STANDARD, False),
    ("divided_integrality", check_divided_integrality, STANDARD, False),
    ("singular_vectors", check_singular_vectors, STANDARD, False),
    ("kernel_weyl", check_kernel_weyl, STANDARD, False),
    ("filtration_kernels", check_filtration_kernels, STANDARD, False),
    ("filtration_scalar", check_filtration_scalar, CHEAP, False),
    ("T_iso", check_T_iso, STANDARD, False),
    ("self_dual", check_self_dual, STANDARD, False),
    ("omega_twist", check_omega_twist, STANDARD, False),
    ("bar_canonical", check_bar_canonical, STANDARD, False),
    ("diff_sl2", check_diff_sl2, STANDARD, False),
    ("diff_commute", check_diff_commute, STANDARD, False),
    ("diff_algebra", check_diff_algebra, STANDARD, False),
    ("images_agree", check_images_agree, SMALL, False),
    ("character_identity", check_character_identity, CHEAP, False),
    ("howe_tilting_shadow", check_howe_tilting_shadow, CHEAP, True),
]

_BY_NAME = dict((entry[0], entry) for entry in REGISTRY)


def available_checks():
    return [entry[0] for entry in REGISTRY]


def rank_bound(name):
    """The largest rank the named check accepts"""

    cost = _lookup(name)[2]
    bound = get_max_rank()
    if cost == CHEAP:
        return bound + 1
    if cost == SMALL:
        return min(bound, SMALL_RANK)
    return bound


def _lookup(name):
    try:
        return _BY_NAME[name]
    except KeyError:
        err_msg = "Unknown check %r; available: %s" % (
            name, ", ".join(available_checks()))
        _log.error(err_msg)
        raise exception.NotFound(err_msg)


def run_check(name, n, spec=None):
    """Run one check exhaustively at rank ``n``

    :param spec: the :class:`~qhowe.qarith.Specialization` for checks that
        take one; generic by default
    :rtype: CheckReport
    :raises NotFound: for an unknown check
    :raises RankExceeded: when ``n`` exceeds the bound of the check
    """

    _, func, _, takes_spec = _lookup(name)
    HoweBase.validate_rank(n)
    bound = rank_bound(name)
    if n > bound:
        err_msg = "Check %s is limited to n <= %s, got %s" % (name, bound, n)
        _log.error(err_msg)
        raise exception.RankExceeded(err_msg)
    params = {"n": n}
    if takes_spec:
        spec = spec or GENERIC
        params["s"] = str(spec)
    report = CheckReport(name, params)
    func(report, n, spec)
    _log.info("%s %s %s: %s assertions", report.status.upper(), name,
              report.param_text(), report.assertions)
    return report


def plan(n, specs=None, names=None):
    """The ``(name, spec)`` jobs of :func:`run_all` in report order

    Without ``names`` the checks whose rank bound is below ``n`` are left
    out; a named check above its bound raises.

    :raises RankExceeded: when no check accepts ``n`` or a named one does
        not
    """

    specs = list(specs) if specs else [GENERIC]
    explicit = names is not None
    names = list(names) if explicit else available_checks()
    jobs = []
    for name in names:
        takes_spec = _lookup(name)[3]
        if n > rank_bound(name):
            err_msg = "Check %s is limited to n <= %s, got %s" % (
                name, rank_bound(name), n)
            if explicit:
                _log.error(err_msg)
                raise exception.RankExceeded(err_msg)
            _log.info("Skipping: %s", err_msg)
            continue
        if takes_spec:
            jobs.extend((name, spec) for spec in specs)
        else:
            jobs.append((name, None))
    if not jobs:
        err_msg = "No check runs at n=%s; raise %s to go further" % (
            n, MAX_RANK_ENV)
        _log.error(err_msg)
        raise exception.RankExceeded(err_msg)
    return jobs


def run_all(n, specs=None, names=None, processes=None):
    """Run the registry concurrently; reports come back in registry order

    :param specs: specializations for the checks that take one
    :param names: restrict to these checks
    :return: a list of :class:`CheckReport`
    """

    HoweBase.validate_rank(n)
    jobs = plan(n, specs, names)
    with Pool(processes) as pool:
        reports = pool.starmap(run_check,
                               [(name, n, spec) for name, spec in jobs])
    failed = [r.check for r in reports if not r.passed]
    if failed:
        _log.warning("%s of %s checks failed at n=%s: %s", len(failed),
                     len(reports), n, ", ".join(failed))
    return reports


def all_passed(reports):
    return all(report.passed for report in reports)
