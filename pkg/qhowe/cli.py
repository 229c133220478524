"""The ``qhowe`` command

Every subcommand writes one artifact (JSON, CSV, DOT, XML or text) to
stdout or to ``--output``. Usage errors and library errors exit with 2,
failed verification checks with 1.
"""

import argparse
import json
import logging
import sys

from qhowe import __version__, exception
from qhowe.actions import apply_word, parse_word
from qhowe.canonical import canonical_json
from qhowe.characters import CONVENTIONS, SUMMAND, qdim_probe, \
    tilting_weyl_matrix
from qhowe.crystal import CrystalGraph, tableau_iso
from qhowe.diffalg import VARIANTS, CORRECTED, DiffWord, normalize_diff
from qhowe.extalg import ExtVec, Subset, normalize, v
from qhowe.howeverify import all_passed, available_checks, run_all
from qhowe.qarith import GENERIC, Specialization, padic_expand, \
    qbinom_nonzero
from qhowe.template import Templater
from qhowe.utils import dumps, parse_int_list, parse_int_or_infinity, \
    setup_basic_logging

_log = logging.getLogger("cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _spec_from(args):
    p = parse_int_or_infinity(args.p)
    ell = parse_int_or_infinity(args.ell)
    return Specialization(p, ell)


def _read_element(path, n):
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as handle:
                data = json.load(handle)
    except (OSError, ValueError) as excp:
        err_msg = "Cannot read an element from %s: %s" % (path, excp)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    x = ExtVec.from_json(data)
    if x.n != n:
        err_msg = "Element has rank %s but --n is %s" % (x.n, n)
        _log.error(err_msg)
        raise exception.BadValue(err_msg)
    return x


def cmd_normalize(args):
    if args.diff:
        word = DiffWord.parse(" ".join(args.word), args.n)
        return dumps(normalize_diff(word, variant=args.variant).to_json())
    indices = []
    for piece in " ".join(args.word).split():
        indices.extend(parse_int_list(piece))
    return dumps(normalize(indices, args.n, strategy=args.strategy).to_json())


def cmd_act(args):
    if args.on is not None:
        x = _read_element(args.on, args.n)
    else:
        x = v(Subset(args.n, parse_int_list(args.subset)))
    return dumps(apply_word(parse_word(args.word), x).to_json())


def cmd_canonical(args):
    S = Subset(args.n, parse_int_list(args.subset))
    return dumps(canonical_json(S))


def cmd_crystal(args):
    graph = CrystalGraph(args.n, args.k)
    if args.tableau:
        return "\n".join(" ".join(str(x) for x in tableau_iso(S))
                         for S in graph.nodes)
    if args.dot:
        return graph.to_dot().rstrip("\n")
    return dumps(graph.to_json())


def cmd_tilting(args):
    spec = _spec_from(args)
    rows = tilting_weyl_matrix(args.n, spec, convention=args.convention)
    if args.json:
        return dumps({"n": args.n, "spec": spec.to_json(),
                      "convention": args.convention, "rows": rows})
    return Templater().render_tilting(rows).rstrip("\n")


def cmd_qbinom(args):
    spec = _spec_from(args)
    top = padic_expand(args.m, spec)
    bottom = padic_expand(args.i, spec) if args.i >= 0 else None
    return dumps({
        "m": args.m,
        "i": args.i,
        "spec": spec.to_json(),
        "m_digits": list(top.high_to_low()),
        "i_digits": None if bottom is None else list(bottom.high_to_low()),
        "nonzero": qbinom_nonzero(args.m, args.i, spec)
    })


def cmd_qdim(args):
    spec = _spec_from(args)
    rows = qdim_probe(args.n, spec)
    if args.k is not None:
        rows = [row for row in rows if row["k"] == args.k]
    return dumps({"n": args.n, "spec": spec.to_json(), "rows": rows})


def cmd_verify(args):
    specs = [Specialization.parse(text) for text in args.spec] or [GENERIC]
    reports = run_all(args.n, specs, names=args.check)
    if args.xml:
        text = "\n".join(report.to_xml() for report in reports)
    elif args.text:
        text = Templater().render_report(reports).rstrip("\n")
    else:
        text = "\n".join(dumps(report.to_dict()) for report in reports)
    return text, EXIT_OK if all_passed(reports) else EXIT_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qhowe",
        description="Exact computations and finite checks for the quantum "
        "skew Howe duality between sp_2n and sl_2")
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + __version__)
    parser.add_argument("--verbose", action="store_true",
                        help="log debug output to stderr")
    parser.add_argument("-o", "--output", default=None,
                        help="write the artifact to this file")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    sub = subparsers.add_parser("normalize",
                                help="expand a word in the standard basis")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("word", nargs="+",
                     help="signed generator indices, e.g. \"2,-1\"; with "
                     "--diff tokens such as \"d1 v-1\". Put -- before a "
                     "word starting with a minus")
    sub.add_argument("--strategy", default="leftmost",
                     choices=("leftmost", "rightmost", "random"))
    sub.add_argument("--diff", action="store_true",
                     help="rewrite in the differential operator algebra")
    sub.add_argument("--variant", default=CORRECTED, choices=VARIANTS,
                     help="mixed relations used with --diff")
    sub.set_defaults(func=cmd_normalize)

    sub = subparsers.add_parser("act", help="apply a generator word")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--word", required=True,
                     help="e.g. \"f1^2 E\", applied right to left")
    target = sub.add_mutually_exclusive_group(required=True)
    target.add_argument("--on", help="element JSON file, - for stdin")
    target.add_argument("--subset", help="act on v_S, e.g. \"1,-1\"")
    sub.set_defaults(func=cmd_act)

    sub = subparsers.add_parser("canonical",
                                help="canonical basis vector b_S")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--subset", required=True)
    sub.set_defaults(func=cmd_canonical)

    sub = subparsers.add_parser("crystal", help="fundamental crystal graph")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    form = sub.add_mutually_exclusive_group()
    form.add_argument("--dot", action="store_true")
    form.add_argument("--json", action="store_true")
    form.add_argument("--tableau", action="store_true",
                      help="one column tableau per node")
    sub.set_defaults(func=cmd_crystal)

    sub = subparsers.add_parser("tilting", help="tilting:Weyl matrix")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--p", default="inf")
    sub.add_argument("--ell", default="inf")
    sub.add_argument("--convention", default=SUMMAND, choices=CONVENTIONS)
    form = sub.add_mutually_exclusive_group()
    form.add_argument("--csv", action="store_true")
    form.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_tilting)

    sub = subparsers.add_parser("qbinom",
                                help="digits and vanishing of [m choose i]")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--i", type=int, required=True)
    sub.add_argument("--p", default="inf")
    sub.add_argument("--ell", default="inf")
    sub.set_defaults(func=cmd_qbinom)

    sub = subparsers.add_parser("qdim",
                                help="quantum dimensions of fundamental "
                                "tilting modules at a root of unity")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, default=None)
    sub.add_argument("--p", default="inf")
    sub.add_argument("--ell", default="inf")
    sub.set_defaults(func=cmd_qdim)

    sub = subparsers.add_parser("verify", help="run the finite checks")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--spec", action="append", default=[],
                     help="a specialization P,L; may be repeated")
    sub.add_argument("--check", action="append", default=None,
                     choices=available_checks(),
                     help="run only this check; may be repeated")
    form = sub.add_mutually_exclusive_group()
    form.add_argument("--xml", action="store_true")
    form.add_argument("--text", action="store_true")
    sub.set_defaults(func=cmd_verify)
    return parser


def _emit(text, path):
    if path is None:
        sys.stdout.write(text + "\n")
        return
    with open(path, "w") as handle:
        handle.write(text + "\n")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as excp:
        return excp.code if isinstance(excp.code, int) else EXIT_USAGE
    if args.verbose:
        setup_basic_logging()
    else:
        logging.basicConfig(level=logging.WARNING)
    try:
        outcome = args.func(args)
    except exception.HoweException as excp:
        sys.stderr.write("qhowe: error: %s\n" % excp)
        return EXIT_USAGE
    code = EXIT_OK
    if isinstance(outcome, tuple):
        outcome, code = outcome
    try:
        _emit(outcome, args.output)
    except OSError as excp:
        sys.stderr.write("qhowe: error: %s\n" % excp)
        return EXIT_USAGE
    return code
