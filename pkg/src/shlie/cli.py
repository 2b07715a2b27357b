"""Command-line entry point: shlie basis|compose|cuts|verify|homology|tor."""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import category
from .category import (
    ShuffleConditionError,
    compose,
    enumerate_split_tuples,
    format_split_tuple,
    parse_split_tuple,
    source_of,
    target_of,
)
from .complexes import DSquaredError, homology
from .filtration import admissible_cuts, expected_graded_homology, graded_complex, split_tuples_over
from .formats import InputError, Report, load_algebra, matrix_records
from .leibniz import (
    MODULE_CONVENTION,
    atomic_functor,
    direct_leibniz_complex,
    h0_via_tensor,
    leibniz_complex,
    loday_functor,
    projective_complex,
    projective_functor,
)
from .linalg import parse_field
from .tor import compare_tor_leibniz
from .verification import verify_level

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_CACHE_DIR = ".shlie-cache"


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS,
                        help="rationals (default), prime, or prime:p")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--cache-dir", default=argparse.SUPPRESS,
                        help="hom-space cache directory (env %s)" % category.CACHE_ENV)
    common.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS,
                        help="keep hom-space bases in memory only")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit the report as one JSON document")
    common.add_argument("--stats", action="store_true", default=argparse.SUPPRESS,
                        help="append timings and cache statistics (not deterministic)")

    parser = argparse.ArgumentParser(prog="shlie", parents=[common],
                                     description="Leibniz homology as functor homology over Sh^Lie")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="list the split-tuple basis of Hom([n],[m])")
    p.add_argument("n", type=_nonneg)
    p.add_argument("m", type=_nonneg)

    p = sub.add_parser("compose", parents=[common], help="compose two split tuples, g after f")
    p.add_argument("g", help="e.g. 0,2|1")
    p.add_argument("f", help="e.g. 0,1,5|2|3,6,4")

    p = sub.add_parser("cuts", parents=[common], help="admissible cuts and graded piece of a tuple")
    p.add_argument("u", help="e.g. 0,2,1,5,3,4")

    p = sub.add_parser("verify", parents=[common], help="run every check attached to P_n")
    p.add_argument("n", type=_nonneg)
    p.add_argument("--dump", action="store_true", help="include differential matrices")

    p = sub.add_parser("homology", parents=[common], help="Leibniz homology of a Lie algebra file")
    p.add_argument("algebra_file")
    p.add_argument("N", type=_nonneg, help="support bound")
    p.add_argument("--dump", action="store_true", help="include differential matrices")

    p = sub.add_parser("tor", parents=[common], help="compare Tor(t, T) with Leibniz homology")
    p.add_argument("functor", nargs="+", metavar="SPEC",
                   help="atomic n [N] | projective n | loday FILE N")
    p.add_argument("--degrees", type=_nonneg, default=None, help="highest degree compared")
    return parser


def _options(args):
    return {
        "field": getattr(args, "field", "rationals"),
        "workers": getattr(args, "workers", 1),
        "cache_dir": getattr(args, "cache_dir", None),
        "no_cache": getattr(args, "no_cache", False),
        "json": getattr(args, "json", False),
        "stats": getattr(args, "stats", False),
    }


# ------------------------------------------------------------ commands


def command_basis(args, report, field):
    tuples = enumerate_split_tuples(args.n, args.m)
    report.add("hom", n=args.n, m=args.m, count=len(tuples))
    for k, b in enumerate(tuples):
        report.add("tuple", index=k, blocks=format_split_tuple(b))


def command_compose(args, report, field):
    g, f = parse_split_tuple(args.g), parse_split_tuple(args.f)
    if source_of(g) != target_of(f):
        raise InputError("g has source [%d] but f has target [%d]" % (source_of(g), target_of(f)))
    h = compose(g, f)
    report.add("hom", n=h.source, m=h.target, terms=len(h.terms))
    for b, c in h.terms.items():
        report.add("term", blocks=format_split_tuple(b), coeff=c)


def command_cuts(args, report, field):
    try:
        u = tuple(int(x) for x in args.u.strip("()").split(","))
    except ValueError:
        raise InputError("bad tuple %r" % args.u)
    if u[0] != 0 or sorted(u) != list(range(len(u))):
        raise InputError("a tuple must be a permutation of 0..n starting with 0")
    report.add("cuts", tuple=u, value=admissible_cuts(u))
    for b in split_tuples_over(u):
        report.add("split_tuple", blocks=format_split_tuple(b), degree=target_of(b))
    gr = graded_complex(u)
    h = homology(gr, field)
    report.add("graded", dims=gr.dims, homology=h)
    report.verdict("graded_homology", h == expected_graded_homology(u))


def command_verify(args, report, field, workers):
    n = args.n
    c = projective_complex(n)
    report.add("complex", name=c.name, dims=c.dims)
    verdicts = verify_level(n, field, workers)
    for v in verdicts:
        if v.name == "projective_homology":
            for deg, h in enumerate(v.payload["homology"]):
                report.add("homology", degree=deg, dim=h)
    for v in verdicts:
        report.verdict(v.name, v.ok, v.detail)
        if not v.ok and v.payload:
            report.add("counterexample", check=v.name,
                       **{k: (format_split_tuple(x) if k == "blocks" else x) for k, x in v.payload.items()})
    if args.dump:
        for m, d in enumerate(c.differentials, start=1):
            report.extend(matrix_records("d%d" % m, d))


def command_homology(args, report, field):
    A, M, file_field = load_algebra(args.algebra_file)
    # the file's field applies unless --field was given
    if file_field is not None and not hasattr(args, "field"):
        field = file_field
        report.field = field.name
    N = args.N
    report.add("algebra", dim=A.dim, module_dim=M.dim, support_bound=N)
    report.add("convention", module_bracket=MODULE_CONVENTION)
    direct = direct_leibniz_complex(A, M, N)
    T = loday_functor(A, M, N)
    via_functor = leibniz_complex(T)
    same = direct.differentials == via_functor.differentials
    report.verdict("direct_equals_loday_functor", same)
    h = homology(direct, field)
    for deg in range(N):
        report.add("homology", degree=deg, dim=h[deg])
    report.add("truncation", degree=N, dim=h[N], status="lower_bound")
    report.verdict("h0_formula", h0_via_tensor(T, field) == h[0])
    if args.dump:
        for m, d in enumerate(direct.differentials, start=1):
            report.extend(matrix_records("d%d" % m, d))
    return field


def _functor_from_spec(spec):
    kind, rest = spec[0], spec[1:]
    try:
        if kind == "atomic" and len(rest) in (1, 2):
            n = int(rest[0])
            return atomic_functor(n, int(rest[1]) if len(rest) == 2 else n)
        if kind == "projective" and len(rest) == 1:
            return projective_functor(int(rest[0]))
        if kind == "loday" and len(rest) == 2:
            A, M, _ = load_algebra(rest[0])
            return loday_functor(A, M, int(rest[1]))
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(str(e))
    return None


def command_tor(args, report, field, parser):
    T = _functor_from_spec(args.functor)
    if T is None:
        parser.error("unknown functor spec %r (atomic n [N] | projective n | loday FILE N)" % " ".join(args.functor))
    i_max = T.N if args.degrees is None else args.degrees
    report.add("functor", name=T.name, support_bound=T.N, dims=T.dims)
    cmp = compare_tor_leibniz(T, i_max, field)
    for deg in range(i_max + 1):
        report.add("degree", degree=deg, leibniz=cmp.leibniz[deg], tor=cmp.tor[deg], equal=cmp.agree[deg])
    if cmp.caveat:
        report.add("caveat", text=cmp.caveat)
    for name, ok in cmp.d_squared.items():
        report.verdict("d_squared_" + name, ok)
    report.verdict("tor_equals_leibniz", all(cmp.agree))
    report.verdict("h0_formula", h0_via_tensor(T, field) == cmp.tor[0])
    if not cmp.ok:
        for side, dump in cmp.dumps.items():
            report.add("dump", side=side, dims=dump["dims"])
            for m, entries in enumerate(dump["differentials"], start=1):
                for r, c, v in entries:
                    report.add("entry", matrix="%s_d%d" % (side, m), row=r, col=c, value=v)


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    opts = _options(args)
    try:
        field = parse_field(opts["field"])
    except ValueError as e:
        sys.stderr.write("shlie: error: %s\n" % e)
        return EXIT_INPUT

    cache_dir = None
    if not opts["no_cache"]:
        cache_dir = opts["cache_dir"] or os.environ.get(category.CACHE_ENV) or DEFAULT_CACHE_DIR
    cache = category.configure_cache(cache_dir, field.name)

    report = Report(["shlie"] + argv, field)
    start = time.perf_counter()
    try:
        if args.command == "basis":
            command_basis(args, report, field)
        elif args.command == "compose":
            command_compose(args, report, field)
        elif args.command == "cuts":
            command_cuts(args, report, field)
        elif args.command == "verify":
            command_verify(args, report, field, max(1, opts["workers"]))
        elif args.command == "homology":
            command_homology(args, report, field)
        elif args.command == "tor":
            command_tor(args, report, field, parser)
    except (InputError, FileNotFoundError) as e:
        sys.stderr.write("shlie: input error: %s\n" % e)
        return EXIT_INPUT
    except ValueError as e:
        if isinstance(e, DSquaredError):
            report.verdict("d_squared", False, str(e))
        else:
            sys.stderr.write("shlie: input error: %s\n" % e)
            return EXIT_INPUT
    except (ShuffleConditionError, AssertionError) as e:
        sys.stderr.write("shlie: internal assertion: %s %s\n" % (e, getattr(e, "dump", "")))
        return EXIT_INTERNAL

    report.stat("seconds", "%.3f" % (time.perf_counter() - start))
    for k, v in cache.stats.items():
        report.stat("cache_" + k, v)
    report.stat("cache_dir", cache_dir or "none")
    if opts["json"]:
        sys.stdout.write(report.to_json(opts["stats"]))
    else:
        sys.stdout.write(report.to_text(opts["stats"]))
    return EXIT_OK if report.ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
