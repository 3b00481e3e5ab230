"""Command-line front end.

Subcommands: classgroup, rm-conductor, cf, sha, height, count. Output is a
human table by default, JSON with --json, CSV with --csv. A persistent
class-number cache (plain text, versioned) can be pointed at with --cache
or the RMARITH_CACHE environment variable; it is a pure memo and never
changes answers.

Exit codes: 0 success, 2 input error, 3 search limit exceeded, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import __version__, cmrm, contfrac, heights, latimer, quadforms
from .contfrac import QuadraticIrrational
from .errors import RmarithError, SearchLimitExceeded

CACHE_VERSION = "rmarith-cache 1"
CACHE_ENV = "RMARITH_CACHE"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4


class ClassNumberCache:
    """Versioned `D narrow wide` lines; loaded once, written atomically."""

    def __init__(self, path: str):
        self.path = path
        self.entries: dict[int, tuple[int, int]] = {}
        self.dirty = False
        self._load()

    def _load(self) -> None:
        try:
            with open(self.path, encoding="ascii") as fh:
                lines = fh.read().splitlines()
        except OSError:
            return
        if not lines or lines[0] != CACHE_VERSION:
            return  # unknown version: recompute from scratch
        for line in lines[1:]:
            parts = line.split()
            if len(parts) == 3:
                d, narrow, wide = (int(v) for v in parts)
                self.entries[d] = (narrow, wide)

    def lookup(self, d: int) -> tuple[int, int]:
        if d not in self.entries:
            self.entries[d] = (
                quadforms.class_number(d, "narrow"),
                quadforms.class_number(d, "wide"),
            )
            self.dirty = True
        return self.entries[d]

    def class_number(self, d: int, flavor: str = "wide") -> int:
        narrow, wide = self.lookup(d)
        return narrow if flavor == "narrow" else wide

    def save(self) -> None:
        if not self.dirty:
            return
        lines = [CACHE_VERSION]
        lines += [f"{d} {n} {w}" for d, (n, w) in sorted(self.entries.items())]
        payload = "\n".join(lines) + "\n"
        directory = os.path.dirname(os.path.abspath(self.path)) or "."
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rmarith-cache-")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                fh.write(payload)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.dirty = False


def _emit(args, result: dict, human_lines: list[str], csv_rows: list[list]) -> None:
    if args.json:
        print(json.dumps(result, sort_keys=True))
    elif args.csv:
        writer = csv.writer(sys.stdout)
        for row in csv_rows:
            writer.writerow(row)
    else:
        for line in human_lines:
            print(line)


def _class_number_fn(cache):
    return cache.class_number if cache else quadforms.class_number


# ---------------------------------------------------------------------------
# Commands


def cmd_classgroup(args, cache) -> None:
    if args.discriminant is not None:
        d = args.discriminant
    elif args.fundamental is not None:
        d = args.fundamental * args.conductor * args.conductor
    else:
        raise ValueError("give -D or -d (with optional -f)")
    quadforms.validate_discriminant(d)
    h_fn = _class_number_fn(cache)
    narrow, wide = h_fn(d, "narrow"), h_fn(d, "wide")
    structure = quadforms.class_group_structure(d)
    reps = quadforms.enumerate_reduced_forms(d)
    if structure.h != narrow:
        raise AssertionError("composition group order disagrees with class number")
    d_k, f = quadforms.split_discriminant(d)
    result = {
        "D": d,
        "d_k": d_k,
        "f": f,
        "h": narrow,
        "narrow": narrow,
        "wide": wide,
        "divisors": list(structure.elementary_divisors),
        "representatives": [[g.a, g.b, g.c] for g in reps],
    }
    human = [
        f"discriminant      {d}  (fundamental {d_k}, conductor {f})",
        f"class number      narrow {narrow}, wide {wide}",
        f"group structure   {' x '.join('Z/' + str(v) for v in structure.elementary_divisors) or 'trivial'}",
        "representatives   " + " ".join(str(g) for g in reps),
    ]
    rows = [["a", "b", "c"]] + [[g.a, g.b, g.c] for g in reps]
    _emit(args, result, human, rows)


def cmd_rm_conductor(args, cache) -> None:
    f_prime = cmrm.rm_conductor(
        args.d,
        args.f,
        search_limit=args.limit,
        workers=args.threads,
        class_number_fn=_class_number_fn(cache),
    )
    core = cmrm._normalize_radicand(args.d)
    cm_disc = quadforms.fundamental_discriminant(-core) * args.f * args.f
    rm_disc = quadforms.fundamental_discriminant(core) * f_prime * f_prime
    h_fn = _class_number_fn(cache)
    target = h_fn(cm_disc, "wide")
    result = {
        "d": core,
        "f": args.f,
        "f_prime": f_prime,
        "cm_discriminant": cm_disc,
        "rm_discriminant": rm_disc,
        "cm_class_number": target,
        "rm_class_number": h_fn(rm_disc, "wide"),
    }
    human = [
        f"imaginary side    Z + {args.f}*O_Q(sqrt(-{core}))  (discriminant {cm_disc}, h = {target})",
        f"matched conductor f' = {f_prime}",
        f"real side         Z + {f_prime}*O_Q(sqrt({core}))  (discriminant {rm_disc}, h = {result['rm_class_number']})",
    ]
    rows = [["d", "f", "f_prime", "class_number"], [core, args.f, f_prime, target]]
    _emit(args, result, human, rows)


def _parse_ints(text: str, expected: int | None = None) -> list[int]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    values = [int(p) for p in parts]
    if expected is not None and len(values) != expected:
        raise ValueError(f"expected {expected} comma-separated integers, got {len(values)}")
    return values


def cmd_cf(args, cache) -> None:
    given = [v for v in (args.sqrt, args.surd, args.rational) if v is not None]
    if len(given) != 1:
        raise ValueError("give exactly one of --sqrt, --surd, --rational")
    if args.sqrt is not None:
        value = QuadraticIrrational.sqrt(args.sqrt)
        shown = f"sqrt({args.sqrt})"
    elif args.surd is not None:
        p, q, d = _parse_ints(args.surd, 3)
        value = QuadraticIrrational(p, q, d)
        shown = str(value)
    else:
        num, _, den = args.rational.partition("/")
        value = Fraction(int(num), int(den) if den else 1)
        shown = str(value)
    flag, cf = contfrac.is_rm(value)
    count = args.terms
    if not cf.is_periodic:
        count = min(count, len(cf.preperiod))
    convs = contfrac.convergents(cf, count)
    result = {
        "input": shown,
        "preperiod": list(cf.preperiod),
        "period": list(cf.period),
        "is_rm": flag,
        "expansion": str(cf),
        "convergents": [str(c) for c in convs],
    }
    human = [
        f"value       {shown}",
        f"expansion   {cf}",
        f"real multiplication: {'yes' if flag else 'no (rational)'}",
        "convergents " + ", ".join(str(c) for c in convs),
    ]
    rows = [["k", "term", "convergent"]] + [
        [k, t, str(c)] for k, (t, c) in enumerate(zip(cf.terms(count), convs))
    ]
    _emit(args, result, human, rows)


def cmd_sha(args, cache) -> None:
    given = [v for v in (args.matrix, args.charpoly) if v is not None]
    if len(given) != 1:
        raise ValueError("give exactly one of --matrix, --charpoly")
    if args.matrix is not None:
        entries = _parse_ints(args.matrix, 4)
        matrix = latimer.IntegerMatrix(((entries[0], entries[1]), (entries[2], entries[3])))
        poly = latimer.char_poly(matrix)
        report = latimer.sha_for_curve_matrix(matrix)
        source = {"matrix": [list(r) for r in matrix.entries]}
    else:
        coeffs = _parse_ints(args.charpoly, 3)
        if coeffs[0] != 1:
            raise ValueError("characteristic polynomial must be monic")
        poly = tuple(coeffs)
        disc = poly[1] * poly[1] - 4 * poly[2]
        report = latimer.sha_group(quadforms.class_group_structure(disc))
        source = {"charpoly": list(poly)}
    disc = poly[1] * poly[1] - 4 * poly[2]
    result = {
        **source,
        "char_poly": list(poly),
        "discriminant": disc,
        "class_divisors": list(report.cl.elementary_divisors),
        "class_number": report.cl.h,
        "k": report.k,
        "sha_divisors": list(report.sha_divisors),
        "sha_order": report.sha_order,
    }
    human = [
        f"char poly    x^2 + ({poly[1]})x + ({poly[2]})   discriminant {disc}",
        f"class group  {' x '.join('Z/' + str(v) for v in report.cl.elementary_divisors) or 'trivial'}  (h = {report.cl.h}, 2-part exponent k = {report.k})",
        f"sha          {' x '.join('Z/' + str(v) for v in report.sha_divisors) or 'trivial'}  (order {report.sha_order})",
    ]
    rows = [
        ["discriminant", "k", "class_number", "sha_order"],
        [disc, report.k, report.cl.h, report.sha_order],
    ]
    _emit(args, result, human, rows)


def _parse_theta(text: str):
    if "," in text:
        p, q, d = _parse_ints(text, 3)
        return QuadraticIrrational(p, q, d)
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def cmd_height(args, cache) -> None:
    thetas = [_parse_theta(t) for t in args.theta]
    values = []
    for theta in thetas:
        if isinstance(theta, QuadraticIrrational):
            values.append(heights.minkowski_q(theta.shift(-theta.floor())))
        else:
            values.append(
                heights.minkowski_q(theta - (theta.numerator // theta.denominator))
            )
    h = heights.quantum_height(thetas)
    result = {
        "thetas": [str(t) for t in thetas],
        "question_mark_values": [str(v) for v in values],
        "height": h,
    }
    human = [
        "theta        " + ", ".join(str(t) for t in thetas),
        "?(theta)     " + ", ".join(str(v) for v in values),
        f"height       {h}",
    ]
    rows = [["theta", "question_mark", "height"]] + [
        [str(t), str(v), h] for t, v in zip(thetas, values)
    ]
    _emit(args, result, human, rows)


def cmd_count(args, cache) -> None:
    if args.tmin < 1 or args.tmax < args.tmin:
        raise ValueError("need 1 <= tmin <= tmax")
    ts = []
    t = args.tmin
    while t <= args.tmax:
        ts.append(t)
        t *= 2
    rows_data = []
    for t in ts:
        if args.classical:
            n_points = heights.counting_function(heights.projective_points(args.n, t), t)
        else:
            n_points = heights.counting_function(heights.quantum_theta_points(args.n, t), t)
        rows_data.append((t, n_points))
    slope = heights.loglog_slope(rows_data)
    from math import log2

    result = {
        "n": args.n,
        "mode": "classical" if args.classical else "quantum",
        "rows": [[t, c, log2(c)] for t, c in rows_data],
        "slope": slope,
    }
    human = [f"{'T':>8} {'N':>12} {'log2 N':>10}"]
    human += [f"{t:>8} {c:>12} {log2(c):>10.3f}" for t, c in rows_data]
    human.append(f"log-log slope {slope:.3f}")
    csv_rows = [["T", "N", "log2N"]] + [[t, c, f"{log2(c):.6f}"] for t, c in rows_data]
    _emit(args, result, human, csv_rows)


# ---------------------------------------------------------------------------
# Wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmarith",
        description="exact arithmetic of quadratic orders and question-mark heights",
        epilog="exit codes: 0 success, 2 input error, 3 search limit exceeded, "
        "4 internal invariant violation",
    )
    parser.add_argument("--version", action="version", version=f"rmarith {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--cache", metavar="PATH", help="class-number cache file")
    common.add_argument("--threads", type=int, default=1, metavar="N",
                        help="parallel workers for scans")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classgroup", parents=[common],
                       help="class group of a quadratic order")
    p.add_argument("-D", "--discriminant", type=int, help="order discriminant")
    p.add_argument("-d", "--fundamental", type=int, help="fundamental discriminant")
    p.add_argument("-f", "--conductor", type=int, default=1)

    p = sub.add_parser("rm-conductor", parents=[common],
                       help="least real conductor matching an imaginary class number")
    p.add_argument("-d", type=int, required=True, help="positive radicand (squarefree core taken)")
    p.add_argument("-f", type=int, default=1, help="imaginary-side conductor")
    p.add_argument("--limit", type=int, default=cmrm.DEFAULT_SEARCH_LIMIT)

    p = sub.add_parser("cf", parents=[common], help="continued fraction expansion")
    p.add_argument("--sqrt", type=int, metavar="N")
    p.add_argument("--surd", metavar="P,Q,D", help="(P + sqrt(D))/Q")
    p.add_argument("--rational", metavar="N/M")
    p.add_argument("--terms", type=int, default=8, help="convergents to report")

    p = sub.add_parser("sha", parents=[common],
                       help="Sha group from a 2x2 matrix or its char poly")
    p.add_argument("--matrix", metavar="A,B,C,D", help="row-major entries")
    p.add_argument("--charpoly", metavar="1,T,N", help="monic coefficients, highest first")

    p = sub.add_parser("height", parents=[common], help="quantum height of a theta tuple")
    p.add_argument("--theta", action="append", required=True,
                   metavar="P/Q|P,Q,D", help="repeatable coordinate")

    p = sub.add_parser("count", parents=[common],
                       help="point counts N(T) and log-log growth slope")
    p.add_argument("-n", type=int, default=1, help="projective dimension")
    p.add_argument("--tmin", type=int, default=16)
    p.add_argument("--tmax", type=int, default=256)
    p.add_argument("--classical", action="store_true",
                   help="classical height instead of quantum height")
    return parser


COMMANDS = {
    "classgroup": cmd_classgroup,
    "rm-conductor": cmd_rm_conductor,
    "cf": cmd_cf,
    "sha": cmd_sha,
    "height": cmd_height,
    "count": cmd_count,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its message
        return int(exc.code or 0)
    cache = None
    path = args.cache or os.environ.get(CACHE_ENV)
    if path:
        cache = ClassNumberCache(path)
    try:
        COMMANDS[args.command](args, cache)
    except SearchLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (RmarithError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if cache:
            cache.save()
    return EXIT_OK


def main_exit() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_exit()
