"""Command-line front end and the JSON tuple document format.

A tuple document looks like::

    {"n": 2, "m": 1, "field": {"kind": "rational"},
     "matrices": [[["1", "2"], ["3", "4"]]]}

Scalars are always strings so arbitrary-precision values survive the round trip.
"""
from __future__ import annotations

import argparse
import json
import sys

from .canonical import GenericityError, bring_to_section, find_conjugator, genericity_report
from .certify import certify_all, run_suite
from .invariants import enumerate_generators, evaluate_invariants
from .linalg import Matrix, MatrixTuple
from .scalars import DEFAULT_PRIME, FieldSpec, ParseError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_CERTIFICATE = 3


def document_to_tuple(doc) -> MatrixTuple:
    try:
        n, m = doc["n"], doc["m"]
        field = FieldSpec.from_json(doc["field"])
        matrices = doc["matrices"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"tuple document is missing {exc}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not (isinstance(n, int) and isinstance(m, int) and n >= 1 and m >= 1):
        raise ParseError("n and m must be positive integers")
    if not isinstance(matrices, list) or len(matrices) != m:
        raise ParseError(f"expected {m} matrices")
    comps = []
    for mat in matrices:
        if not isinstance(mat, list) or len(mat) != n or any(
            not isinstance(r, list) or len(r) != n for r in mat
        ):
            raise ParseError(f"every matrix must be {n}x{n}")
        if any(not isinstance(x, str) for r in mat for x in r):
            raise ParseError("matrix entries must be strings")
        try:
            comps.append(Matrix([[field.parse(x) for x in r] for r in mat], field))
        except ZeroDivisionError as exc:
            raise ParseError(str(exc)) from None
    return MatrixTuple(comps)


def tuple_to_document(T: MatrixTuple) -> dict:
    return {
        "n": T.n,
        "m": T.m,
        "field": T.field.to_json(),
        "matrices": [matrix_strings(X) for X in T],
    }


def matrix_strings(X: Matrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in X.rows]


def load_tuple(path: str) -> MatrixTuple:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return document_to_tuple(doc)


def dump_tuple(T: MatrixTuple, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(tuple_to_document(T), fh, indent=2)
        fh.write("\n")


# -- subcommands --------------------------------------------------------------


def cmd_generators(args, out) -> int:
    labels = enumerate_generators(args.n, args.m)
    for lab in labels:
        print(lab, file=out)
    print(len(labels), file=out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    inv = evaluate_invariants(load_tuple(args.file))
    for lab, v in inv:
        print(lab, v, file=out)
    return EXIT_OK


def cmd_canon(args, out) -> int:
    T = load_tuple(args.file)
    report = genericity_report(T[1])
    print(f"GENERIC {'yes' if report.generic else 'no'}", file=out)
    for line in report.lines():
        print(line, file=out)
    if not report.generic:
        print("non-generic input: no canonical form", file=sys.stderr)
        return EXIT_PRECONDITION
    u, section = bring_to_section(T)
    print("CONJUGATOR", json.dumps(matrix_strings(u.matrix)), file=out)
    doc = tuple_to_document(section.as_tuple())
    print("SECTION", json.dumps(doc), file=out)
    if args.output:
        dump_tuple(section.as_tuple(), args.output)
    return EXIT_OK


def cmd_equiv(args, out) -> int:
    T1, T2 = load_tuple(args.file1), load_tuple(args.file2)
    if (T1.n, T1.m, T1.field) != (T2.n, T2.m, T2.field):
        print("tuples differ in n, m or field", file=sys.stderr)
        return EXIT_PRECONDITION
    equal = evaluate_invariants(T1) == evaluate_invariants(T2)
    print(f"INVARIANTS_EQUAL {'yes' if equal else 'no'}", file=out)
    if equal:
        u = find_conjugator(T1, T2)
        if u is None:
            print("UNDECIDED", file=out)
        else:
            print("CONJUGATE yes", json.dumps(matrix_strings(u.matrix)), file=out)
    return EXIT_OK


def _report(certs, out) -> int:
    failed = 0
    for cert in certs:
        print(cert.line(), file=out)
        out.flush()
        failed += not cert.passed
    print(f"{'ALL PASS' if not failed else f'{failed} FAILED'}", file=out)
    return EXIT_CERTIFICATE if failed else EXIT_OK


def cmd_certify(args, out) -> int:
    return _report(certify_all(args.n, args.m, args.p, args.seed, args.trials), out)


def cmd_selftest(args, out) -> int:
    return _report(run_suite(args.max_n, args.max_m, args.p, args.seed, args.trials), out)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _prime(text: str) -> int:
    p = int(text)
    FieldSpec.prime(p)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="uinv", description="Invariants of matrix tuples under unitriangular conjugation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generators", help="list the free generators for (n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("eval", help="evaluate all generators on a tuple document")
    p.add_argument("file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("canon", help="conjugate a generic tuple into the section")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="also write the section tuple document here")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("equiv", help="compare invariants and look for a conjugator")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("certify", help="run the five certificates for one (n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=_prime, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("selftest", help="certificate sweep over all n <= 5, m <= 3")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--p", type=_prime, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    for name in ("n", "m", "trials", "max_n", "max_m"):
        if getattr(args, name, 1) < 1:
            print(f"--{name.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args, out)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
