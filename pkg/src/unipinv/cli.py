"""Command-line interface.

Exit status: 0 on success, 1 for arguments outside a supported range,
2 for malformed polynomial input (and for argparse usage errors).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .automorphism import make_affine_jordan, make_graded_jordan
from .errors import DomainError, PolynomialSyntaxError
from .invariants import named_generator
from .poly import Polynomial, parse
from .rewrite import RELATION_TEXT, relation_difference, rewrite_affine, rewrite_graded
from .sigma_exp import phi
from .solver import FILTERED, GRADED, default_threads, dimension_table, solve_filtered, solve_graded
from .verify import verify_all


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _map_for(case: str, n: int):
    if case == "affine":
        return make_affine_jordan(n)
    return make_graded_jordan(n + 1)


def _read_poly(args, variable_count: int) -> Polynomial:
    if args.expr is not None:
        text = args.expr
    else:
        text = Path(args.file).read_text(encoding="utf-8")
    return parse(text.strip(), variable_count)


def cmd_gen(args, out) -> int:
    g = named_generator(args.case, args.n, args.name)
    if args.json:
        out.write(_dump({"name": g.name, "degree": g.degree, "poly": g.poly.to_text()}) + "\n")
    else:
        out.write(g.poly.to_text() + "\n")
    return 0


def cmd_solve(args, out) -> int:
    mode = args.mode or (FILTERED if args.case == "affine" else GRADED)
    m = _map_for(args.case, args.n)
    solve = solve_graded if mode == GRADED else solve_filtered
    basis = solve(m, args.degree, threads=args.threads)
    texts = [p.to_text() for p in basis]
    if args.json:
        out.write(_dump(texts) + "\n")
    else:
        out.write("".join(t + "\n" for t in texts))
    return 0


def cmd_dims(args, out) -> int:
    mode = args.mode or (FILTERED if args.case == "affine" else GRADED)
    dims = dimension_table(_map_for(args.case, args.n), args.degree, mode, threads=args.threads)
    out.write(_dump(dims) + "\n")
    return 0


def cmd_rewrite(args, out) -> int:
    if args.case == "affine":
        res = rewrite_affine(_read_poly(args, args.n), args.n)
    else:
        res = rewrite_graded(_read_poly(args, args.n + 1))
    if args.json:
        out.write(_dump(res.to_json()) + "\n")
    else:
        out.write(f"{res.to_text()}\nresidual_x1_degree: {res.residual_x1_degree}\n")
    return 0


def cmd_relations(args, out) -> int:
    status = 0
    for n in ([args.n] if args.n else sorted(RELATION_TEXT)):
        if n not in RELATION_TEXT:
            raise DomainError("defining relations are only known for n = 3 and n = 4")
        diff = relation_difference(n)
        digest = hashlib.sha256(diff.to_text().encode("utf-8")).hexdigest()
        tag = "OK" if diff.is_zero else "FAIL"
        status = status or (0 if diff.is_zero else 1)
        out.write(f"{tag}: {RELATION_TEXT[n]}\n")
        out.write(f"difference sha256: {digest}\n")
    return status


def cmd_phi(args, out) -> int:
    p = phi(args.index, args.direction)
    if args.json:
        out.write(_dump({"index": args.index, "direction": args.direction, "poly": p.to_text()}) + "\n")
    else:
        out.write(p.to_text() + "\n")
    return 0


def cmd_verify(args, out) -> int:
    report = verify_all(args.n_max)
    if args.json:
        out.write(_dump(report.to_json()) + "\n")
    else:
        out.write(report.to_text() + "\n")
    return 1 if args.strict and not report.ok else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unipinv",
        description="Invariants of the unipotent Jordan shifts x -> J x - e1 and x -> J x.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, case=True):
        p.add_argument("--json", action="store_true", help="emit JSON")
        if case:
            p.add_argument("--case", choices=["affine", "graded", "graded-map"], default="affine",
                           help="affine map on n variables or graded map on n+1 variables")
            p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("gen", help="print a named generator")
    common(p)
    p.add_argument("--name", required=True, help="u2, v1, y3, w2, theta, theta_tilde, x1, p1, q1, s, t, f3")
    p.set_defaults(func=cmd_gen)

    for name, func, helptext in (("solve", cmd_solve, "basis of invariants by exact linear algebra"),
                                 ("dims", cmd_dims, "dimensions for degrees 0..DEGREE")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--degree", type=int, required=True)
        p.add_argument("--mode", choices=[FILTERED, GRADED])
        p.add_argument("--threads", type=int, default=default_threads(),
                       help="column-assembly threads (default: $UNIPINV_THREADS or 1)")
        p.set_defaults(func=func)

    p = sub.add_parser("rewrite", help="express a polynomial in the generators")
    common(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr")
    src.add_argument("--file")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("relations", help="check the defining relations for n = 3 and n = 4")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("phi", help="print a factorial basis polynomial")
    common(p, case=False)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--direction", choices=["plus", "minus"], default="minus")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("verify", help="run the whole consistency suite")
    common(p, case=False)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--strict", action="store_true", help="exit 1 if any check fails")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "case", None) == "graded-map":
        args.case = "graded"
    try:
        return args.func(args, out)
    except PolynomialSyntaxError as exc:
        err.write(f"parse error: {exc}\n")
        return 2
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
