"""Command-line entry point.

    hochstar check FILE
    hochstar build FILE --order K --gauge zero --out F
    hochstar star FILE --order K --f EXPR --g EXPR
    hochstar assoc FILE --order K --trials N --seed S --max-degree D
    hochstar block --p P --degree "l1,l2,..." [--tilde] [--pinv]

FILE is either a Poisson structure ``{"dimension": n, "omega": [...]}`` or a
star product written by ``build`` (detected by its ``"pi"`` entry).

Exit codes: 0 success, 1 invalid input or Poisson structure, 2 obstruction,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import re
import sys

from . import blocksolve
from .errors import InvalidPoisson, InvariantViolation, ObstructionError
from .poly import PolySyntaxError, parse_poly, random_poly
from .starprod import PoissonStructure, StarProduct, associator, build, jacobi_residual, star_eval

EXIT_OK, EXIT_INVALID, EXIT_OBSTRUCTION, EXIT_INTERNAL = 0, 1, 2, 3
MAX_ORDER = 4

log = logging.getLogger("hochstar")


class InputError(Exception):
    pass


_NUMBER_LIST = re.compile(r'\[[\s\d,"/-]*\]')
# a cochain key: up to three one-line multi-indices
_KEY = re.compile(r'\[\s*\[[^\[\]\n]*\](?:,\s*\[[^\[\]\n]*\]){0,2}\s*\]')


def _one_line(m):
    return re.sub(r"\s+", "", m.group(0)).replace(",", ", ")


def dumps(obj) -> str:
    """Indented JSON with numeric lists and cochain keys kept on one line."""
    text = _NUMBER_LIST.sub(_one_line, json.dumps(obj, indent=2))
    return _KEY.sub(_one_line, text) + "\n"


def load_input(path):
    """Return (PoissonStructure, StarProduct or None) from a JSON file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        if "pi" in data:
            sp = StarProduct.from_json(data)
            return sp.structure, sp
        return PoissonStructure.from_json(data), None
    except PolySyntaxError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed input ({exc!s})") from None


def _check_order(args):
    if args.order is None:
        return
    if args.order < 1:
        raise InputError("--order must be >= 1")
    if args.order > MAX_ORDER and not args.allow_high_order:
        raise InputError(f"--order {args.order} exceeds {MAX_ORDER}; pass --allow-high-order")


def _star_product(args) -> StarProduct:
    ps, sp = load_input(args.file)
    _check_order(args)
    if sp is not None:
        k = sp.order if args.order is None else args.order
        if k > sp.order:
            raise InputError(f"file holds order {sp.order}, asked for {k}")
        return StarProduct(sp.structure, sp.pis[:k], sp.gauge[:k])
    return build(ps, args.order or 2, jobs=args.jobs)


def cmd_check(args, out) -> int:
    ps, _ = load_input(args.file)
    residuals = jacobi_residual(ps)
    n = ps.n
    if n < 3:
        out.write(f"n={n}: no triples, Jacobi identity holds\n")
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                out.write(f"({i + 1},{j + 1},{k + 1}): {residuals.get((i, j, k), 0)}\n")
    out.write("valid\n" if not residuals else "invalid: nonzero Jacobi residual\n")
    return EXIT_OK if not residuals else EXIT_INVALID


def cmd_build(args, out) -> int:
    if args.gauge != "zero":
        raise InputError(f"unsupported gauge {args.gauge!r} (only 'zero' from the command line)")
    ps, _ = load_input(args.file)
    _check_order(args)
    sp = build(ps, args.order, jobs=args.jobs)
    text = dumps(sp.to_json())
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
        for k, pi in enumerate(sp.pis, 1):
            degrees = sorted({sum(sum(a) for a in key) for key in pi.terms})
            out.write(f"Pi^{k}: {len(pi)} terms, |l| in {degrees}\n")
        out.write(f"wrote {args.out}\n")
    else:
        out.write(text)
    return EXIT_OK


def _parse_expr(text, n, flag):
    try:
        return parse_poly(text, n)
    except PolySyntaxError as exc:
        raise InputError(f"{flag} {text!r}: {exc}") from None


def cmd_star(args, out) -> int:
    ps, _ = load_input(args.file)
    f = _parse_expr(args.f, ps.n, "--f")
    g = _parse_expr(args.g, ps.n, "--g")
    sp = _star_product(args)
    for k, c in enumerate(star_eval(sp, f, g)):
        out.write(f"t^{k}: {c}\n")
    return EXIT_OK


def cmd_assoc(args, out) -> int:
    if args.trials < 1:
        raise InputError("--trials must be >= 1")
    sp = _star_product(args)
    rng = random.Random(args.seed)
    worst = -1
    for trial in range(args.trials):
        f, g, h = (random_poly(rng, sp.n, args.max_degree) for _ in range(3))
        res = associator(sp, f, g, h)
        bad = [k for k, r in enumerate(res) if r]
        if bad:
            worst = max(worst, max(bad))
            out.write(f"trial {trial}: associator nonzero at orders {bad} "
                      f"for f={f}, g={g}, h={h}\n")
    if worst < 0:
        out.write(f"{args.trials} trials: associator vanishes through order {sp.order}\n")
        return EXIT_OK
    out.write(f"max nonzero associator order: {worst}\n")
    return EXIT_INTERNAL


def cmd_block(args, out) -> int:
    try:
        l = tuple(int(x) for x in args.degree.split(","))
    except ValueError:
        raise InputError(f"--degree {args.degree!r}: expected comma-separated naturals") from None
    if any(x < 0 for x in l) or args.p < 0:
        raise InputError("degrees and p must be nonnegative")
    d = blocksolve.delta_matrix(args.p, l, args.tilde)
    d_in = blocksolve.delta_matrix(args.p - 1, l, args.tilde) if args.p >= 1 else None
    proj = blocksolve.projectors(args.p, l, args.tilde)
    report = {
        "p": args.p,
        "l": list(l),
        "tilde": args.tilde,
        "basis": [[list(a) for a in t] for t in d.col_basis.tuples],
        "delta": d.to_json(args.p, l, args.tilde),
        "delta_in": d_in.to_json(args.p - 1, l, args.tilde) if d_in is not None else None,
        "projector_ranks": {
            "ker": proj.ker.rank(),
            "ker_perp": proj.ker_perp.rank(),
            "im": proj.im.rank(),
            "harmonic": proj.harmonic.rank(),
        },
        "cohomology_dim": proj.harmonic.rank(),
    }
    if args.pinv:
        report["pinv"] = blocksolve.pinv(d).to_json(args.p, l, args.tilde)
        if d_in is not None:
            report["pinv_in"] = blocksolve.pinv(d_in).to_json(args.p - 1, l, args.tilde)
    out.write(dumps(report))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hochstar", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def order_opts(p, default):
        p.add_argument("--order", type=int, default=default)
        p.add_argument("--allow-high-order", action="store_true",
                       help=f"permit --order above {MAX_ORDER}")
        p.add_argument("--jobs", type=int, default=1, help="parallel block solves")

    p = sub.add_parser("check", help="Jacobi identity check")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", help="compute Pi^1..Pi^K and write JSON")
    p.add_argument("file")
    order_opts(p, 2)
    p.add_argument("--gauge", default="zero")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("star", help="evaluate f * g order by order")
    p.add_argument("file")
    order_opts(p, None)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("assoc", help="randomized associativity check")
    p.add_argument("file")
    order_opts(p, None)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=3)
    p.set_defaults(func=cmd_assoc)

    p = sub.add_parser("block", help="dump one degree block of delta")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--degree", required=True)
    p.add_argument("--tilde", action="store_true")
    p.add_argument("--pinv", action="store_true")
    p.set_defaults(func=cmd_block)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except InvalidPoisson as exc:
        for (i, j, k), r in sorted(exc.residuals.items()):
            err.write(f"Jacobi residual ({i + 1},{j + 1},{k + 1}): {r}\n")
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except ObstructionError as exc:
        err.write(f"error: {exc}\n")
        err.write(f"order: {exc.order}\nblock l: {list(exc.l)}\n")
        err.write(dumps({"residual": exc.residual.to_json()}))
        return EXIT_OBSTRUCTION
    except InvariantViolation as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
