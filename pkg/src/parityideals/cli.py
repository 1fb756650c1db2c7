"""Command line front end: ``ideal``, ``gb``, ``hilbert``, ``betti``, ``verify``."""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .betti import DEFAULT_CAP, DeskScaleExceeded, graded_betti
from .checks import CHECK_IDS, exit_code, run_verify
from .graphs import (
    Graph,
    GraphParseError,
    determinantal_ideal,
    parity_ideal,
    parse_graph,
    permanental_ideal,
    saturation_generators,
)
from .hilbert import hilbert_function, hilbert_numerator, krull_dim
from .poly import Field, TermOrder

KINDS = {
    "parity": parity_ideal,
    "permanental": permanental_ideal,
    "determinantal": determinantal_ideal,
    "saturation": saturation_generators,
}
TIER_NMAX = {"quick": 4, "full": 6}
TIER_TIMEOUT = {"quick": None, "full": 600.0}


class UsageError(Exception):
    pass


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _add_ideal_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--complete", type=int, metavar="N", help="complete graph K_N")
    src.add_argument("--graph", metavar="FILE", help="graph file: 'n' then 'i j' lines")
    p.add_argument("--kind", choices=sorted(KINDS), default="parity")
    p.add_argument("--field", type=_field, default=Field(0), help="q (default) or fp:<p>")
    p.add_argument("--json", metavar="PATH", help="also write machine-readable output")


def _graph(args) -> Graph:
    if args.complete is not None:
        if args.complete < 1:
            raise UsageError("--complete needs a positive vertex count")
        return Graph.complete(args.complete)
    try:
        with open(args.graph) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read graph file: {e}") from None
    try:
        return parse_graph(text)
    except GraphParseError as e:
        raise UsageError(f"{args.graph}: {e}") from None


def _ideal(args):
    G = _graph(args)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            I = KINDS[args.kind](G, args.field)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return I


def _write_json(path, data):
    if path:
        with open(path, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")


def cmd_ideal(args) -> int:
    I = _ideal(args)
    for g in I.generators:
        print(g)
    _write_json(args.json, {"ring": str(I.ring), "generators": [str(g) for g in I.generators]})
    return 0


def cmd_gb(args) -> int:
    I = _ideal(args)
    gb = I.groebner_basis(TermOrder.named(I.ring, args.order))
    for g in gb:
        print(g)
    _write_json(args.json, {"ring": str(I.ring), "order": args.order,
                            "basis": [str(g) for g in gb]})
    return 0


def cmd_hilbert(args) -> int:
    I = _ideal(args)
    N = hilbert_numerator(I, TermOrder.named(I.ring, args.order))
    print(N)
    dim = krull_dim(N)
    H = hilbert_function(N, args.degrees)
    print(f"dim: {dim}")
    print(f"H(0..{args.degrees}): {' '.join(map(str, H))}")
    _write_json(args.json, {"numerator": list(N.coefficients), "arity": N.arity,
                            "text": str(N), "dim": dim, "hilbert_function": H})
    return 0


def cmd_betti(args) -> int:
    I = _ideal(args)
    try:
        B = graded_betti(I, i_max=args.i_max, row_max=args.row_max, cap=args.cap,
                         method=args.method)
    except DeskScaleExceeded as e:
        print(str(e), file=sys.stderr)
        return 2
    print(B.format())
    print(f"reg: {B.reg}  pd: {B.pd}  depth: {B.depth}")
    _write_json(args.json, B.to_json())
    return 0


def cmd_verify(args) -> int:
    nmax = args.nmax if args.nmax is not None else TIER_NMAX[args.tier]
    timeout = args.timeout if args.timeout is not None else TIER_TIMEOUT[args.tier]
    checks = CHECK_IDS if not args.checks else [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in checks if c not in CHECK_IDS]
    if unknown:
        raise UsageError(f"unknown check id(s): {', '.join(unknown)}; known: {', '.join(CHECK_IDS)}")
    if args.nmin < 3:
        raise UsageError("the theorems require n >= 3")
    if nmax < args.nmin:
        raise UsageError("empty n range")

    def progress(r):
        tail = r.reason or (r.witness.splitlines()[0] if r.witness else "")
        print(f"{r.check_id:<11} n={r.n:<2} {r.status:<7} {r.runtime_ms:>7} ms  {tail}".rstrip(),
              flush=True)

    report = run_verify(args.nmin, nmax, checks, args.field, args.json, tier=args.tier,
                        poison=args.poison, workers=args.workers, timeout=timeout,
                        progress=None if args.quiet else progress)
    s = report["summary"]
    print(f"pass: {s['pass']}  fail: {s['fail']}  skipped: {s['skipped']}")
    code = exit_code(report)
    if code == 2:
        print("no check ran", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parityideals", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideal", help="print the generators of an ideal")
    _add_ideal_args(p)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("gb", help="reduced Groebner basis")
    _add_ideal_args(p)
    p.add_argument("--order", choices=["lex", "degrevlex"], default="degrevlex")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("hilbert", help="Hilbert-Poincare numerator")
    _add_ideal_args(p)
    p.add_argument("--order", choices=["lex", "degrevlex"], default="degrevlex")
    p.add_argument("--degrees", type=int, default=6, help="print H(0..D)")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("betti", help="graded Betti table from Koszul homology")
    _add_ideal_args(p)
    p.add_argument("--i-max", type=int, default=None)
    p.add_argument("--row-max", type=int, default=4, help="largest j - i to compute")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max matrix entries per strand")
    p.add_argument("--method", choices=["exact", "modp"], default="exact")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", help="run the verification checks")
    p.add_argument("--nmin", type=int, default=3)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--checks", default=None, help=f"comma list from {','.join(CHECK_IDS)}")
    p.add_argument("--field", type=_field, default=Field(0), help="q (default) or fp:<p>")
    p.add_argument("--tier", choices=["quick", "full"], default="quick")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timeout", type=float, default=None, help="seconds per check")
    p.add_argument("--poison", action="store_true",
                   help="negative control: flip the sign of y1*y2 in x1*x2 - y1*y2")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
