"""Command line entry point: ``fano10 verify|list|ledger|model``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bbw, claims
from .scalars import FieldDescriptor, FieldError


def _field(text: str) -> FieldDescriptor:
    try:
        return FieldDescriptor.parse(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fano10", description="Exact verification suite for W, X and their conics.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run claims C01-C21")
    v.add_argument("claims", nargs="+", help="claim ids, or 'all'")
    v.add_argument("--field", type=_field, default=None,
                   help="rational | fp:<p> | fp2:<p> (default: each claim's own field, fp:97 for sampling claims)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=_positive, default=200)
    v.add_argument("--json", type=Path, default=None, metavar="PATH", help="write the JSON report here ('-' for stdout)")
    v.add_argument("--jobs", type=_positive, default=1)
    v.add_argument("--timings", action="store_true", help="record wall time (makes reports non-reproducible)")

    sub.add_parser("list", help="print the claim registry")

    led = sub.add_parser("ledger", help="solve the cohomology ledger and print it")
    led.add_argument("name", nargs="?", default="cogr")

    m = sub.add_parser("model", help="dump or check an X model file")
    msub = m.add_subparsers(dest="action", required=True)
    d = msub.add_parser("dump")
    d.add_argument("--field", type=_field, default=FieldDescriptor.prime(97))
    d.add_argument("--seed", default="0")
    d.add_argument("-o", "--output", type=Path, default=None)
    c = msub.add_parser("check")
    c.add_argument("path", type=Path)
    return parser


def _verify(args) -> int:
    cfg = claims.Config(field=args.field, seed=args.seed, samples=args.samples, timings=args.timings)
    try:
        reports, status = claims.run(args.claims, cfg, jobs=args.jobs)
    except claims.UnknownClaim as exc:
        print(f"unknown claim id {exc.args[0]!r}", file=sys.stderr)
        return 2
    to_stdout = args.json is not None and str(args.json) == "-"
    if not to_stdout:
        for r in reports:
            ms = "" if r.millis is None else f"  {r.millis} ms"
            line = f"{r.id}  {r.status:<7} {r.field:<8} {claims.REGISTRY[r.id].title}{ms}"
            print(line)
            if r.status != "pass" and r.witness:
                print(f"     witness: {r.witness}")
        passed = sum(r.status == "pass" for r in reports)
        print(f"{passed}/{len(reports)} passed")
    if args.json is not None:
        text = claims.report_json(reports, cfg)
        if to_stdout:
            sys.stdout.write(text)
        else:
            args.json.write_text(text, encoding="utf-8")
    return status


def _list() -> int:
    for d in claims.list_claims():
        print(f"{d.id}  {d.title:<42} {d.anchor:<36} deps: {', '.join(d.deps)}")
    return 0


def _ledger(name: str) -> int:
    led = bbw.load_ledger(name)
    sol = bbw.solve_ledger(led, claims.rank_facts())
    for sheaf in led.targets:
        facts = ", ".join(sorted(sol.consumed([sheaf]))) or "-"
        print(f"{sheaf:<14} h^q = {sol.dims(sheaf, 4)}   facts: {facts}")
    if sol.unresolved:
        print("unresolved: " + ", ".join(f"H^{q}({s})" for s, q in sol.unresolved))
    return 0


def _model(args) -> int:
    from .wx_geometry import build_w_model, modelio
    from .wx_geometry.threefold import build_X

    if args.action == "dump":
        seed = int(args.seed) if args.seed.lstrip("-").isdigit() else args.seed
        X = build_X(build_w_model(args.field), seed)
        text = modelio.dumps(X)
        if args.output is None:
            sys.stdout.write(text)
        else:
            args.output.write_text(text, encoding="utf-8")
        return 0
    try:
        X = modelio.loads(args.path.read_text(encoding="utf-8"))
    except modelio.ModelFormatError as exc:
        print(f"invalid model: {exc}", file=sys.stderr)
        return 1
    print(f"ok: X over {X.field}, seed {X.seed}, {len(X.prescribed)} prescribed conics on X")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return _verify(args)
    if args.command == "list":
        return _list()
    if args.command == "ledger":
        return _ledger(args.name)
    return _model(args)


if __name__ == "__main__":
    sys.exit(main())
