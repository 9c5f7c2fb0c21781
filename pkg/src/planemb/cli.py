"""Command line entry point: ``planemb generate|embed|verify|gap``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .errors import ParseError, PlanembError
from .harness import generate, load_config, load_instance, max_concurrent_flow, verify_many


def _params(items) -> dict:
    """``rows=4 cols=5`` or a JSON object."""
    out = {}
    for item in items or []:
        if item.lstrip().startswith("{"):
            try:
                out.update(json.loads(item))
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad --params: {exc}") from None
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise ParseError(f"bad --params entry {item!r}, expected key=value")
        try:
            out[key] = json.loads(val)
        except json.JSONDecodeError:
            out[key] = val
    return out


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _frac(x: Fraction) -> dict:
    return {"value": float(x), "exact": str(x)}


def cmd_generate(args) -> int:
    inst = generate(args.kind, _params(args.params), args.seed)
    _write(args.output, inst.dumps())
    return 0


def cmd_embed(args) -> int:
    from .cuts import distortion_report
    from .pipeline import PipelineTrace, contraction_bound, embed_same_face_cuts

    config = load_config(args.config)
    inst = load_instance(args.file)
    trace = PipelineTrace()
    C = embed_same_face_cuts(inst.G, inst.lengths, config, trace)
    _write(args.output, C.to_coordinates().to_csv())
    if args.report:
        dr = distortion_report(C, inst.G, inst.lengths)
        rep = {
            "instance": inst.name,
            "cuts": len(C.cuts),
            "expansion": _frac(dr.expansion),
            "contraction": _frac(dr.contraction),
            "contraction_bound": _frac(contraction_bound(config)),
            "events": {k: trace.count(k) for k in ("geodesic", "extend", "fallback")},
        }
        _write(args.report, json.dumps(rep, indent=2) + "\n")
    return 0


def cmd_verify(args) -> int:
    config = load_config(args.config)
    reports = verify_many(args.files, config, args.eps, args.jobs)
    for rep in reports:
        print(json.dumps(rep, indent=2))
    return max(r["exit_code"] for r in reports)


def cmd_gap(args) -> int:
    inst = load_instance(args.file)
    flow = max_concurrent_flow(inst.G, inst.lengths, inst.demands, args.eps, method=args.method)
    out = {
        "instance": inst.name,
        "lambda": _frac(flow.lam),
        "lambda_upper": _frac(flow.upper),
        "flow_cut_gap_lower": _frac(1 / flow.upper) if flow.upper else None,
        "eps": args.eps,
        "method": flow.method,
    }
    print(json.dumps(out, indent=2))
    return 0


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as a cut violation
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ParseError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="planemb", description="Same-face L1 embeddings of planar graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a generated instance")
    g.add_argument("--kind", required=True)
    g.add_argument("--params", nargs="*", help="key=value pairs or a JSON object")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(fn=cmd_generate)

    e = sub.add_parser("embed", help="embed an instance, write coordinates as CSV")
    e.add_argument("file")
    e.add_argument("-o", "--output")
    e.add_argument("--report")
    e.add_argument("--config")
    e.set_defaults(fn=cmd_embed)

    v = sub.add_parser("verify", help="cut condition, embedding bounds and flow duality")
    v.add_argument("files", nargs="+")
    v.add_argument("--eps", type=float, default=1e-3)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--config")
    v.set_defaults(fn=cmd_verify)

    f = sub.add_parser("gap", help="maximum concurrent flow")
    f.add_argument("file")
    f.add_argument("--eps", type=float, default=1e-3)
    f.add_argument("--method", choices=("lp", "mw"), default="lp")
    f.set_defaults(fn=cmd_gap)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except PlanembError as exc:
        print(f"planemb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
