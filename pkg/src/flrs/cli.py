"""Command-line front end: ``flrs {encode,decode,simulate,radius-table,kl-track}``.

Exit codes: 0 on success (a decoding failure is a result, not an error),
1 on usage or input errors, 2 when an internal invariant is violated.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .code import CodeParams, FoldedWord, encode
from .decoder import LIST, UNIQUE, DecoderConfig, decode
from .errors import InvariantViolation, ParameterError
from .simulation import (SimulationConfig, kl_track, radius_table, simulate,
                         write_rows_csv)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _params(args) -> CodeParams:
    if not args.params:
        raise UsageError("--params is required")
    return CodeParams.from_dict(_load_json(args.params))


def _emit(obj, out):
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_encode(args):
    params = _params(args)
    msg = _load_json(args.message) if args.message else [0] * params.k
    if isinstance(msg, dict):
        msg = msg.get("message", msg.get("coeffs"))
    _emit(encode(params, msg).to_dict(), args.out)


def cmd_decode(args):
    params = _params(args)
    if not args.received:
        raise UsageError("--received is required")
    try:
        R = FoldedWord.from_dict(_load_json(args.received))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed received word: {exc}") from None
    config = DecoderConfig(args.s, args.mu, args.list_cap)
    out = decode(params, config, R, args.mode)
    _emit(out.to_dict(), args.out)


def _sim_config(args) -> SimulationConfig:
    return SimulationConfig(_params(args), s=args.s, mu=args.mu, t=args.t,
                            trials=args.trials, seed=args.seed, mode=args.mode,
                            list_cap=args.list_cap, workers=args.workers)


def cmd_simulate(args):
    report = simulate(_sim_config(args))
    if args.out:
        report.write_csv(args.out)
        if report.failure_log:
            stem = args.out[:-4] if args.out.endswith(".csv") else args.out
            report.write_failures_csv(stem + "_failures.csv")
    _emit(report.to_dict(), None)


def cmd_radius_table(args):
    rows = radius_table(args.h, args.grid)
    if args.out:
        write_rows_csv(rows, args.out)
    else:
        write_rows_csv(rows, sys.stdout)


def cmd_kl_track(args):
    config = _sim_config(args)
    kl = kl_track(config)
    _emit({"kl_bits": kl, "trials": config.trials, "seed": config.seed}, args.out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flrs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, decoder=True):
        sp.add_argument("--params", help="code parameter JSON file")
        sp.add_argument("--out", help="output path (default: stdout)")
        if decoder:
            sp.add_argument("--s", type=int, default=1, help="interpolation parameter")
            sp.add_argument("--mu", type=int, default=1, help="dimension threshold")
            sp.add_argument("--mode", choices=[UNIQUE, LIST], default=UNIQUE)
            sp.add_argument("--list-cap", type=int, default=4096)

    sp = sub.add_parser("encode", help="encode a message polynomial")
    common(sp, decoder=False)
    sp.add_argument("--message", help="JSON list of k coefficients (default: zero)")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="decode a received folded word")
    common(sp)
    sp.add_argument("--received", help="JSON {blocks: [[[int]]]}")
    sp.set_defaults(func=cmd_decode)

    for name, func, helptext in (("simulate", cmd_simulate, "Monte Carlo failure rate"),
                                 ("kl-track", cmd_kl_track, "KL divergence of B_0 coefficients")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--t", type=int, required=True, help="error sum-rank weight")
        sp.add_argument("--trials", type=int, default=1000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1)
        sp.set_defaults(func=func)

    sp = sub.add_parser("radius-table", help="normalized decoding radius vs rate")
    sp.add_argument("--h", type=int, required=True, help="folding parameter")
    sp.add_argument("--grid", type=int, default=21)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_radius_table)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse: --help (0) or usage error (1)
        return int(exc.code or 0)
    try:
        args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"flrs: error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"flrs: internal invariant violated: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
