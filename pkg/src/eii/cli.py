"""Command-line interface: ``eii <command> CONFIG ...``.

CONFIG is a JSON file (see :mod:`eii.config`) or ``builtin:NAME``.
Exit codes: 0 success, 1 a reproduced check failed, 2 bad input,
3 uncorrectable pattern, 4 miscorrection detected.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import arrayio, reproduce
from . import gf as gfm
from .analysis import (Ordering, balanced_parity_placement, bursts_ok, make_ordering, max_correctable_burst,
                       monte_carlo_avg_erasures, report)
from .config import ConfigError, load_config
from .decode import ALIASES, CRITERIA, DECODERS, capability_profile, decode, decode_errors_erasures
from .errors import CapabilityUnavailable, ConstructionError, MiscorrectionDetected, Uncorrectable

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_UNCORRECTABLE, EXIT_MISCORRECTION = 0, 1, 2, 3, 4

DECODER_NAMES = sorted(DECODERS) + sorted(ALIASES)


class InputError(Exception):
    pass


def _code(args):
    try:
        cfg = load_config(args.config)
        return cfg, cfg.build()
    except (ConfigError, KeyError) as exc:
        raise InputError(str(exc)) from None


def _decoder(args, cfg):
    return args.decoder or cfg.decoder, args.criterion or cfg.criterion


def _emit(args, items: dict):
    if getattr(args, "json", False):
        print(json.dumps(items, indent=2, default=str))
    else:
        for k, v in items.items():
            print(f"{k}: {v}")


# ---- commands ----------------------------------------------------------------

def cmd_info(args):
    _, code = _code(args)
    items = report(code, kstar=args.kstar, exhaustive=args.exhaustive)
    try:
        items["capability"] = capability_profile(code)
    except CapabilityUnavailable:
        items["capability"] = "unavailable"
    if code.m * code.n <= args.max_pcm:
        try:
            H = code.parity_check_matrix
            items["parity_check"] = f"{H.shape[0]}x{H.shape[1]}"
            items["parity_check_rank"] = gfm.rank(code.gf, H)
        except ConstructionError:
            items["parity_check"] = "unavailable"
    _emit(args, items)
    return EXIT_OK


def _read_data(path, code):
    A, gf = arrayio.read_array(path)
    if gf != code.gf:
        raise InputError(f"data file is over {gf}, the code over {code.gf}")
    if A.shape == (code.m, code.n):
        return code.layout.extract(A)
    if A.size == code.k:
        return A.ravel()
    raise InputError(f"data must be an {code.m}x{code.n} array or hold {code.k} symbols, got {A.shape}")


def cmd_encode(args):
    _, code = _code(args)
    data = _read_data(args.data, code)
    arr = code.encode_direct(data) if args.direct else code.encode_systematic(data)
    text = arrayio.format_array(arr, code.gf)
    _write(args.output, text)
    return EXIT_OK


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_decode(args):
    cfg, code = _code(args)
    A, gf = arrayio.read_array(args.array)
    if gf != code.gf or A.shape != (code.m, code.n):
        raise InputError(f"array must be {code.m}x{code.n} over {code.gf}")
    M = arrayio.read_mask(args.mask, A.shape) if args.mask else np.zeros(A.shape, dtype=bool)
    decoder, criterion = _decoder(args, cfg)
    try:
        if decoder == "errors":
            out = decode_errors_erasures(code, A, M, distrust_rows=args.distrust_rows)
        else:
            out = decode(code, A, M, decoder, criterion)
    except Uncorrectable as exc:
        print(f"uncorrectable: {exc}", file=sys.stderr)
        return EXIT_UNCORRECTABLE
    except MiscorrectionDetected as exc:
        print(f"miscorrection detected: {exc}", file=sys.stderr)
        if args.output not in (None, "-"):
            _write(args.output + ".candidate", arrayio.format_array(exc.candidate, code.gf))
        return EXIT_MISCORRECTION
    _write(args.output, arrayio.format_array(out, code.gf))
    return EXIT_OK


def cmd_simulate(args):
    cfg, code = _code(args)
    decoder, criterion = _decoder(args, cfg)
    r = monte_carlo_avg_erasures(code, decoder, args.trials, args.seed, args.method, criterion)
    _emit(args, {"decoder": decoder, "criterion": criterion or "default", "trials": r.trials,
                 "seed": args.seed, "mean": round(r.mean, 4), "stderr": round(r.stderr, 4)})
    return EXIT_OK


def _ordering(spec, code) -> Ordering:
    if spec in ("row-wise", "diagonal"):
        return make_ordering(spec, code.m, code.n)
    try:
        A = np.loadtxt(spec, dtype=np.int64, ndmin=2)
    except OSError as exc:
        raise InputError(f"cannot read ordering {spec}: {exc}") from None
    return Ordering(A, spec)


def cmd_burst(args):
    cfg, code = _code(args)
    decoder, criterion = _decoder(args, cfg)
    try:
        order = _ordering(args.ordering, code)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if order.shape != (code.m, code.n):
        raise InputError("ordering shape differs from the code")
    res = max_correctable_burst(code, order, decoder, criterion)
    print(f"ordering: {order.name}")
    print(f"decoder: {decoder}")
    print(f"max_burst: {res.length}")
    print("length first_failing_start")
    for L in range(1, min(res.length + 2, code.m * code.n) + 1):
        s = bursts_ok(code, order, L, decoder, criterion)
        print(f"{L} {'-' if s is None else s}")
    return EXIT_OK


def cmd_placement(args):
    _, code = _code(args)
    try:
        pm = balanced_parity_placement(code, check=not args.no_check)
    except ConstructionError as exc:
        print(f"placement failed: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write(args.output, arrayio.format_mask(pm.mask))
    print(f"balanced: {pm.is_balanced()}", file=sys.stderr)
    return EXIT_OK


def cmd_reproduce(args):
    try:
        checks = reproduce.run(args.examples)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    for c in checks:
        print(c.line())
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAILED


# ---- parser --------------------------------------------------------------------

def _rows(text):
    return tuple(int(x) for x in text.split(",") if x.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eii", description="Extended integrated interleaved array codes.")
    sub = p.add_subparsers(dest="command", required=True)

    def dec_opts(sp, extra=()):
        sp.add_argument("--decoder", choices=DECODER_NAMES + list(extra))
        sp.add_argument("--criterion", choices=CRITERIA,
                        help="when a row or vertical codeword counts as recoverable")

    sp = sub.add_parser("info", help="dimension, distance bound and capability of a code")
    sp.add_argument("config")
    sp.add_argument("--exhaustive", action="store_true", help="also compute the minimum distance exhaustively")
    sp.add_argument("--kstar", type=int, help="k* for the locality bound check")
    sp.add_argument("--max-pcm", type=int, default=1024, help="largest mn for which H is assembled")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("encode", help="encode a data file")
    sp.add_argument("config")
    sp.add_argument("data")
    sp.add_argument("-o", "--output")
    sp.add_argument("--direct", action="store_true", help="direct-sum encoding instead of systematic")
    sp.add_argument("--systematic", action="store_false", dest="direct")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="decode an array file with an erasure mask")
    sp.add_argument("config")
    sp.add_argument("array")
    sp.add_argument("mask", nargs="?")
    sp.add_argument("-o", "--output")
    dec_opts(sp, ("errors",))
    sp.add_argument("--distrust-rows", type=_rows, default=(), help="comma-separated rows treated as failed")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("simulate", help="average erasures corrected before the first failure")
    sp.add_argument("config")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--method", choices=("bisect", "sequential"), default="bisect")
    sp.add_argument("--json", action="store_true")
    dec_opts(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("burst", help="longest cyclic burst corrected under an ordering")
    sp.add_argument("config")
    sp.add_argument("--ordering", default="row-wise", help="row-wise, diagonal or an index array file")
    dec_opts(sp)
    sp.set_defaults(func=cmd_burst)

    sp = sub.add_parser("placement", help="balanced parity placement mask")
    sp.add_argument("config")
    sp.add_argument("-o", "--output")
    sp.add_argument("--no-check", action="store_true")
    sp.set_defaults(func=cmd_placement)

    sp = sub.add_parser("reproduce", help="check the reference worked examples")
    sp.add_argument("examples", nargs="*", help=f"any of {', '.join(reproduce.EXAMPLES)} or all")
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, arrayio.FormatError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
