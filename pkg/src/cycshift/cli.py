"""Command-line interface.

Subcommands: ``gen`` (write a test signal), ``retrieve`` (estimate the
shift between two files), ``bench`` (Monte-Carlo success-rate sweep),
``check-sensing`` (diagnose a sensing set) and ``selftest`` (built-in
consistency suites).

Exit codes: 0 success, 1 usage or parse failure, 2 identifiability
failure (no usable bin, ambiguous sensing).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time

import numpy as np

from . import __version__, bench, compressive, retrieval
from .errors import IdentifiabilityError
from .fileio import load_measurement, load_signal, save_signal, sniff_kind
from .selftest import run_selftest

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNIDENTIFIABLE = 2

SIGNAL_KINDS = ("gaussian", "uniform", "impulse-train")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; remap to our exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_sensing(text: str, n: int) -> compressive.SensingSet:
    try:
        indices = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"could not parse sensing indices from {text!r}") from None
    return compressive.SensingSet(n, indices)


def _generate(kind: str, n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    if kind == "gaussian":
        return rng.standard_normal(n)
    if kind == "uniform":
        return rng.uniform(-1.0, 1.0, n)
    if kind == "impulse-train":
        out = np.zeros(n)
        out[::3] = 1.0  # comb with period 3: [1,0,0,1,0,0,...]
        return out
    raise ValueError(f"unknown kind {kind!r}")


def _cmd_gen(args) -> int:
    values = _generate(args.kind, args.n, args.seed)
    save_signal(args.out, values)
    return EXIT_OK


def _load_pair(args):
    """Load x/y inputs, transparently accepting measurement files."""
    x_kind = sniff_kind(args.x)
    y_kind = sniff_kind(args.y)
    if x_kind != y_kind:
        raise ValueError("x and y files must both be signals or both be measurements")
    if x_kind == "measurement":
        return None, None, load_measurement(args.y), load_measurement(args.x)
    x = load_signal(args.x)
    y = load_signal(args.y)
    if x.size != y.size:
        raise ValueError(f"length mismatch: {args.x} has {x.size}, {args.y} has {y.size}")
    return x, y, None, None


def _cmd_retrieve(args) -> int:
    x, y, z, v = _load_pair(args)
    method = args.method
    compressive_method = method in bench.COMPRESSIVE_METHODS
    if z is not None and not compressive_method:
        raise ValueError(f"measurement files require a compressive method, not {method!r}")

    if compressive_method and z is None:
        if args.sensing is None:
            raise ValueError("compressive methods need --sensing (e.g. --sensing 1,3)")
        sensing = _parse_sensing(args.sensing, x.size)
        v = compressive.measure(x, sensing)
        z = compressive.measure(y, sensing)

    t0 = time.perf_counter()
    if method == "crosscorr":
        est = retrieval.shift_by_crosscorr(x, y)
    elif method == "ratio":
        est = retrieval.shift_by_ratio(x, y)
    elif method == "single_bin":
        est = retrieval.shift_single_bin(x, y, args.bin)
    elif method == "compressive_argmax":
        est = compressive.shift_by_compressive_argmax(z, v)
    else:
        est = compressive.shift_by_compressive_ratio(z, v)
    elapsed_us = int(round((time.perf_counter() - t0) * 1e6))

    print(json.dumps({
        "method": est.method,
        "n": est.n,
        "shift": est.shift,
        "score": est.score,
        "flags": list(est.flags),
        "elapsed_microseconds": elapsed_us,
    }))
    return EXIT_UNIDENTIFIABLE if "ambiguous" in est.flags else EXIT_OK


def _cmd_bench(args) -> int:
    if args.config:
        config = bench.config_from_file(args.config)
    else:
        if args.n is None or args.trials is None or args.snr_db is None:
            raise ValueError("bench needs --config, or all of --n, --trials and --snr-db")
        config = bench.ExperimentConfig(
            n=args.n, trials=args.trials, seed=0, snr_db_grid=(float("inf"),)
        )
    overrides = {}
    if args.n is not None:
        overrides["n"] = args.n
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.snr_db is not None:
        overrides["snr_db_grid"] = tuple(
            bench.parse_snr(tok) for tok in args.snr_db.split(",") if tok.strip()
        )
    if args.methods is not None:
        overrides["methods"] = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if args.sensing is not None:
        overrides["sensing"] = tuple(int(k) for k in args.sensing.split(",") if k.strip())
    if args.out is not None:
        overrides["output"] = args.out
    if args.format is not None:
        overrides["fmt"] = args.format
    if args.no_timing:
        overrides["measure_time"] = False
    if overrides:
        config = dataclasses.replace(config, **overrides)

    rows = bench.run_bench(config)
    text = bench.rows_to_json(rows) if config.fmt == "json" else bench.rows_to_csv(rows)
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_check_sensing(args) -> int:
    x = load_signal(args.x)
    sensing = _parse_sensing(args.sensing, x.size)
    report = compressive.check_sensing_conditions(x, sensing)
    print(json.dumps({
        "n": report.n,
        "indices": list(report.indices),
        "qualifying_bins": list(report.qualifying_bins),
        "guarantee_holds": report.guarantee_holds,
        "frame_alpha": report.frame_alpha,
        "frame_ok": report.frame_ok,
        "ambiguous": report.ambiguous,
        "duplicate_shift_groups": [list(g) for g in report.duplicate_shift_groups],
    }))
    return EXIT_OK if report.guarantee_holds and not report.ambiguous else EXIT_UNIDENTIFIABLE


def _cmd_selftest(args) -> int:
    results = run_selftest(corrupt_dft_sign=args.corrupt_dft_sign)
    for name, ok, detail in results:
        print(f"{name}: {'PASS' if ok else 'FAIL'} ({detail})")
    failed = [name for name, ok, _ in results if not ok]
    print(f"selftest: {len(results) - len(failed)}/{len(results)} groups passed")
    return EXIT_OK if not failed else EXIT_UNIDENTIFIABLE


_SEED_DEFAULT = 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cycshift", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write a deterministic test signal file",
                           parents=[], add_help=True)
    p_gen.add_argument("--n", type=int, required=True, help="signal length")
    p_gen.add_argument("--seed", type=int, default=_SEED_DEFAULT, help="rng seed")
    p_gen.add_argument("--kind", choices=SIGNAL_KINDS, default="gaussian")
    p_gen.add_argument("--out", required=True, help="output path")
    p_gen.set_defaults(func=_cmd_gen)

    p_ret = sub.add_parser("retrieve", help="estimate the cyclic shift between two files")
    p_ret.add_argument("x", help="reference file (signal, or measurement with # K= header)")
    p_ret.add_argument("y", help="shifted file (same kind as x)")
    p_ret.add_argument("--method", choices=bench.METHODS, default="crosscorr")
    p_ret.add_argument("--bin", type=int, default=None,
                       help="spectral bin for single_bin (must be coprime with n)")
    p_ret.add_argument("--sensing", default=None,
                       help="comma-separated frequency indices for compressive methods")
    p_ret.set_defaults(func=_cmd_retrieve)

    p_bench = sub.add_parser("bench", help="Monte-Carlo success-rate sweep to CSV/JSON")
    p_bench.add_argument("--config", default=None, help="JSON or key=value config file")
    p_bench.add_argument("--n", type=int, default=None)
    p_bench.add_argument("--trials", type=int, default=None)
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--snr-db", default=None,
                         help="comma list of SNRs in dB; 'inf' for noiseless")
    p_bench.add_argument("--methods", default=None, help="comma list of methods")
    p_bench.add_argument("--sensing", default=None, help="comma list of frequency indices")
    p_bench.add_argument("--out", default=None, help="output path (default stdout)")
    p_bench.add_argument("--format", choices=("csv", "json"), default=None)
    p_bench.add_argument("--no-timing", action="store_true",
                         help="zero the elapsed-time column for byte-reproducible output")
    p_bench.set_defaults(func=_cmd_bench)

    p_chk = sub.add_parser("check-sensing", help="diagnose a sensing set for a signal")
    p_chk.add_argument("x", help="signal file")
    p_chk.add_argument("--sensing", required=True, help="comma-separated frequency indices")
    p_chk.set_defaults(func=_cmd_check_sensing)

    p_self = sub.add_parser("selftest", help="run the built-in consistency suites")
    p_self.add_argument("--corrupt-dft-sign", action="store_true", help=argparse.SUPPRESS)
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IdentifiabilityError as exc:
        print(json.dumps({"error": str(exc)}))
        return EXIT_UNIDENTIFIABLE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"cycshift: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
