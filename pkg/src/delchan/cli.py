"""Command-line front end.

Subcommands: construct, encode, decode, simulate, analyze, sweep.
Exit codes: 0 = success, 1 = verification failure, 2 = configuration error.
"""

from __future__ import annotations

import argparse
import sys
import time
from math import log2
from pathlib import Path

from .channels import ChannelModel
from .harness import (
    DESK_M1,
    DESK_M2,
    DESK_M_B,
    DESK_T,
    ExperimentConfig,
    analyze_csv,
    load_config,
    report_json,
    run_experiment,
    sweep_csv,
)
from .inner import InnerParams, construct_inner
from .outer import OuterSpec, construct_outer
from .scheme import SchemeParams, assemble_scheme, load_scheme, save_scheme
from .strings import SProfile

_CONSTRUCT_DEFAULTS = {
    "channel": "bdc",
    "param": "0.3",
    "M1": str(DESK_M1),
    "M2": str(DESK_M2),
    "M_B": str(DESK_M_B),
    "T": str(DESK_T),
    "m": "25",
    "r1": "13",
    "r2": "6",
    "d": "2",
    "q": "4",
    "n": "32",
    "k": "4",
    "dout": "0.125",
    "seed": "2024",
}


def _read_kv(path: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            key, value = line.split("=", 1)
            fields[key.strip()] = value.strip()
    return fields


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_construct(args: argparse.Namespace) -> int:
    fields = dict(_CONSTRUCT_DEFAULTS)
    if args.config:
        fields.update(_read_kv(args.config))
    seed = args.seed if args.seed is not None else int(fields["seed"])
    params = SchemeParams(
        channel=ChannelModel(fields["channel"], float(fields["param"])),
        M1=float(fields["M1"]),
        M2=float(fields["M2"]),
        M_B=float(fields["M_B"]),
        T=int(fields["T"]),
        inner=InnerParams(
            SProfile(int(fields["m"]), int(fields["r1"]), int(fields["r2"])),
            int(fields["d"]),
        ),
        outer=OuterSpec(
            int(fields["q"]), int(fields["n"]), int(fields["k"]), float(fields["dout"])
        ),
    )
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    inner_cb = construct_inner(params.inner, force=args.force)
    if len(inner_cb) < params.outer.q:
        print(
            f"error: inner codebook has {len(inner_cb)} codewords,"
            f" need {params.outer.q}",
            file=sys.stderr,
        )
        return 1
    outer = construct_outer(params.outer, seed)
    scheme = assemble_scheme(params, inner_cb.truncate(params.outer.q), outer)
    inner_cb.save(out_dir / "codebook.txt")
    outer.save(out_dir / "outercode.txt")
    save_scheme(scheme, out_dir / "scheme.txt", "codebook.txt", "outercode.txt", seed)
    print(f"|C| = {len(inner_cb)}")
    print(f"log2|C|/m = {log2(len(inner_cb)) / params.inner.m:.6f}")
    print(f"R_out = {params.outer.k / params.outer.n:.6f}")
    return 0


def _cmd_encode(args: argparse.Namespace) -> int:
    scheme = load_scheme(args.config)
    bits = scheme.encode(int(args.message))
    _write_out(bits + "\n", args.out)
    return 0


def _cmd_decode(args: argparse.Namespace) -> int:
    received = args.bits if args.bits is not None else sys.stdin.read().strip()
    if received and set(received) - {"0", "1"}:
        print("error: received string must be binary", file=sys.stderr)
        return 2
    scheme = load_scheme(args.config)
    _write_out(f"{scheme.decode(received)}\n", args.out)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.config:
        config = load_config(args.config)
    else:
        config = ExperimentConfig(mode="end_to_end", trials=100, master_seed=0)
    if args.trials is not None or args.seed is not None:
        config = ExperimentConfig(
            mode=config.mode,
            trials=args.trials if args.trials is not None else config.trials,
            master_seed=args.seed if args.seed is not None else config.master_seed,
            scheme_path=config.scheme_path,
            desk=config.desk,
            M_B=config.M_B,
        )
    start = time.perf_counter()
    report = run_experiment(config)
    elapsed = time.perf_counter() - start
    _write_out(report_json(report), args.out)
    print(f"elapsed: {elapsed:.2f} s", file=sys.stderr)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    csv, failures = analyze_csv()
    _write_out(csv, args.out)
    if failures:
        print(f"{failures} parameter set(s) failed verification", file=sys.stderr)
        return 1
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    _write_out(sweep_csv(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delchan",
        description="Concatenated coding schemes for bit-deletion and"
        " Poisson-repeat channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build and serialize a scheme")
    p.add_argument("--config", help="key=value parameter file")
    p.add_argument("--out", help="output directory (default: current)")
    p.add_argument("--seed", type=int)
    p.add_argument("--force", action="store_true",
                   help="override the candidate-set size guard")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("encode", help="encode a message with a built scheme")
    p.add_argument("--config", required=True, help="scheme descriptor path")
    p.add_argument("--out")
    p.add_argument("message", help="message index")
    p.set_defaults(fn=_cmd_encode)

    p = sub.add_parser("decode", help="decode a received bit string")
    p.add_argument("--config", required=True, help="scheme descriptor path")
    p.add_argument("--out")
    p.add_argument("bits", nargs="?", help="received bits (default: stdin)")
    p.set_defaults(fn=_cmd_decode)

    p = sub.add_parser("simulate", help="run a Monte Carlo experiment")
    p.add_argument("--config", help="experiment config file")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("analyze", help="verify all reference parameter sets")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("sweep", help="emit rate-vs-p curves as CSV")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(fn=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
