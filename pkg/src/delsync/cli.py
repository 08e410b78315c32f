"""Command-line front end: single runs, grid sweeps, and bound tables."""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .analysis import module_coefficients, redundancy_coefficient
from .core import EC_EMPIRICAL, EC_THEORETICAL, InvalidConfig, ProtocolParams
from .harness import parse_config, run_single, sweep, write_csv


def _cmd_run(args) -> int:
    try:
        params = ProtocolParams(
            n=args.n,
            beta=args.beta,
            s=args.s,
            c=args.c,
            w=args.w,
            a=tuple(float(v) for v in args.a.split(",")),
            seed=args.seed,
            ec_policy=args.ec_policy,
        )
    except InvalidConfig as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    _, metrics, transcript = run_single(params)
    if args.transcript:
        with open(args.transcript, "w") as fh:
            fh.write(transcript.to_jsonl())
    if args.json:
        print(metrics.to_json())
    else:
        for key, val in metrics.to_json_obj().items():
            print(f"{key}: {val}")
    return 0 if metrics.synchronized else 1


def _cmd_sweep(args) -> int:
    with open(args.config) as fh:
        config = parse_config(fh.read())
    rows = sweep(config, csv_path=args.csv)
    if not (args.csv or config.csv_path):
        write_csv(rows, "sweep.csv")
        print("wrote sweep.csv", file=sys.stderr)
    bad = sum(1 for r in rows if not r["synchronized"])
    if bad:
        print(f"{bad} of {len(rows)} runs failed to synchronize", file=sys.stderr)
    return 0 if bad == 0 else 1


def _cmd_bounds(args) -> int:
    s_grid = [float(v) for v in args.s_grid.split(",")]
    w_grid = [int(v) for v in args.w_grid.split(",")]
    rows = []
    for w in w_grid:
        for s in s_grid:
            c1, c2, c3 = module_coefficients(s, w, args.a, args.c)
            rows.append(
                {
                    "s": s,
                    "w": w,
                    "a": args.a,
                    "c": args.c,
                    "r": redundancy_coefficient(s, w, args.a, args.c),
                    "coef_I": c1,
                    "coef_II": c2,
                    "coef_III": c3,
                }
            )
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    writer = csv.DictWriter(out, fieldnames=["s", "w", "a", "c", "r", "coef_I", "coef_II", "coef_III"])
    writer.writeheader()
    writer.writerows(rows)
    if args.csv:
        out.close()
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="delsync",
        description="Simulate interactive synchronization from deletions and its cost bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one synchronization session")
    p_run.add_argument("--n", type=int, default=50_000)
    p_run.add_argument("--beta", type=float, required=True)
    p_run.add_argument("--s", type=float, default=2.0)
    p_run.add_argument("--w", type=int, default=2)
    p_run.add_argument("--c", type=float, default=3.0)
    p_run.add_argument("--a", default="1,3.5", help="comma-separated code efficiencies a_1..a_w")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument(
        "--ec-policy", choices=[EC_EMPIRICAL, EC_THEORETICAL], default=EC_EMPIRICAL
    )
    p_run.add_argument("--transcript", help="write the transcript as JSON lines here")
    p_run.add_argument("--json", action="store_true", help="print metrics as JSON")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter grid from a config file")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--csv", help="output CSV path (overrides the config)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_bounds = sub.add_parser("bounds", help="emit redundancy-coefficient tables")
    p_bounds.add_argument("--s-grid", default="1,1.5,2,2.5,3,4,5")
    p_bounds.add_argument("--w-grid", default="1,2,3")
    p_bounds.add_argument("--a", type=float, default=1.0)
    p_bounds.add_argument("--c", type=float, default=3.0)
    p_bounds.add_argument("--csv")
    p_bounds.set_defaults(func=_cmd_bounds)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
