"""Command-line driver: train / eval / sweep over the configured logic task."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .config import ConfigError, load_config
from .harness import (
    PROBABILITIES_CSV,
    REPORT_TXT,
    _render_report,
    _write_text,
    evaluate_only,
    run_experiment,
)


def _cmd_train(args) -> int:
    report = run_experiment(args.config, seed=args.seed, out_dir=args.out)
    print(f"trained {len(report.epochs)} epochs -> {args.out}")
    print(f"final-layer threshold accuracy: {report.threshold_accuracy:.3f}  "
          f"argmax accuracy: {report.argmax_accuracy:.3f}")
    return 0


def _cmd_eval(args) -> int:
    cfg = load_config(args.config)
    report = evaluate_only(cfg, args.weights)
    os.makedirs(args.out, exist_ok=True)
    lines = ["input_bits[-],label[-],phase[-],layer[-],z_p[-]"]
    for c in report.combos:
        bits = "".join(str(b) for b in c.input_bits)
        for li, z in enumerate(c.z_p):
            lines.append(f"{bits},{c.label},{c.phase},{li + 1},{z!r}")
    _write_text(os.path.join(args.out, PROBABILITIES_CSV), "\n".join(lines) + "\n")
    _write_text(os.path.join(args.out, REPORT_TXT), _render_report(report))
    print(f"evaluated {args.weights} -> {args.out}")
    print(f"final-layer threshold accuracy: {report.threshold_accuracy:.3f}  "
          f"argmax accuracy: {report.argmax_accuracy:.3f}")
    return 0


def _sweep_one(payload: tuple[str, int, str]) -> tuple[int, float, float, int, tuple[float, ...]]:
    config_path, seed, out_dir = payload
    report = run_experiment(config_path, seed=seed, out_dir=out_dir)
    separated = int(report.threshold_accuracy == 1.0)
    final_mse = report.epochs[-1].mse if report.epochs else ()
    return seed, report.threshold_accuracy, report.argmax_accuracy, separated, final_mse


def _cmd_sweep(args) -> int:
    load_config(args.config)  # fail fast on config errors before forking workers
    seeds = list(range(args.base_seed, args.base_seed + args.seeds))
    jobs = [(args.config, s, os.path.join(args.out, f"seed_{s}")) for s in seeds]
    workers = min(len(jobs), os.cpu_count() or 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_sweep_one, jobs))

    results.sort(key=lambda r: r[0])
    n_layers = len(results[0][4]) if results else 0
    header = "seed[-],threshold_accuracy[-],argmax_accuracy[-],separated[-]"
    header += "".join(f",final_mse_layer{li + 1}[-]" for li in range(n_layers))
    lines = [header]
    for seed, thr, arg, sep, mse in results:
        row = f"{seed},{thr!r},{arg!r},{sep}"
        row += "".join(f",{m!r}" for m in mse)
        lines.append(row)
    os.makedirs(args.out, exist_ok=True)
    _write_text(os.path.join(args.out, "sweep.csv"), "\n".join(lines) + "\n")

    n_sep = sum(r[3] for r in results)
    print(f"sweep complete: {n_sep}/{len(results)} seeds fully separated -> {args.out}/sweep.csv")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="csdpsim",
        description="Behavioral memristor spiking-network simulator with trace-based CSDP training.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train on the configured task and write reports")
    p_train.add_argument("--config", required=True, help="path to a key = value config file")
    p_train.add_argument("--seed", type=int, default=None, help="override init and shuffle seeds")
    p_train.add_argument("--out", required=True, help="output directory for CSV reports")
    p_train.set_defaults(func=_cmd_train)

    p_eval = sub.add_parser("eval", help="evaluate a stored weight snapshot")
    p_eval.add_argument("--config", required=True)
    p_eval.add_argument("--weights", required=True, help="weights.csv from a previous run")
    p_eval.add_argument("--out", required=True)
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = sub.add_parser("sweep", help="train across seeds and aggregate accuracy")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--seeds", type=int, required=True, help="number of seeds to run")
    p_sweep.add_argument("--base-seed", type=int, default=0)
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
