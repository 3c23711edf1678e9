#!/usr/bin/env python3
"""hypra command line: dataset generation, training, evaluation and the MCP server."""

import argparse
import sys
from pathlib import Path

from src.core.config import HarnessConfig, load_config
from src.core.errors import EngineError
from src.core.logging import configure_logging, get_logger
from src.worldgen.dataset import SPLITS

log = get_logger("cli")

COMMANDS = (
    "gen",
    "verify",
    "train-stage1",
    "train-stage2",
    "eval",
    "sweep",
    "export-vectors",
    "ablation",
    "serve",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypra", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", type=Path, default=None, help="flat key=value run config"
    )
    common.add_argument("--log-level", default=None, help="overrides run.log_level")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("gen", parents=[common], help="generate all dataset splits")
    sub.add_parser(
        "verify",
        parents=[common],
        help="re-execute every record of a generated dataset",
    )
    sub.add_parser(
        "train-stage1", parents=[common], help="train the scene-pair autoencoder"
    )
    p = sub.add_parser(
        "train-stage2",
        parents=[common],
        help="train the text encoder through the frozen decoder",
    )
    p.add_argument(
        "--no-stage1",
        action="store_true",
        help="use a randomly initialized decoder instead",
    )
    p = sub.add_parser("eval", parents=[common], help="score a split")
    p.add_argument("--split", required=True, choices=SPLITS)
    p.add_argument("--mode", default="learned", choices=("learned", "oracle"))
    p = sub.add_parser(
        "sweep", parents=[common], help="retrain across one hyperparameter axis"
    )
    p.add_argument("--axis", required=True, choices=("vector_length", "data_size"))
    p.add_argument("--values", type=int, nargs="+", default=None)
    p = sub.add_parser(
        "export-vectors",
        parents=[common],
        help="write validation action vectors as CSV",
    )
    p.add_argument("--out", type=Path, default=None)
    sub.add_parser(
        "ablation", parents=[common], help="compare two-stage and text-only training"
    )
    sub.add_parser("serve", parents=[common], help="run the MCP server")
    return parser


def dispatch(args: argparse.Namespace, cfg: HarnessConfig) -> None:
    from src import harness

    if args.command == "gen":
        splits = harness.run_gen(cfg)
        print(", ".join(f"{name}={len(records)}" for name, records in splits.items()))
    elif args.command == "verify":
        report = harness.run_verify(cfg)
        print(f"verified {report.checked} records")
    elif args.command == "train-stage1":
        m1 = harness.run_train_stage1(cfg)
        print(f"stage 1 saved to {cfg.run.model_dir} (L={m1.action_dim})")
    elif args.command == "train-stage2":
        harness.run_train_stage2(cfg, no_stage1=args.no_stage1)
        print(f"stage 2 saved to {cfg.run.model_dir}")
    elif args.command == "eval":
        report = harness.run_eval(cfg, args.split, args.mode)
        sys.stdout.write(report.render_table())
    elif args.command == "sweep":
        print(harness.run_sweep(cfg, args.axis, args.values))
    elif args.command == "export-vectors":
        print(harness.run_export_vectors(cfg, args.out))
    elif args.command == "ablation":
        from src.harness.ablation import render_rows

        sys.stdout.write(render_rows(harness.run_ablation(cfg)))
    elif args.command == "serve":
        from src.core.server import HypraServer

        server = HypraServer(cfg)
        server.load()
        server.run()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        configure_logging(args.log_level or cfg.run.log_level)
        log.info(f"hypra {args.command} (config {cfg.fingerprint()[:12]})")
        dispatch(args, cfg)
    except EngineError as e:
        print(f"error[{e.code}]: {e.message}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
