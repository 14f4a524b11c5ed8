"""Command-line entry points: mine, audit, passive, active, serve."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import (
    ExperimentConfig,
    load_collection,
    resolve_minsup,
    run_active_experiment,
    run_measure_audit,
    run_passive_cv,
)
from .dataset import load_fimi
from .measures import MEASURE_NAMES
from .mining import generate_rules, mine_frequent, rules_to_csv
from .oracles import EmulatorSpec


def _add_threshold_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dataset", required=False, help="FIMI transaction file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--minsup", type=int, help="absolute minimum support count")
    g.add_argument("--minsup-rel", type=float, help="relative minimum support in (0,1]")
    p.add_argument("--minconf", type=float, default=None, help="minimum confidence (default 0.5)")
    p.add_argument("--max-head", type=int, default=None, help="max items in a rule head (default 2)")


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    _add_threshold_flags(p)
    p.add_argument("--seed", type=int, required=True, help="master seed (mandatory)")
    p.add_argument("--config", help="JSON file with ExperimentConfig fields; flags override")
    p.add_argument(
        "--emulator",
        choices=["random_linear", "lexicographic", "chi2"],
        default=None,
        help="feedback emulator kind (default random_linear)",
    )
    p.add_argument("--emu-seed", type=int, default=None, help="emulator seed (default: --seed)")
    p.add_argument(
        "--lex-order",
        default=None,
        help="comma-separated measure indices for the lexicographic emulator",
    )
    p.add_argument("--err", type=float, default=None, help="mistake probability per query")
    p.add_argument(
        "--measures",
        default=None,
        help=f"comma-separated measure subset of {','.join(MEASURE_NAMES)}",
    )
    p.add_argument("--training-fraction", type=float, default=None)
    p.add_argument("--out", default=None, help="output directory for CSV/JSON reports")


def _experiment_config(args: argparse.Namespace, mode: str, **extra) -> ExperimentConfig:
    base: dict = {}
    if args.config:
        base = json.loads(Path(args.config).read_text())
    emu = dict(base.pop("emulator", {}) or {})
    if args.emulator is not None:
        emu["kind"] = args.emulator
    if args.emu_seed is not None:
        emu["seed"] = args.emu_seed
    elif "seed" not in emu:
        emu["seed"] = args.seed
    if args.lex_order is not None:
        emu["order"] = [int(x) for x in args.lex_order.split(",")]
    overrides = {
        "dataset": args.dataset,
        "seed": args.seed,
        "minsup": args.minsup,
        "minsup_rel": args.minsup_rel,
        "minconf": args.minconf,
        "max_head": args.max_head,
        "err": args.err,
        "training_fraction": args.training_fraction,
        "output": args.out,
        "measures": tuple(args.measures.split(",")) if args.measures else None,
        **extra,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    base["mode"] = mode
    base["emulator"] = EmulatorSpec(**emu)
    return ExperimentConfig.from_dict(base)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefrank",
        description="Learn user-specific rankings of mined patterns from pairwise feedback.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine association rules to CSV")
    _add_threshold_flags(p_mine)
    p_mine.add_argument("--allow-empty-body", action="store_true")
    p_mine.add_argument("--out", required=True, help="output CSV path")
    p_mine.add_argument(
        "--measures-out",
        default=None,
        help="also write the per-rule measure matrix (raw + scaled) to this CSV",
    )

    p_audit = sub.add_parser("audit", help="per-measure correlation audit against an emulator")
    _add_experiment_flags(p_audit)

    p_passive = sub.add_parser("passive", help="passive-mode cross-validation")
    _add_experiment_flags(p_passive)
    p_passive.add_argument("--folds", type=int, default=None)
    p_passive.add_argument(
        "--eval-on-train", action="store_true", help="evaluate on the training split (sanity mode)"
    )

    p_active = sub.add_parser("active", help="active-mode experiment with per-iteration curves")
    _add_experiment_flags(p_active)
    p_active.add_argument("--T", type=int, default=None, help="query budget (default 20)")
    p_active.add_argument("--theta", type=int, default=None, help="sample size (default 1000)")
    p_active.add_argument("--repeats", type=int, default=None)
    p_active.add_argument("--strategy", choices=["sbg", "random"], default=None)
    p_active.add_argument("--swap-point", type=int, default=None)
    p_active.add_argument(
        "--swap-to",
        choices=["random_linear", "lexicographic", "chi2"],
        default=None,
        help="emulator kind after the swap point",
    )

    p_serve = sub.add_parser("serve", help="run the interactive session server")
    _add_threshold_flags(p_serve)
    p_serve.add_argument("--dataset-name", default="default")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static", default=None, help="directory of UI assets to serve at /")
    p_serve.add_argument("--snapshot-dir", default=None, help="write finished sessions here")

    return parser


def cmd_mine(args: argparse.Namespace) -> None:
    if not args.dataset:
        raise ValueError("--dataset is required")
    db = load_fimi(args.dataset)
    cfg = ExperimentConfig(seed=0, dataset=args.dataset, minsup=args.minsup, minsup_rel=args.minsup_rel)
    minsup = resolve_minsup(cfg, db)
    frequents = mine_frequent(db, minsup)
    rules = generate_rules(
        frequents,
        db,
        args.minconf if args.minconf is not None else 0.5,
        max_head=args.max_head if args.max_head is not None else 2,
        allow_empty_body=args.allow_empty_body,
    )
    rules_to_csv(rules, args.out)
    print(f"{len(rules)} rules -> {args.out}")
    if args.measures_out:
        if not rules:
            raise ValueError("no rules mined; nothing to score")
        from .learner import collection_from_rules, measure_matrix_to_csv

        measure_matrix_to_csv(collection_from_rules(db, rules), args.measures_out)
        print(f"measure matrix -> {args.measures_out}")


def cmd_serve(args: argparse.Namespace) -> None:
    import uvicorn

    from .session import DatasetBundle, create_app

    if not args.dataset:
        raise ValueError("--dataset is required")
    cfg = ExperimentConfig(
        seed=0,
        dataset=args.dataset,
        minsup=args.minsup,
        minsup_rel=args.minsup_rel,
        minconf=args.minconf if args.minconf is not None else 0.5,
        max_head=args.max_head if args.max_head is not None else 2,
    )
    _, collection = load_collection(cfg)
    app = create_app(
        {args.dataset_name: DatasetBundle(args.dataset_name, collection)},
        default_dataset=args.dataset_name,
        static_dir=args.static,
        snapshot_dir=args.snapshot_dir,
    )
    print(f"serving {len(collection)} patterns from {args.dataset} on {args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


def main(argv: list[str] | None = None) -> None:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "mine":
            cmd_mine(args)
        elif args.command == "audit":
            report = run_measure_audit(_experiment_config(args, "passive"))
            print(json.dumps(report.to_jsonable(), indent=2))
        elif args.command == "passive":
            config = _experiment_config(
                args,
                "passive",
                folds=args.folds,
                eval_on_train=args.eval_on_train or None,
            )
            report = run_passive_cv(config)
            print(json.dumps(report.aggregates, indent=2))
        elif args.command == "active":
            config = _experiment_config(
                args,
                "active",
                T=args.T,
                theta=args.theta,
                repeats=args.repeats,
                strategy=args.strategy,
                swap_point=args.swap_point,
            )
            if args.swap_to is not None:
                from dataclasses import replace

                config = replace(config, emulator=replace(config.emulator, swap_to=args.swap_to))
            report = run_active_experiment(config)
            print(json.dumps(report.aggregates, indent=2))
        elif args.command == "serve":
            cmd_serve(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
