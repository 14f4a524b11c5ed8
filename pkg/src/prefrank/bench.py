"""Experiment harness: measure audits, passive cross-validation, active curves.

Everything here is deterministic given (config, seed): all randomness flows
from spawned child seeds, one per fold/repeat, and oracle randomness is
isolated from learner randomness. Reports aggregate by arithmetic mean and are
written as CSV (per-iteration curves) plus JSON (summary).
"""
from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .ahp import WeightVector
from .dataset import TransactionDB, load_fimi
from .learner import (
    LearnerConfig,
    PatternCollection,
    collection_from_rules,
    run_active,
    run_passive,
)
from .measures import MEASURE_NAMES
from .mining import generate_rules, mine_frequent
from .oracles import EmulatorSpec
from .ranking import RankAssignment, rank_by, recall_at_percent, spearman


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int
    dataset: str | None = None  # FIMI file path
    mode: str = "active"  # {"passive", "active"}
    minsup: int | None = None  # absolute; exactly one of minsup/minsup_rel
    minsup_rel: float | None = None  # relative, converted by ceiling
    minconf: float = 0.5
    max_head: int = 2
    measures: tuple[str, ...] = MEASURE_NAMES
    emulator: EmulatorSpec = field(default_factory=EmulatorSpec)
    folds: int = 5
    training_fraction: float = 0.2
    theta: int = 1000
    T: int = 20
    repeats: int = 10
    err: float = 0.0
    swap_point: int | None = None
    strategy: str = "sbg"
    eval_on_train: bool = False
    output: str | None = None

    def __post_init__(self):
        if self.mode not in ("passive", "active"):
            raise ValueError("mode must be 'passive' or 'active'")
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if not 0.0 < self.training_fraction < 1.0:
            raise ValueError("training_fraction must be in (0, 1)")
        unknown = set(self.measures) - set(MEASURE_NAMES)
        if unknown:
            raise ValueError(f"unknown measures: {sorted(unknown)}")
        object.__setattr__(self, "measures", tuple(self.measures))
        # top-level robustness knobs fold into the emulator spec
        emu = self.emulator
        if self.err and not emu.err:
            emu = replace(emu, err=self.err)
        if self.swap_point is not None and emu.swap_point is None:
            emu = replace(emu, swap_point=self.swap_point)
        object.__setattr__(self, "emulator", emu)

    def to_jsonable(self) -> dict:
        d = asdict(self)
        d["emulator"] = self.emulator.to_jsonable()
        d["measures"] = list(self.measures)
        return d

    @staticmethod
    def from_dict(d: dict) -> "ExperimentConfig":
        d = dict(d)
        if isinstance(d.get("emulator"), dict):
            d["emulator"] = EmulatorSpec(**d["emulator"])
        if "measures" in d and d["measures"] is not None:
            d["measures"] = tuple(d["measures"])
        return ExperimentConfig(**d)

    @staticmethod
    def from_json_file(path: str | Path) -> "ExperimentConfig":
        return ExperimentConfig.from_dict(json.loads(Path(path).read_text()))


@dataclass
class MetricsReport:
    config: ExperimentConfig
    rows: list[dict]  # one per fold/repeat
    aggregates: dict
    curves: list[dict] | None = None  # active mode: one row per iteration

    def to_jsonable(self) -> dict:
        return {
            "config": self.config.to_jsonable(),
            "rows": self.rows,
            "aggregates": self.aggregates,
            "curves": self.curves,
        }


def resolve_minsup(config: ExperimentConfig, db: TransactionDB) -> int:
    if (config.minsup is None) == (config.minsup_rel is None):
        raise ValueError("exactly one of minsup / minsup_rel is required")
    if config.minsup is not None:
        return config.minsup
    if not 0.0 < config.minsup_rel <= 1.0:
        raise ValueError("minsup_rel must be in (0, 1]")
    return max(1, math.ceil(config.minsup_rel * db.n))


def load_collection(config: ExperimentConfig) -> tuple[TransactionDB, PatternCollection]:
    """Load the FIMI dataset, mine it, and score the rules under the
    configured measure subset."""
    if config.dataset is None:
        raise ValueError("config.dataset is required")
    db = load_fimi(config.dataset)
    minsup = resolve_minsup(config, db)
    frequents = mine_frequent(db, minsup)
    rules = generate_rules(frequents, db, config.minconf, max_head=config.max_head)
    if not rules:
        raise ValueError(
            "no rules mined under the configured thresholds; lower minsup/minconf"
        )
    collection = collection_from_rules(db, rules)
    if config.measures != MEASURE_NAMES:
        cols = [MEASURE_NAMES.index(name) for name in config.measures]
        collection = PatternCollection(
            collection.ids,
            collection.raw[:, cols],
            config.measures,
            collection.rules,
        )
    return db, collection


def _child_seeds(seed: int, n: int) -> list[int]:
    return [int(c.generate_state(1)[0]) for c in np.random.SeedSequence(seed).spawn(n)]


def _target_assignment(oracle, collection: PatternCollection, ids: Sequence[int]) -> RankAssignment:
    return oracle.rank(collection.records(ids)).as_rank_assignment()


def _learned_assignment(
    collection: PatternCollection, weights: WeightVector, ids: Sequence[int]
) -> RankAssignment:
    g = collection.effective("minmax")[[collection.row(p) for p in ids]] @ weights.values
    return rank_by({p: float(v) for p, v in zip(ids, g)})


def _eval_metrics(
    collection: PatternCollection,
    weights: WeightVector,
    target: RankAssignment,
    ids: Sequence[int],
) -> dict:
    learned = _learned_assignment(collection, weights, ids)
    return {
        "rho": spearman(learned, target),
        "r_at_10pct": recall_at_percent(learned, target, 10.0),
        "r_at_1pct": recall_at_percent(learned, target, 1.0),
    }


def run_measure_audit(
    config: ExperimentConfig,
    db: TransactionDB | None = None,
    collection: PatternCollection | None = None,
) -> MetricsReport:
    """Spearman correlation of each single measure's ranking against the
    emulated user, over all mined rules; the virtual best measure is the max."""
    if collection is None:
        db, collection = load_collection(config)
    emu = config.emulator.build(collection.m, db)
    target = _target_assignment(emu.target, collection, collection.ids)
    rows = []
    for j, name in enumerate(collection.measure_names):
        learned = rank_by(
            {p: float(collection.raw[collection.row(p), j]) for p in collection.ids}
        )
        rows.append({"measure": name, "rho": spearman(learned, target)})
    vbm = max(r["rho"] for r in rows)
    report = MetricsReport(
        config,
        rows,
        {"vbm": vbm, "n_rules": len(collection), "emulator": config.emulator.kind},
    )
    _write_report(report, curves_name=None)
    return report


def run_passive_cv(
    config: ExperimentConfig,
    db: TransactionDB | None = None,
    collection: PatternCollection | None = None,
) -> MetricsReport:
    """Repeated random-subsample validation: each fold trains on a fresh
    training_fraction share ranked wholesale by the emulator, evaluates on the
    rest."""
    if collection is None:
        db, collection = load_collection(config)
    n = len(collection)
    train_n = round(config.training_fraction * n)
    if train_n < 2 or (not config.eval_on_train and n - train_n < 2):
        raise ValueError(f"too few rules ({n}) for a {config.training_fraction} split")
    emu = config.emulator.build(collection.m, db)
    ids_arr = np.asarray(collection.ids)
    rows = []
    for fold, fold_seed in enumerate(_child_seeds(config.seed, config.folds)):
        rng = np.random.default_rng(fold_seed)
        train_ids = ids_arr[rng.choice(n, size=train_n, replace=False)]
        train_records = collection.records([int(p) for p in train_ids])
        ranking = emu.oracle.rank(train_records)
        t0 = time.perf_counter()
        result = run_passive([ranking], collection)
        learn_seconds = time.perf_counter() - t0
        if config.eval_on_train:
            eval_ids = [int(p) for p in train_ids]
        else:
            train_set = set(int(p) for p in train_ids)
            eval_ids = [p for p in collection.ids if p not in train_set]
        target = _target_assignment(emu.target, collection, eval_ids)
        row = {"fold": fold, "learn_seconds": learn_seconds}
        row.update(_eval_metrics(collection, result.weights, target, eval_ids))
        rows.append(row)
    aggregates = {
        k: float(np.mean([r[k] for r in rows]))
        for k in ("rho", "r_at_10pct", "r_at_1pct", "learn_seconds")
    }
    report = MetricsReport(config, rows, aggregates)
    _write_report(report, curves_name=None)
    return report


def run_active_experiment(
    config: ExperimentConfig,
    db: TransactionDB | None = None,
    collection: PatternCollection | None = None,
) -> MetricsReport:
    """Active sessions against the configured emulator, repeated over child
    seeds; metrics after every iteration on the held-out share, latency from
    the learner side only."""
    if collection is None:
        db, collection = load_collection(config)
    n = len(collection)
    pool_n = round(config.training_fraction * n)
    if pool_n < 2 or n - pool_n < 2:
        raise ValueError(f"too few patterns ({n}) for a {config.training_fraction} split")
    ids_arr = np.asarray(collection.ids)
    learner_seeds = _child_seeds(config.seed, config.repeats)
    emu_seeds = _child_seeds(config.emulator.seed, config.repeats)
    rows = []
    per_iter: list[list[dict]] = [[] for _ in range(config.T)]
    for rep in range(config.repeats):
        rng = np.random.default_rng(learner_seeds[rep])
        pool = rng.choice(n, size=pool_n, replace=False)
        pool_ids = [int(p) for p in ids_arr[pool]]
        pool_set = set(pool_ids)
        eval_ids = [p for p in collection.ids if p not in pool_set]
        emu = replace(config.emulator, seed=emu_seeds[rep]).build(collection.m, db)
        lconf = LearnerConfig(
            T=config.T, seed=learner_seeds[rep], theta=config.theta
        )
        result = run_active(
            emu.oracle, collection, lconf, strategy=config.strategy, pool_ids=pool_ids
        )
        target = _target_assignment(emu.target, collection, eval_ids)
        first_target = (
            _target_assignment(emu.first_target, collection, eval_ids)
            if emu.first_target is not None
            else None
        )
        for tr in result.trace:
            w = WeightVector(tr.weights)
            entry = {"repeat": rep, "t": tr.t, "latency_seconds": tr.learn_seconds}
            entry.update(_eval_metrics(collection, w, target, eval_ids))
            if first_target is not None:
                entry["rho_first_target"] = spearman(
                    _learned_assignment(collection, w, eval_ids), first_target
                )
            per_iter[tr.t - 1].append(entry)
        final = per_iter[result.trace[-1].t - 1][-1] if result.trace else {}
        rows.append(
            {
                "repeat": rep,
                "aborted": result.aborted,
                "iterations": len(result.trace),
                "rho": final.get("rho"),
                "r_at_10pct": final.get("r_at_10pct"),
                "r_at_1pct": final.get("r_at_1pct"),
                "mean_latency_seconds": float(
                    np.mean([tr.learn_seconds for tr in result.trace])
                )
                if result.trace
                else None,
            }
        )
    curves = []
    for t, entries in enumerate(per_iter, start=1):
        if not entries:
            continue
        curve = {"t": t}
        for key in ("rho", "r_at_10pct", "r_at_1pct", "latency_seconds"):
            curve[key] = float(np.mean([e[key] for e in entries]))
        if any("rho_first_target" in e for e in entries):
            curve["rho_first_target"] = float(
                np.mean([e["rho_first_target"] for e in entries])
            )
        curves.append(curve)
    aggregates = {
        "rho": float(np.mean([r["rho"] for r in rows])),
        "r_at_10pct": float(np.mean([r["r_at_10pct"] for r in rows])),
        "r_at_1pct": float(np.mean([r["r_at_1pct"] for r in rows])),
        "mean_latency_seconds": float(np.mean([r["mean_latency_seconds"] for r in rows])),
        "max_latency_seconds": float(
            np.max([e["latency_seconds"] for col in per_iter for e in col])
        ),
    }
    report = MetricsReport(config, rows, aggregates, curves)
    _write_report(report, curves_name="curves.csv")
    return report


def write_weight_trace_csv(result, measure_names: Sequence[str], path: str | Path) -> None:
    """One row per iteration: t, weights, query pair, response order."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(
            ["t", *measure_names, "query_hi", "query_lo", "preferred", "rejected"]
        )
        for tr in result.trace:
            w.writerow([tr.t, *tr.weights.tolist(), *tr.query, *tr.response])


def _write_report(report: MetricsReport, curves_name: str | None) -> None:
    out = report.config.output
    if out is None:
        return
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "summary.json").write_text(json.dumps(report.to_jsonable(), indent=2))
    if report.rows:
        with open(outdir / "rows.csv", "w", newline="") as f:
            w = csv.DictWriter(f, fieldnames=list(report.rows[0].keys()))
            w.writeheader()
            w.writerows(report.rows)
    if curves_name and report.curves:
        fieldnames: list[str] = []
        for c in report.curves:
            for k in c:
                if k not in fieldnames:
                    fieldnames.append(k)
        with open(outdir / curves_name, "w", newline="") as f:
            w = csv.DictWriter(f, fieldnames=fieldnames)
            w.writeheader()
            w.writerows(report.curves)
