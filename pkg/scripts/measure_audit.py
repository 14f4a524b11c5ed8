"""How far does any single measure get, versus the learned aggregate?

Mines rules from synthetic transactions, scores each individual measure's
ranking against an emulated user (the virtual best measure is the per-run
maximum), then runs passive cross-validation with the learned weighting on
the same collection for comparison.

Usage:
    python3 scripts/measure_audit.py --seed 3
    python3 scripts/measure_audit.py --dataset path/to/transactions.dat --minsup-rel 0.05
"""
import argparse
import tempfile
from pathlib import Path

from prefrank import (
    EmulatorSpec,
    ExperimentConfig,
    dump_fimi,
    run_measure_audit,
    run_passive_cv,
    synthetic_db,
)
from prefrank.bench import load_collection


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--dataset", default=None, help="FIMI file (default: synthetic)")
    ap.add_argument("--minsup", type=int, default=None)
    ap.add_argument("--minsup-rel", type=float, default=None)
    ap.add_argument("--emulator", default="random_linear",
                    choices=["random_linear", "lexicographic", "chi2"])
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    if args.dataset is None:
        tmp = Path(tempfile.mkdtemp()) / "synthetic.dat"
        dump_fimi(synthetic_db(seed=7), tmp)
        args.dataset = str(tmp)
        if args.minsup is None and args.minsup_rel is None:
            args.minsup = 100

    cfg = ExperimentConfig(
        seed=args.seed,
        dataset=args.dataset,
        mode="passive",
        minsup=args.minsup,
        minsup_rel=args.minsup_rel,
        emulator=EmulatorSpec(kind=args.emulator, seed=args.seed),
        output=args.out,
    )
    db, collection = load_collection(cfg)
    print(f"{len(collection)} rules from {args.dataset}")

    audit = run_measure_audit(cfg, db=db, collection=collection)
    for row in sorted(audit.rows, key=lambda r: -r["rho"]):
        print(f"  {row['measure']:10s} rho={row['rho']:+.4f}")
    print(f"  virtual best measure: {audit.aggregates['vbm']:+.4f}")

    learned = run_passive_cv(cfg, db=db, collection=collection)
    print(f"  learned aggregate (passive CV): {learned.aggregates['rho']:+.4f}")


if __name__ == "__main__":
    main()
