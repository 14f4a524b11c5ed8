"""Frequent itemset mining (Apriori over vertical tid-sets) and rule generation.

Datasets of interest here are desk-scale (thousands of transactions, tens of
items), so exactness and determinism are the priorities, not throughput: the
miner's contract is output equality with brute-force enumeration.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Mapping

from .dataset import Itemset, TransactionDB


@dataclass(frozen=True)
class AssociationRule:
    body: Itemset  # antecedent X; empty only when the generator allows it
    head: Itemset  # consequent Y; never empty, disjoint from body

    def __post_init__(self):
        if not self.head:
            raise ValueError("rule head must be non-empty")
        if self.body & self.head:
            raise ValueError("rule body and head must be disjoint")

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (tuple(sorted(self.body)), tuple(sorted(self.head)))

    def __str__(self) -> str:
        lhs = ",".join(map(str, sorted(self.body))) or "{}"
        rhs = ",".join(map(str, sorted(self.head)))
        return f"{lhs} -> {rhs}"


@dataclass(frozen=True)
class MinedRule:
    rule: AssociationRule
    frequency: int  # freq(body | head)
    confidence: float  # frequency / freq(body)


@dataclass(frozen=True)
class ContingencyTable:
    """2x2 co-occurrence counts for a rule X -> Y over a transaction DB."""

    f11: int  # X and Y
    f10: int  # X without Y
    f01: int  # Y without X
    f00: int  # neither

    def __post_init__(self):
        if min(self.f11, self.f10, self.f01, self.f00) < 0:
            raise ValueError("contingency counts must be non-negative")
        if self.n == 0:
            raise ValueError("contingency table over an empty database")

    @property
    def n(self) -> int:
        return self.f11 + self.f10 + self.f01 + self.f00

    @property
    def fx(self) -> int:
        return self.f11 + self.f10

    @property
    def fy(self) -> int:
        return self.f11 + self.f01


def mine_frequent(db: TransactionDB, minsup: int) -> dict[Itemset, int]:
    """Every non-empty itemset with frequency >= minsup, with its exact count.

    Output is downward-closed by Apriori anti-monotonicity.
    """
    if minsup < 1:
        raise ValueError("minsup must be >= 1")
    level: dict[Itemset, frozenset[int]] = {
        frozenset((item,)): db.tidset((item,)) for item in db.items()
    }
    level = {s: tids for s, tids in level.items() if len(tids) >= minsup}
    out: dict[Itemset, int] = {s: len(t) for s, t in level.items()}
    while level:
        keys = sorted(level, key=lambda s: tuple(sorted(s)))
        nxt: dict[Itemset, frozenset[int]] = {}
        # join step: two k-sets sharing their (k-1)-prefix in sorted order
        for a, b in combinations(keys, 2):
            ta, tb = tuple(sorted(a)), tuple(sorted(b))
            if ta[:-1] != tb[:-1]:
                continue
            cand = a | b
            if any(cand - frozenset((i,)) not in out for i in cand):
                continue  # prune: some k-subset infrequent
            tids = level[a] & level[b]
            if len(tids) >= minsup:
                nxt[cand] = tids
        out.update((s, len(t)) for s, t in nxt.items())
        level = nxt
    return out


def generate_rules(
    frequents: Mapping[Itemset, int],
    db: TransactionDB,
    minconf: float,
    max_head: int = 2,
    allow_empty_body: bool = False,
) -> list[MinedRule]:
    """All confident rules assembled from frequent itemsets, |head| <= max_head.

    Deterministic order: lexicographic by (sorted body, sorted head). Confidence
    is the same float division later recomputed from the contingency table, so
    the two agree exactly.
    """
    if not 0.0 <= minconf <= 1.0:
        raise ValueError("minconf must be in [0, 1]")
    if max_head < 1:
        raise ValueError("max_head must be >= 1")
    out: list[MinedRule] = []
    for z, fz in frequents.items():
        biggest_head = min(max_head, len(z) if allow_empty_body else len(z) - 1)
        for h in range(1, biggest_head + 1):
            for head in combinations(sorted(z), h):
                head_fs = frozenset(head)
                body = z - head_fs
                fx = frequents[body] if body else db.n
                conf = fz / fx
                if conf >= minconf:
                    out.append(MinedRule(AssociationRule(body, head_fs), fz, conf))
    out.sort(key=lambda r: r.rule.key())
    return out


def contingency(db: TransactionDB, rule: AssociationRule) -> ContingencyTable:
    f11 = len(db.tidset(rule.body | rule.head))
    fx = len(db.tidset(rule.body))
    fy = len(db.tidset(rule.head))
    return ContingencyTable(f11, fx - f11, fy - f11, db.n - fx - fy + f11)


def rules_to_csv(rules: list[MinedRule], path: str | Path) -> None:
    """CSV export: body items "|"-joined, head likewise, frequency, confidence."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["body", "head", "frequency", "confidence"])
        for r in rules:
            w.writerow(
                [
                    "|".join(map(str, sorted(r.rule.body))),
                    "|".join(map(str, sorted(r.rule.head))),
                    r.frequency,
                    r.confidence,
                ]
            )
