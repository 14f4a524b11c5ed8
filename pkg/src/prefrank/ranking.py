"""Rankings over pattern collections and rank-agreement statistics.

A RankAssignment is a strict 1..n ranking (no ties; ties are resolved by
ascending pattern id *before* construction, via rank_by). The agreement
statistics are the two-judge concordance coefficient, Spearman's rho, and
top-k recall.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Hashable, Iterable, Mapping, Sequence

PatternId = Hashable


@dataclass(frozen=True)
class RankAssignment:
    ranks: dict[PatternId, int]

    def __post_init__(self):
        n = len(self.ranks)
        if n == 0:
            raise ValueError("empty rank assignment")
        if sorted(self.ranks.values()) != list(range(1, n + 1)):
            raise ValueError("ranks must form a bijection onto 1..n")

    @property
    def n(self) -> int:
        return len(self.ranks)

    def ids(self) -> frozenset:
        return frozenset(self.ranks)

    def rank(self, pid: PatternId) -> int:
        return self.ranks[pid]

    def ordered_ids(self) -> list:
        return sorted(self.ranks, key=self.ranks.__getitem__)

    def top(self, k: int) -> set:
        return {p for p, r in self.ranks.items() if r <= k}

    def restricted_to(self, ids: Iterable[PatternId]) -> "RankAssignment":
        """Re-rank within a subset to 1..|subset|, preserving relative order."""
        keep = set(ids)
        missing = keep - self.ids()
        if missing:
            raise ValueError(f"ids not in ranking: {sorted(map(str, missing))}")
        order = sorted(keep, key=self.ranks.__getitem__)
        return RankAssignment({p: i + 1 for i, p in enumerate(order)})

    @staticmethod
    def from_order(ordered_ids: Sequence[PatternId]) -> "RankAssignment":
        ids = list(ordered_ids)
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate ids in ordering")
        return RankAssignment({p: i + 1 for i, p in enumerate(ids)})


def rank_by(scores: Mapping[PatternId, float], higher_is_better: bool = True) -> RankAssignment:
    """Rank 1 = best score; score ties broken by ascending pattern id."""
    if not scores:
        raise ValueError("cannot rank an empty score map")
    sign = -1.0 if higher_is_better else 1.0
    order = sorted(scores, key=lambda p: (sign * scores[p], p))
    return RankAssignment({p: i + 1 for i, p in enumerate(order)})


def _check_same_ids(a: RankAssignment, b: RankAssignment) -> None:
    if a.ids() != b.ids():
        raise ValueError("rankings are over different pattern sets")


def kendall_w(a: RankAssignment, b: RankAssignment) -> float:
    """Two-judge concordance in [0, 1]: 1 = identical order, 0 = reversed.

    K = 3 * sum((R_l - mean R)^2) / (n^3 - n), with R_l the rank sum of
    pattern l under both rankings.
    """
    _check_same_ids(a, b)
    n = a.n
    if n < 2:
        raise ValueError("concordance needs at least 2 patterns")
    sums = [a.ranks[p] + b.ranks[p] for p in a.ranks]
    mean = sum(sums) / n
    alpha = sum((r - mean) ** 2 for r in sums)
    return 3.0 * alpha / (n**3 - n)


def spearman(learned: RankAssignment, target: RankAssignment) -> float:
    """rho = 1 - 6*sum(d^2)/(n(n^2-1)) over rank differences d."""
    _check_same_ids(learned, target)
    n = learned.n
    if n < 2:
        raise ValueError("rank correlation needs at least 2 patterns")
    d2 = sum((learned.ranks[p] - target.ranks[p]) ** 2 for p in learned.ranks)
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


def recall_at(learned: RankAssignment, target: RankAssignment, k: int) -> float:
    """Fraction of the target's top-k found in the learned top-k."""
    _check_same_ids(learned, target)
    if not 1 <= k <= learned.n:
        raise ValueError(f"k must be in 1..{learned.n}, got {k}")
    return len(learned.top(k) & target.top(k)) / k


def recall_at_percent(learned: RankAssignment, target: RankAssignment, percent: float) -> float:
    """Recall at the top percent of the list: k = ceil(p*n/100), at least 1."""
    k = max(1, ceil(percent * learned.n / 100.0))
    return recall_at(learned, target, k)
