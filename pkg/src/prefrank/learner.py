"""The ranking-function learner.

A pattern collection holds one row of raw measure values per pattern (plus the
min-max-scaled copy computed once at load). Feedback arrives as rankings over
small pattern subsets; each ranking is compared, measure by measure, with the
measure's own ranking of the same subset via the two-judge concordance
coefficient, and the resulting pairwise concordance gaps drive the
comparison-matrix weight extraction. Active mode selects each query as the
adjacent pair (in current-score order) whose score gap is least explained by
the raw value gap — the place where the current weights are least informative.
"""
from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

from .ahp import GapState, WeightVector, comparison_matrix, eigen_weights
from .measures import MEASURE_NAMES, measure_vector, minmax_scale
from .mining import AssociationRule, MinedRule, contingency
from .dataset import TransactionDB
from .ranking import RankAssignment, kendall_w, rank_by

SCALING_MODES = ("minmax", "identity")


@dataclass(frozen=True)
class PatternRecord:
    id: int
    rule: AssociationRule | None  # None for synthetic measure-vector patterns
    measures: np.ndarray  # raw values, index-aligned with the collection's names
    scaled: np.ndarray  # min-max scaled over the owning collection

    @property
    def m(self) -> int:
        return self.measures.size


@dataclass(frozen=True)
class FeedbackRanking:
    """Pattern ids, most preferred first."""

    order: tuple[int, ...]

    def __post_init__(self):
        if len(self.order) < 2:
            raise ValueError("a feedback ranking needs at least 2 patterns")
        if len(set(self.order)) != len(self.order):
            raise ValueError("duplicate pattern ids in feedback ranking")

    def __len__(self) -> int:
        return len(self.order)

    def as_rank_assignment(self) -> RankAssignment:
        return RankAssignment.from_order(self.order)


@dataclass(frozen=True)
class LearnerConfig:
    T: int
    seed: int
    theta: int = 1000
    scaling_mode: str = "minmax"

    def __post_init__(self):
        if self.theta < 2:
            raise ValueError("theta must be >= 2")
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if self.scaling_mode not in SCALING_MODES:
            raise ValueError(f"scaling_mode must be one of {SCALING_MODES}")


class PatternCollection:
    """Immutable set of patterns with raw and scaled measure matrices."""

    def __init__(
        self,
        ids: Sequence[int],
        raw: np.ndarray,
        measure_names: Sequence[str] = MEASURE_NAMES,
        rules: Sequence[AssociationRule | None] | None = None,
    ):
        self.ids: tuple[int, ...] = tuple(int(i) for i in ids)
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("duplicate pattern ids")
        self.raw = np.asarray(raw, dtype=float)
        if self.raw.ndim != 2 or self.raw.shape[0] != len(self.ids):
            raise ValueError("raw matrix must be n_patterns x n_measures")
        if not np.isfinite(self.raw).all():
            raise ValueError("measure values must be finite")
        self.measure_names = tuple(measure_names)
        if len(self.measure_names) != self.raw.shape[1]:
            raise ValueError("measure name count must match matrix width")
        self.rules: tuple[AssociationRule | None, ...] = (
            tuple(rules) if rules is not None else (None,) * len(self.ids)
        )
        if len(self.rules) != len(self.ids):
            raise ValueError("rule count must match pattern count")
        # scaling window = the whole collection, fixed at construction
        self.scaled = np.column_stack(
            [minmax_scale(self.raw[:, j]) for j in range(self.raw.shape[1])]
        ) if len(self.ids) else self.raw.copy()
        self._row: dict[int, int] = {pid: i for i, pid in enumerate(self.ids)}
        self._ids_arr = np.asarray(self.ids, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def m(self) -> int:
        return len(self.measure_names)

    def row(self, pid: int) -> int:
        try:
            return self._row[pid]
        except KeyError:
            raise KeyError(f"unknown pattern id {pid}") from None

    def record(self, pid: int) -> PatternRecord:
        i = self.row(pid)
        return PatternRecord(pid, self.rules[i], self.raw[i], self.scaled[i])

    def records(self, ids: Sequence[int] | None = None) -> list[PatternRecord]:
        if ids is None:
            ids = self.ids
        return [self.record(p) for p in ids]

    def effective(self, scaling_mode: str) -> np.ndarray:
        if scaling_mode == "minmax":
            return self.scaled
        if scaling_mode == "identity":
            return self.raw
        raise ValueError(f"scaling_mode must be one of {SCALING_MODES}")

    def measure_ranks(self, ids: Sequence[int]) -> list[RankAssignment]:
        """Each measure's ranking of the given subset, on raw values."""
        rows = [self.row(p) for p in ids]
        out = []
        for j in range(self.m):
            col = self.raw[rows, j]
            out.append(rank_by({p: float(v) for p, v in zip(ids, col)}))
        return out

    def scores(self, weights: WeightVector, scaling_mode: str = "minmax") -> np.ndarray:
        return self.effective(scaling_mode) @ weights.values

    def ranking(self, weights: WeightVector, scaling_mode: str = "minmax") -> RankAssignment:
        g = self.scores(weights, scaling_mode)
        order = np.lexsort((self._ids_arr, -g))
        return RankAssignment({int(self.ids[i]): r + 1 for r, i in enumerate(order)})

    def top_k(
        self, weights: WeightVector, k: int, scaling_mode: str = "minmax"
    ) -> list[tuple[PatternRecord, float]]:
        g = self.scores(weights, scaling_mode)
        order = np.lexsort((self._ids_arr, -g))[: max(k, 0)]
        return [(self.record(int(self.ids[i])), float(g[i])) for i in order]


def collection_from_rules(db: TransactionDB, mined: Sequence[MinedRule]) -> PatternCollection:
    """Score every mined rule under all seven measures; ids follow rule order."""
    if not mined:
        raise ValueError("no rules to build a collection from")
    raw = np.vstack([measure_vector(contingency(db, mr.rule)) for mr in mined])
    return PatternCollection(range(len(mined)), raw, MEASURE_NAMES, [mr.rule for mr in mined])


def measure_matrix_to_csv(collection: PatternCollection, path: str | Path) -> None:
    """One row per pattern: id, the raw measure columns, then the scaled copies
    (suffixed `_scaled`)."""
    names = collection.measure_names
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["id", *names, *(f"{n}_scaled" for n in names)])
        for i, pid in enumerate(collection.ids):
            w.writerow([pid, *collection.raw[i].tolist(), *collection.scaled[i].tolist()])


def learn_weights(
    state: GapState,
    s: FeedbackRanking,
    measure_ranks: Sequence[RankAssignment],
) -> WeightVector:
    """Fold one user ranking into the gap state and re-extract weights.

    Each measure's concordance with the user over s is computed within s
    (both rankings re-ranked to 1..|s|); the state absorbs the pairwise
    concordance-gap matrix as a running average, so replaying k rankings
    leaves the state at the arithmetic mean of their gap matrices.
    """
    if len(measure_ranks) != state.m:
        raise ValueError("one rank assignment per measure is required")
    user = s.as_rank_assignment()
    ids = user.ids()
    for j, mr in enumerate(measure_ranks):
        if mr.ids() != ids:
            raise ValueError(f"measure {j} ranking is not over the feedback set")
    k = np.array([kendall_w(mr, user) for mr in measure_ranks])
    state.update(k[:, None] - k[None, :])
    return eigen_weights(comparison_matrix(state))


def weighted_score(p: PatternRecord, weights: WeightVector, scaling_mode: str = "minmax") -> float:
    """Aggregated interestingness: dot product of weights with the pattern's values."""
    v = p.scaled if scaling_mode == "minmax" else p.measures
    if v.size != weights.m:
        raise ValueError("weight/measure dimension mismatch")
    return float(v @ weights.values)


def sensitivity(
    p1: PatternRecord,
    p2: PatternRecord,
    weights: WeightVector,
    scaling_mode: str = "minmax",
) -> float:
    """|score gap| / |signed sum of value gaps|, with 0/0 -> 0 and x/0 -> inf.

    Low sensitivity marks pairs whose score difference is small relative to
    how different the patterns actually are — the most informative queries.
    """
    v1 = p1.scaled if scaling_mode == "minmax" else p1.measures
    v2 = p2.scaled if scaling_mode == "minmax" else p2.measures
    num = abs(float((v1 - v2) @ weights.values))
    den = float(np.sum(v1 - v2))
    if den == 0.0:
        return 0.0 if num == 0.0 else float("inf")
    return abs(num / den)


def _select_adjacent(ids: np.ndarray, values: np.ndarray, w: np.ndarray) -> tuple[int, int]:
    """Min-sensitivity adjacent pair under descending score order (id tie-break)."""
    g = values @ w
    order = np.lexsort((ids, -g))
    gg, vv = g[order], values[order]
    dg = np.abs(gg[:-1] - gg[1:])
    ds = (vv[:-1] - vv[1:]).sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        sig = np.abs(dg / ds)
    sig = np.where((dg == 0.0) & (ds == 0.0), 0.0, sig)
    sig = np.where((ds == 0.0) & (dg != 0.0), np.inf, sig)
    k = int(np.argmin(sig))  # first minimum wins on ties
    return int(ids[order[k]]), int(ids[order[k + 1]])


def select_query(
    sample: Sequence[PatternRecord],
    weights: WeightVector,
    scaling_mode: str = "minmax",
) -> tuple[int, int]:
    """The pair to ask about next, as (higher-scored id, lower-scored id)."""
    if len(sample) < 2:
        raise ValueError("query selection needs at least 2 candidates")
    ids = np.array([p.id for p in sample], dtype=np.int64)
    values = np.vstack(
        [p.scaled if scaling_mode == "minmax" else p.measures for p in sample]
    )
    return _select_adjacent(ids, values, weights.values)


def sample_patterns(
    collection: PatternCollection,
    theta: int,
    rng: np.random.Generator,
    pool_ids: Sequence[int] | None = None,
) -> list[PatternRecord]:
    """min(theta, pool) distinct patterns, uniform without replacement."""
    if theta < 2:
        raise ValueError("theta must be >= 2")
    if len(collection) == 0:
        raise ValueError("cannot sample from an empty collection")
    pool = collection._ids_arr if pool_ids is None else np.asarray(pool_ids, dtype=np.int64)
    take = min(theta, pool.size)
    chosen = pool[rng.choice(pool.size, size=take, replace=False)]
    return [collection.record(int(p)) for p in chosen]


@dataclass
class PassiveResult:
    weights: WeightVector
    trace: list[WeightVector]
    state: GapState


def run_passive(
    rankings: Sequence[FeedbackRanking],
    collection: PatternCollection,
    scaling_mode: str = "minmax",
) -> PassiveResult:
    """Absorb a batch of user rankings in order; returns the final weights."""
    if not rankings:
        raise ValueError("passive mode requires at least one ranking")
    state = GapState.zeros(collection.m)
    trace: list[WeightVector] = []
    w: WeightVector | None = None
    for k, s in enumerate(rankings):
        try:
            w = learn_weights(state, s, collection.measure_ranks(s.order))
        except (KeyError, ValueError) as e:
            raise ValueError(f"ranking {k}: {e}") from None
        trace.append(w)
    return PassiveResult(w, trace, state)


class OracleAbort(Exception):
    """Raised by a feedback source to end the session early."""


class FeedbackOracle(Protocol):
    def rank(self, records: Sequence[PatternRecord]) -> FeedbackRanking: ...


@dataclass
class IterationTrace:
    t: int  # 1-based iteration number
    query: tuple[int, int]  # as proposed: (higher-scored, lower-scored)
    response: tuple[int, ...]  # user's order, most preferred first
    weights: np.ndarray
    learn_seconds: float  # sample + select + learn, oracle time excluded


@dataclass
class ActiveResult:
    weights: WeightVector
    trace: list[IterationTrace]
    aborted: bool = False

    @property
    def weight_history(self) -> np.ndarray:
        return np.vstack([tr.weights for tr in self.trace])


class ActiveDriver:
    """One active session's state machine: propose a query, absorb the answer.

    Shared by the batch runner and the HTTP session layer so that a replayed
    interaction reproduces the exact arithmetic (same RNG stream, same state
    updates) of the batch run.
    """

    STRATEGIES = ("sbg", "random")

    def __init__(
        self,
        collection: PatternCollection,
        config: LearnerConfig,
        strategy: str = "sbg",
        pool_ids: Sequence[int] | None = None,
    ):
        if strategy not in self.STRATEGIES:
            raise ValueError(f"strategy must be one of {self.STRATEGIES}")
        self.collection = collection
        self.config = config
        self.strategy = strategy
        self.pool_ids = None if pool_ids is None else tuple(pool_ids)
        self.rng = np.random.default_rng(config.seed)
        self.state = GapState.zeros(collection.m)
        self.weights = WeightVector.uniform(collection.m)
        self.t = 0  # completed iterations
        self.trace: list[IterationTrace] = []
        self._pending: tuple[int, int] | None = None
        self._pending_seconds = 0.0

    @property
    def done(self) -> bool:
        return self.t >= self.config.T

    @property
    def pending(self) -> tuple[int, int] | None:
        return self._pending

    def propose(self) -> tuple[int, int]:
        """Sample candidates and pick the next query pair under current weights."""
        if self.done:
            raise RuntimeError("query budget exhausted")
        if self._pending is not None:
            raise RuntimeError("previous query not yet answered")
        t0 = time.perf_counter()
        sample = sample_patterns(self.collection, self.config.theta, self.rng, self.pool_ids)
        if self.strategy == "sbg":
            ids = np.array([p.id for p in sample], dtype=np.int64)
            values = np.vstack(
                [p.scaled if self.config.scaling_mode == "minmax" else p.measures for p in sample]
            )
            pair = _select_adjacent(ids, values, self.weights.values)
        else:
            i, j = self.rng.choice(len(sample), size=2, replace=False)
            pair = (sample[int(i)].id, sample[int(j)].id)
        self._pending = pair
        self._pending_seconds = time.perf_counter() - t0
        return pair

    def pending_records(self) -> list[PatternRecord]:
        if self._pending is None:
            raise RuntimeError("no pending query")
        return [self.collection.record(p) for p in self._pending]

    def absorb(self, response: FeedbackRanking) -> WeightVector:
        """Learn from the user's ordering of the pending pair."""
        if self._pending is None:
            raise RuntimeError("no pending query to answer")
        if set(response.order) != set(self._pending):
            raise ValueError("response does not rank the pending pair")
        t0 = time.perf_counter()
        w = learn_weights(
            self.state, response, self.collection.measure_ranks(response.order)
        )
        elapsed = self._pending_seconds + (time.perf_counter() - t0)
        self.weights = w
        self.t += 1
        self.trace.append(
            IterationTrace(
                t=self.t,
                query=self._pending,
                response=response.order,
                weights=w.values.copy(),
                learn_seconds=elapsed,
            )
        )
        self._pending = None
        self._pending_seconds = 0.0
        return w

    def result(self, aborted: bool = False) -> ActiveResult:
        return ActiveResult(self.weights, list(self.trace), aborted)


def run_active(
    oracle: FeedbackOracle,
    collection: PatternCollection,
    config: LearnerConfig,
    strategy: str = "sbg",
    pool_ids: Sequence[int] | None = None,
) -> ActiveResult:
    """Drive a full active session against a feedback source.

    Exactly config.T query/answer cycles unless the oracle aborts, in which
    case the partial trace is returned with the abort flag set.
    """
    driver = ActiveDriver(collection, config, strategy=strategy, pool_ids=pool_ids)
    while not driver.done:
        driver.propose()
        try:
            response = oracle.rank(driver.pending_records())
        except OracleAbort:
            return driver.result(aborted=True)
        driver.absorb(response)
    return driver.result()
