"""Emulated feedback sources and robustness wrappers for experiments."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import TransactionDB
from .learner import FeedbackOracle, FeedbackRanking, OracleAbort, PatternRecord

__all__ = [
    "LinearOracle",
    "random_linear_oracle",
    "LexicographicOracle",
    "ChiSquareOracle",
    "MistakeProneOracle",
    "TargetSwapOracle",
    "ScriptedOracle",
    "EmulatorSpec",
    "BuiltEmulator",
]


def _by_score(records: Sequence[PatternRecord], score) -> FeedbackRanking:
    order = sorted(records, key=lambda p: (-score(p), p.id))
    return FeedbackRanking(tuple(p.id for p in order))


class LinearOracle:
    """Prefers higher weighted sums of scaled measure values."""

    def __init__(self, weights: Sequence[float]):
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or not (w >= 0).all() or w.sum() <= 0:
            raise ValueError("target weights must be non-negative and sum positive")
        self.weights = w / w.sum()

    def rank(self, records: Sequence[PatternRecord]) -> FeedbackRanking:
        return _by_score(records, lambda p: float(p.scaled @ self.weights))


def random_linear_oracle(m: int, rng: np.random.Generator) -> LinearOracle:
    # weights drawn once in [0,1] and normalized; frozen for the oracle's life
    w = rng.random(m)
    while w.sum() == 0:
        w = rng.random(m)
    return LinearOracle(w)


class LexicographicOracle:
    """Prefers greater raw value on the first measure of `order`, ties falling
    through to later measures; a full tie goes to the smaller pattern id."""

    def __init__(self, order: Sequence[int]):
        self.order = tuple(int(i) for i in order)
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("order must be a permutation of the measure indices")

    def rank(self, records: Sequence[PatternRecord]) -> FeedbackRanking:
        m = records[0].m if records else 0
        if len(self.order) != m:
            raise ValueError("order length does not match the measure count")
        ranked = sorted(
            records, key=lambda p: tuple(-p.measures[i] for i in self.order) + (p.id,)
        )
        return FeedbackRanking(tuple(p.id for p in ranked))


class ChiSquareOracle:
    """Prefers rules whose observed co-occurrence deviates most from the
    independence expectation; rules with an empty margin score 0."""

    def __init__(self, db: TransactionDB):
        self.db = db
        self._cache: dict = {}

    def chi_square(self, p: PatternRecord) -> float:
        if p.rule is None:
            raise ValueError(f"pattern {p.id} carries no rule to score")
        key = p.rule.key()
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        db = self.db
        fxy = len(db.tidset(p.rule.body | p.rule.head))
        fx = len(db.tidset(p.rule.body))
        fy = len(db.tidset(p.rule.head))
        if fx * fy == 0:
            val = 0.0
        else:
            expected = fx * fy / db.n
            val = (fxy - expected) ** 2 / expected
        self._cache[key] = val
        return val

    def rank(self, records: Sequence[PatternRecord]) -> FeedbackRanking:
        return _by_score(records, self.chi_square)


class MistakeProneOracle:
    """Wraps another oracle; with probability err, a response is reversed."""

    def __init__(self, inner: FeedbackOracle, err: float, rng: np.random.Generator):
        if not 0.0 <= err <= 1.0:
            raise ValueError("err must be in [0, 1]")
        self.inner = inner
        self.err = err
        self.rng = rng

    def rank(self, records: Sequence[PatternRecord]) -> FeedbackRanking:
        s = self.inner.rank(records)
        if self.err > 0 and self.rng.random() < self.err:
            return FeedbackRanking(tuple(reversed(s.order)))
        return s


class TargetSwapOracle:
    """Answers queries 1..x from the first oracle, the rest from the second."""

    def __init__(self, first: FeedbackOracle, second: FeedbackOracle, x: int):
        if x < 0:
            raise ValueError("swap point must be >= 0")
        self.first = first
        self.second = second
        self.x = x
        self.calls = 0

    def rank(self, records: Sequence[PatternRecord]) -> FeedbackRanking:
        self.calls += 1
        oracle = self.first if self.calls <= self.x else self.second
        return oracle.rank(records)


class ScriptedOracle:
    """Replays a prerecorded list of responses; aborts when the script ends."""

    def __init__(self, responses: Sequence[Sequence[int]]):
        self.responses = [tuple(r) for r in responses]
        self.calls = 0

    def rank(self, records: Sequence[PatternRecord]) -> FeedbackRanking:
        if self.calls >= len(self.responses):
            raise OracleAbort("script exhausted")
        resp = self.responses[self.calls]
        if set(resp) != {p.id for p in records}:
            raise ValueError(f"scripted response {resp} does not match presented ids")
        self.calls += 1
        return FeedbackRanking(resp)


_KINDS = ("random_linear", "lexicographic", "chi2")


@dataclass(frozen=True)
class EmulatorSpec:
    """Serializable recipe for an experiment's feedback source.

    err > 0 wraps the target in mistake injection; swap_point switches targets
    mid-run (to `swap_to`). All randomness derives from `seed`, so a spec plus
    a seed fully determines behavior.
    """

    kind: str = "random_linear"
    seed: int = 0
    weights: tuple[float, ...] | None = None  # explicit target weights (random_linear)
    order: tuple[int, ...] | None = None  # measure priority (lexicographic)
    err: float = 0.0
    swap_point: int | None = None
    swap_to: str = "random_linear"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"emulator kind must be one of {_KINDS}")
        if self.swap_to not in _KINDS:
            raise ValueError(f"swap_to must be one of {_KINDS}")
        if not 0.0 <= self.err <= 1.0:
            raise ValueError("err must be in [0, 1]")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(float(x) for x in self.weights))
        if self.order is not None:
            object.__setattr__(self, "order", tuple(int(x) for x in self.order))

    def to_jsonable(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "weights": list(self.weights) if self.weights is not None else None,
            "order": list(self.order) if self.order is not None else None,
            "err": self.err,
            "swap_point": self.swap_point,
            "swap_to": self.swap_to,
        }

    def _base(self, kind: str, m: int, db: TransactionDB | None, rng: np.random.Generator):
        if kind == "random_linear":
            if self.weights is not None and kind == self.kind:
                return LinearOracle(self.weights)
            return random_linear_oracle(m, rng)
        if kind == "lexicographic":
            if self.order is not None and kind == self.kind:
                return LexicographicOracle(self.order)
            return LexicographicOracle(rng.permutation(m).tolist())
        if db is None:
            raise ValueError("chi2 emulator needs a transaction database")
        return ChiSquareOracle(db)

    def build(self, m: int, db: TransactionDB | None = None) -> "BuiltEmulator":
        ss = np.random.SeedSequence(self.seed)
        rng_first, rng_second, rng_err = (np.random.default_rng(c) for c in ss.spawn(3))
        first = self._base(self.kind, m, db, rng_first)
        if self.swap_point is not None:
            second = self._base(self.swap_to, m, db, rng_second)
            oracle: FeedbackOracle = TargetSwapOracle(first, second, self.swap_point)
            target, first_target = second, first
        else:
            oracle, target, first_target = first, first, None
        if self.err > 0:
            oracle = MistakeProneOracle(oracle, self.err, rng_err)
        return BuiltEmulator(oracle=oracle, target=target, first_target=first_target)


@dataclass
class BuiltEmulator:
    """The answering oracle plus clean (unwrapped) targets for evaluation."""

    oracle: FeedbackOracle
    target: FeedbackOracle  # the ranking the learner should end up matching
    first_target: FeedbackOracle | None = None  # pre-swap target, when swapping
