"""Transaction databases in FIMI flat-file form, plus itemset frequency queries."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

Itemset = frozenset[int]


@dataclass(frozen=True)
class TransactionDB:
    transactions: tuple[Itemset, ...]
    # item -> transaction indices, built once; freq() contract is the brute scan
    _index: dict[int, frozenset[int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        idx: dict[int, set[int]] = {}
        for tid, t in enumerate(self.transactions):
            for item in t:
                idx.setdefault(item, set()).add(tid)
        object.__setattr__(self, "_index", {i: frozenset(s) for i, s in idx.items()})

    @property
    def n(self) -> int:
        return len(self.transactions)

    def items(self) -> frozenset[int]:
        return frozenset(self._index)

    def tidset(self, itemset: Iterable[int]) -> frozenset[int]:
        """Indices of transactions containing every item of `itemset`."""
        s = frozenset(itemset)
        if not s:
            return frozenset(range(self.n))
        tids: frozenset[int] | None = None
        for item in s:
            t = self._index.get(item, frozenset())
            tids = t if tids is None else tids & t
            if not tids:
                return frozenset()
        return tids


def freq(db: TransactionDB, itemset: Iterable[int]) -> int:
    """Number of transactions containing `itemset`; the empty set hits all of them."""
    return len(db.tidset(itemset))


def parse_fimi(text: str) -> TransactionDB:
    """One transaction per non-empty line, whitespace-separated non-negative ints.

    Duplicate items within a line collapse (set semantics). Blank lines are
    skipped; anything else that fails to parse raises with its 1-based line number.
    """
    txs: list[Itemset] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        toks = line.split()
        if not toks:
            continue
        try:
            items = [int(t) for t in toks]
        except ValueError:
            raise ValueError(f"line {ln}: non-integer item token") from None
        if any(i < 0 for i in items):
            raise ValueError(f"line {ln}: negative item id")
        txs.append(frozenset(items))
    return TransactionDB(tuple(txs))


def load_fimi(path: str | Path) -> TransactionDB:
    return parse_fimi(Path(path).read_text())


def dump_fimi(db: TransactionDB, path: str | Path) -> None:
    lines = (" ".join(str(i) for i in sorted(t)) for t in db.transactions)
    Path(path).write_text("\n".join(lines) + ("\n" if db.transactions else ""))
