"""Synthetic inputs for experiments and tests."""
from __future__ import annotations

import numpy as np

from .dataset import TransactionDB
from .learner import PatternCollection
from .measures import MEASURE_NAMES


def synthetic_collection(n: int, m: int = 7, seed: int = 0) -> PatternCollection:
    """n patterns with iid Uniform(0,1) measure values — mutually non-redundant
    columns, no underlying rules. Ids are 0..n-1."""
    rng = np.random.default_rng(seed)
    raw = rng.random((n, m))
    names = MEASURE_NAMES if m == len(MEASURE_NAMES) else tuple(f"m{j+1}" for j in range(m))
    return PatternCollection(range(n), raw, names)


def synthetic_separable_collection(
    n: int, m: int = 7, seed: int = 0, latent_share: float = 0.75
) -> PatternCollection:
    """n patterns whose measures all track one latent quality axis, each
    corrupted by independent noise: value = share*q + (1-share)*u.

    No single column ranks the patterns reliably, but any sensible positive
    aggregate does, because the noise averages out while the latent term does
    not. Useful when an experiment needs a recoverable target ranking rather
    than adversarially independent columns."""
    if not 0.0 < latent_share < 1.0:
        raise ValueError("latent_share must be in (0, 1)")
    rng = np.random.default_rng(seed)
    q = rng.random((n, 1))
    u = rng.random((n, m))
    raw = latent_share * q + (1.0 - latent_share) * u
    names = MEASURE_NAMES if m == len(MEASURE_NAMES) else tuple(f"m{j+1}" for j in range(m))
    return PatternCollection(range(n), raw, names)


def synthetic_db(
    n_transactions: int = 2000,
    n_items: int = 30,
    n_templates: int = 8,
    template_prob: float = 0.25,
    noise_prob: float = 0.05,
    seed: int = 0,
) -> TransactionDB:
    """Planted co-occurrence templates plus item noise.

    Each transaction takes each template (a random 2-4 itemset) with
    probability template_prob and each single item with probability
    noise_prob, so mined rules span strong and weak associations.
    """
    rng = np.random.default_rng(seed)
    templates = [
        rng.choice(n_items, size=int(rng.integers(2, 5)), replace=False)
        for _ in range(n_templates)
    ]
    txs = []
    for _ in range(n_transactions):
        t: set[int] = set()
        for tpl in templates:
            if rng.random() < template_prob:
                t.update(int(i) for i in tpl)
        noise = np.nonzero(rng.random(n_items) < noise_prob)[0]
        t.update(int(i) for i in noise)
        if not t:
            t.add(int(rng.integers(n_items)))
        txs.append(frozenset(t))
    return TransactionDB(tuple(txs))
