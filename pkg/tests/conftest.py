import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from prefrank import AssociationRule, PatternCollection, TransactionDB

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def tiny_db():
    # {1,2}, {1,2}, {2}: support(1)=2, support(2)=3, support(1,2)=2
    return TransactionDB((frozenset({1, 2}), frozenset({1, 2}), frozenset({2})))


@pytest.fixture
def five_tx_db():
    # {a,b}, {a,b,c}, {a}, {b}, {c} with a=1, b=2, c=3
    return TransactionDB(
        (
            frozenset({1, 2}),
            frozenset({1, 2, 3}),
            frozenset({1}),
            frozenset({2}),
            frozenset({3}),
        )
    )


@pytest.fixture
def rule_a_to_b():
    return AssociationRule(frozenset({1}), frozenset({2}))


@pytest.fixture
def small_collection():
    rng = np.random.default_rng(7)
    raw = rng.random((20, 7))
    return PatternCollection(range(20), raw)
