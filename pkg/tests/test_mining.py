from itertools import chain, combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefrank import (
    AssociationRule,
    ContingencyTable,
    TransactionDB,
    contingency,
    freq,
    generate_rules,
    mine_frequent,
    rules_to_csv,
)

small_dbs = st.lists(
    st.frozensets(st.integers(0, 11), min_size=1, max_size=6),
    min_size=1,
    max_size=25,
).map(lambda txs: TransactionDB(tuple(txs)))


def brute_frequent(db: TransactionDB, minsup: int) -> dict:
    items = sorted(db.items())
    out = {}
    for r in range(1, len(items) + 1):
        for combo in combinations(items, r):
            s = frozenset(combo)
            f = freq(db, s)
            if f >= minsup:
                out[s] = f
    return out


def test_worked_mine(tiny_db):
    assert mine_frequent(tiny_db, 2) == {
        frozenset({1}): 2,
        frozenset({2}): 3,
        frozenset({1, 2}): 2,
    }


def test_minsup_must_be_positive(tiny_db):
    with pytest.raises(ValueError):
        mine_frequent(tiny_db, 0)


@settings(max_examples=60)
@given(small_dbs, st.integers(1, 6))
def test_mine_matches_brute_force(db, minsup):
    assert mine_frequent(db, minsup) == brute_frequent(db, minsup)


def test_rule_validation():
    with pytest.raises(ValueError):
        AssociationRule(frozenset({1}), frozenset())  # empty head
    with pytest.raises(ValueError):
        AssociationRule(frozenset({1}), frozenset({1}))  # overlap


def test_rule_str_and_key():
    r = AssociationRule(frozenset({2, 1}), frozenset({3}))
    assert str(r) == "1,2 -> 3"
    assert r.key() == ((1, 2), (3,))


def test_generate_rules_confidence_threshold(tiny_db):
    frequents = mine_frequent(tiny_db, 2)
    mined = generate_rules(frequents, tiny_db, minconf=1.0, allow_empty_body=False)
    got = {str(m.rule): m.confidence for m in mined}
    # 1 -> 2 holds in both transactions containing 1; 2 -> 1 only in 2 of 3
    assert got == {"1 -> 2": 1.0}


def test_generate_rules_are_sorted_and_thresholds_validated(tiny_db):
    frequents = mine_frequent(tiny_db, 2)
    mined = generate_rules(frequents, tiny_db, minconf=0.0)
    keys = [m.rule.key() for m in mined]
    assert keys == sorted(keys)
    with pytest.raises(ValueError):
        generate_rules(frequents, tiny_db, minconf=1.5)
    with pytest.raises(ValueError):
        generate_rules(frequents, tiny_db, minconf=0.5, max_head=0)


@settings(max_examples=40)
@given(small_dbs, st.integers(1, 4), st.floats(0.0, 1.0))
def test_rule_stats_match_recount(db, minsup, minconf):
    frequents = mine_frequent(db, minsup)
    for m in generate_rules(frequents, db, minconf, max_head=2):
        both = freq(db, m.rule.body | m.rule.head)
        assert m.frequency == both
        assert m.confidence == both / freq(db, m.rule.body)
        assert m.confidence >= minconf
        assert len(m.rule.head) <= 2


def test_empty_body_rules_only_when_allowed(tiny_db):
    frequents = mine_frequent(tiny_db, 2)
    default = generate_rules(frequents, tiny_db, minconf=0.0)
    assert all(m.rule.body for m in default)
    with_empty = generate_rules(frequents, tiny_db, minconf=0.0, allow_empty_body=True)
    empties = [m for m in with_empty if not m.rule.body]
    assert {str(m.rule) for m in empties} == {"{} -> 1", "{} -> 2", "{} -> 1,2"}
    # empty-body confidence is relative frequency
    conf = {str(m.rule): m.confidence for m in empties}
    assert conf["{} -> 2"] == 1.0
    assert conf["{} -> 1"] == pytest.approx(2 / 3)


def test_contingency_worked_example(five_tx_db, rule_a_to_b):
    t = contingency(five_tx_db, rule_a_to_b)
    assert (t.f11, t.f10, t.f01, t.f00) == (2, 1, 1, 1)
    assert t.n == 5
    assert (t.fx, t.fy) == (3, 3)


def test_contingency_validation():
    with pytest.raises(ValueError):
        ContingencyTable(0, 0, 0, 0)  # empty database
    with pytest.raises(ValueError):
        ContingencyTable(-1, 1, 1, 1)


@settings(max_examples=40)
@given(small_dbs)
def test_contingency_cells_partition_database(db):
    frequents = mine_frequent(db, 1)
    for m in generate_rules(frequents, db, 0.0, max_head=2)[:20]:
        t = contingency(db, m.rule)
        assert t.f11 + t.f10 + t.f01 + t.f00 == db.n
        assert t.f11 == m.frequency


def test_rules_to_csv(tmp_path, tiny_db):
    mined = generate_rules(mine_frequent(tiny_db, 2), tiny_db, 0.0)
    out = tmp_path / "rules.csv"
    rules_to_csv(mined, out)
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "body,head,frequency,confidence"
    assert len(lines) == len(mined) + 1
    assert any(line.startswith("1,2,") for line in lines[1:])
