import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

import oracles
from smartvote import fixtures
from smartvote.certificates import (
    Certificate,
    certificate_space_size,
    check_bounds,
    check_consistent,
    enumerate_consistent,
    iter_certificates,
    outcome_of,
    random_witness,
    replay,
)
from smartvote.errors import AgentMismatchError, BoundsError, CapExceededError, InconsistentCertificateError
from smartvote.generators import random_profile


@pytest.fixture
def table1():
    return fixtures.build("table1")


def cert(p, *levels):
    return Certificate.of(p, levels)


def test_all_ones_is_inconsistent(table1):
    result = check_consistent(table1, cert(table1, 1, 1, 1, 1, 1))
    assert not result
    assert result.stuck == {"a", "c", "d", "e"}
    with pytest.raises(InconsistentCertificateError):
        outcome_of(table1, cert(table1, 1, 1, 1, 1, 1))


def test_table1_certificates(table1):
    result = check_consistent(table1, cert(table1, 1, 1, 2, 1, 1))
    assert result.witness.ordering == ("b", "c", "a", "e", "d")
    assert result.witness.outcome.votes == ("0", "1", "0", "0", "0")
    assert outcome_of(table1, cert(table1, 1, 1, 1, 2, 1)).votes == ("1",) * 5


def test_rank_and_max(table1):
    c = cert(table1, 1, 1, 2, 1, 1)
    assert c.rank == 6 and c.max_level == 2
    assert str(c) == "(1,1,2,1,1)"
    assert c["c"] == 2 and dict(c) == c.to_dict()


def test_bounds(table1):
    with pytest.raises(BoundsError):
        check_bounds(table1, cert(table1, 1, 2, 1, 1, 1))
    with pytest.raises(BoundsError):
        check_consistent(table1, cert(table1, 0, 1, 1, 1, 1))
    with pytest.raises(AgentMismatchError):
        Certificate.of(table1, {"a": 1})


def test_replay_needs_a_valid_order(table1):
    c = cert(table1, 1, 1, 2, 1, 1)
    assert replay(table1, c, ("b", "c", "a", "e", "d")).votes == ("0", "1", "0", "0", "0")
    assert replay(table1, c, ("a", "b", "c", "d", "e")) is None


def test_enumeration_counts_and_cap(table1):
    assert certificate_space_size(table1) == 3 * 1 * 2 * 2 * 3
    assert len(list(iter_certificates(table1))) == 36
    assert len(enumerate_consistent(table1)) == len(oracles.consistent_table(table1))
    with pytest.raises(CapExceededError):
        enumerate_consistent(table1, cap=10)


def test_cap_from_environment(table1, monkeypatch):
    monkeypatch.setenv("SMARTVOTE_ENUM_CAP", "5")
    with pytest.raises(CapExceededError):
        enumerate_consistent(table1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.sampled_from(["bool", "liquid", "liquid*"]), st.integers(0, 10_000))
def test_fixpoint_matches_permutation_oracle(n, language, seed):
    p = random_profile(n, language, 3, 0.5, seed)
    table = oracles.consistent_table(p)
    found = {c.levels: o.votes for c, o in enumerate_consistent(p)}
    assert found == table


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10_000))
def test_random_orderings_give_the_same_outcome(n, seed):
    p = random_profile(n, "bool", 3, 0.5, seed)
    rng = random.Random(seed)
    for c, outcome in enumerate_consistent(p):
        order = random_witness(p, c, rng)
        assert replay(p, c, order) == outcome
