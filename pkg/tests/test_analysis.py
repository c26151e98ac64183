import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from smartvote import fixtures
from smartvote.analysis import (
    VotingRule,
    apply_rule,
    check_cast_participation,
    check_guru_participation,
    check_monotonicity,
    default_ballot_space,
    influence_sets,
    is_pareto_optimal,
    is_pareto_optimal_enumerated,
    pareto_dominates,
    possible_influence,
)
from smartvote.ballots import profile_from_rows
from smartvote.certificates import Certificate, enumerate_consistent
from smartvote.errors import AgentMismatchError, DomainError, InconsistentCertificateError, ParameterError
from smartvote.generators import random_profile
from smartvote.greedy import UpdateKind, enumerate_random_branches, unravel

AGENTS4 = ("a", "b", "c", "d")


def C(*levels, agents=AGENTS4):
    return Certificate(agents, levels)


def test_pareto_examples():
    assert pareto_dominates(C(1, 3, 3, 2), C(3, 3, 3, 2))
    assert not pareto_dominates(C(1, 3, 3, 2), C(1, 3, 3, 2))
    assert not pareto_dominates(C(1, 3, 3, 2), C(3, 1, 1, 2))
    assert not pareto_dominates(C(3, 1, 1, 2), C(1, 3, 3, 2))
    with pytest.raises(AgentMismatchError):
        pareto_dominates(C(1, 1, 1, 1), Certificate(("a", "b", "c", "e"), (1, 1, 1, 1)))


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3)), min_size=3, max_size=3))
def test_pareto_is_strict_partial_order(triple):
    x, y, z = (Certificate(("a", "b", "c"), t) for t in triple)
    assert not pareto_dominates(x, x)
    assert not (pareto_dominates(x, y) and pareto_dominates(y, x))
    if pareto_dominates(x, y) and pareto_dominates(y, z):
        assert pareto_dominates(x, z)


def test_table1_pareto():
    p = fixtures.build("table1")
    c = Certificate.of(p, (1, 1, 2, 1, 1))
    assert is_pareto_optimal(p, c) and is_pareto_optimal_enumerated(p, c)
    bumped = Certificate.of(p, (1, 1, 2, 2, 1))
    assert not is_pareto_optimal(p, bumped)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10_000))
def test_pareto_search_matches_enumeration(n, seed):
    p = random_profile(n, "bool", 3, 0.6, seed)
    for c, _ in enumerate_consistent(p):
        assert is_pareto_optimal(p, c) == is_pareto_optimal_enumerated(p, c)


def test_no_greedy_procedure_dominates_another():
    possible = {}
    for name in ("table4", "table6"):
        p = fixtures.build(name)
        for kind in UpdateKind:
            possible.setdefault(kind, []).append({b.certificate for b in enumerate_random_branches(p, kind)})
    for k1, k2 in itertools.permutations(UpdateKind, 2):
        always = all(
            all(pareto_dominates(c1, c2) for c1 in s1 for c2 in s2)
            for s1, s2 in zip(possible[k1], possible[k2])
        )
        assert not always, (k1, k2)


def test_influence_table5():
    p = fixtures.build("table5")
    c = unravel(p, "U").certificate
    assert influence_sets(p, c, "a").direct == {"b"}
    assert influence_sets(p, c, "a").transitive == {"b"}
    # c and d both use their second level, a delegation to f
    assert influence_sets(p, c, "f").direct == {"c", "d"}
    assert influence_sets(p, c, "e").transitive == frozenset()


def test_influence_chain_and_errors():
    p = profile_from_rows({"a": ["1"], "b": ["a", "0"], "c": ["b", "0"]})
    c = Certificate.of(p, (1, 1, 1))
    assert influence_sets(p, c, "a").direct == {"b"}
    assert influence_sets(p, c, "a").transitive == {"b", "c"}
    q = fixtures.build("table1")
    with pytest.raises(InconsistentCertificateError):
        influence_sets(q, Certificate.of(q, (1, 1, 1, 1, 1)), "b")


def test_rules():
    assert apply_rule(VotingRule.RMAJ, tuple("110010")) == "*"
    assert apply_rule("rmaj", ("1", "*", "*", "*", "1", "0")) == "1"
    assert apply_rule("maj", ("1", "1", "1")) == "1"
    assert apply_rule("maj", ("1", "1", "0", "0")) == "*"
    assert apply_rule("maj", ("*", "*", "1")) == "*"
    assert VotingRule.MAJ(("1", "0", "0")) == "0"
    with pytest.raises(DomainError):
        apply_rule("maj", ("2",))


@given(st.lists(st.sampled_from(["0", "1", "*"]), max_size=9))
def test_rmaj_tie_is_abstention(votes):
    if votes.count("0") == votes.count("1"):
        assert apply_rule("rmaj", votes) == "*"


def test_monotonicity():
    assert check_monotonicity("maj", 10_000, 1).holds
    assert check_monotonicity("rmaj", 10_000, 2).holds

    def inverted(x):
        return {"0": "1", "1": "0", "*": "*"}[apply_rule("rmaj", x)]

    report = check_monotonicity(inverted, 1000, 3)
    assert not report.holds and report.counterexample is not None


def test_cast_participation_bool_counterexample():
    p = profile_from_rows({"a": ["1"], "b": ["~a", "0"], "c": ["~a", "0"]})
    for kind in UpdateKind:
        report = check_cast_participation(p, "a", "maj", kind)
        assert not report.holds
        assert "0" in {str(ce.ballot) for ce in report.counterexamples}


def test_cast_participation_only_voter():
    p = profile_from_rows({"a": ["1"]}, ("0", "1", "*"))
    assert check_cast_participation(p, "a", "rmaj", "u").holds


def test_cast_participation_requires_direct_vote():
    p = fixtures.build("table5")
    with pytest.raises(ParameterError):
        check_cast_participation(p, "b", "rmaj", "u")


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10_000), st.sampled_from(["u", "du"]))
def test_cast_participation_holds_on_liquid_star(n, seed, kind):
    p = random_profile(n, "liquid*", 3, 0.5, seed)
    voters = [a for a in p.agents if len(p[a]) == 1 and p[a].backup != "*"]
    for a in voters:
        assert check_cast_participation(p, a, "rmaj", kind).holds


def test_default_ballot_space():
    p = fixtures.build("remark4")
    space = list(default_ballot_space(p, "c"))
    texts = {str(b) for b in space}
    assert "1" not in texts and {"0", "*"} <= texts
    assert "({a}, a) > ({b}, b) > *" in texts
    assert len(space) == 2 + 2 + 2


def test_guru_participation_table5():
    p = fixtures.build("table5")
    for kind in ("u", "du"):
        report = check_guru_participation(p, "a", "rmaj", kind)
        assert not report.holds
        ce = report.counterexamples[0]
        assert (ce.abstainer, ce.rule_before, ce.rule_after) == ("b", "*", "1")
    for kind in ("ru", "dru"):
        report = check_guru_participation(p, "a", "rmaj", kind)
        assert not report.holds
        hit = {(ce.before.votes, ce.before_certificate.levels) for ce in report.counterexamples if ce.abstainer == "b"}
        assert hit == {(tuple("100010"), (1, 1, 2, 1, 1, 1)), (tuple("100010"), (1, 1, 1, 2, 1, 1))}
    assert possible_influence(p, "a", "ru") >= {"b"}


def test_guru_participation_without_delegations():
    p = profile_from_rows({"a": ["1"], "b": ["0"], "c": ["*"]}, ("0", "1", "*"))
    report = check_guru_participation(p, "a", "rmaj", "u")
    assert report.holds and report.checked == 0
