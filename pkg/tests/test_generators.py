import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

import oracles
from smartvote.ballots import classify_language, validate_profile
from smartvote.errors import ParameterError, SelfLoopError
from smartvote.generators import (
    CnfInstance,
    DirectedGraphInstance,
    cnfsat_to_profile,
    fvs_to_profile,
    parse_dimacs,
    parse_edge_list,
    random_profile,
    remove_self_loops,
)
from smartvote.optimal import bounded_minmax, bounded_minsum


def graph(edges, k, vertices=None):
    vs = vertices or sorted({v for e in edges for v in e})
    return DirectedGraphInstance(tuple(vs), frozenset(edges), k)


def fvs_answer(g):
    p, M = fvs_to_profile(g, normalize_loops=True)
    return bool(bounded_minsum(p, M))


def test_fvs_examples():
    triangle = [("a", "b"), ("b", "c"), ("c", "a")]
    p, M = fvs_to_profile(graph(triangle, 1))
    assert M == 4 and bounded_minsum(p, M)
    assert not fvs_answer(graph(triangle, 0))
    assert fvs_answer(graph([("a", "b"), ("b", "c")], 0))
    two_cycles = [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")]
    assert not fvs_answer(graph(two_cycles, 1))
    assert fvs_answer(graph(two_cycles, 2))


def test_self_loops():
    g = graph([("a", "a"), ("a", "b")], 0)
    with pytest.raises(SelfLoopError):
        fvs_to_profile(g)
    h = remove_self_loops(g)
    assert ("a", "a") not in h.edges and {("a", "a'"), ("a'", "a")} <= h.edges
    assert not fvs_answer(g)
    assert fvs_answer(graph([("a", "a"), ("a", "b")], 1))


def test_fvs_profile_is_bool_and_valid():
    p, _ = fvs_to_profile(graph([("a", "b"), ("a", "c"), ("c", "a")], 1))
    assert not validate_profile(p)
    assert classify_language(p).in_bool
    assert str(p["a"]) == "({b,c}, b&c) > 1"


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2), st.data())
def test_fvs_reduction_matches_brute_force(n, k, data):
    vs = [f"v{i}" for i in range(n)]
    pairs = [(u, v) for u in vs for v in vs if u != v]
    edges = data.draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    g = graph(edges, k, vs)
    assert fvs_answer(g) == (oracles.min_fvs(vs, edges) <= k)


def test_cnf_examples():
    assert bounded_minmax(*cnfsat_to_profile(CnfInstance(((1, 2),))))
    assert not bounded_minmax(*cnfsat_to_profile(CnfInstance(((1,), (-1,)))))
    p, M = cnfsat_to_profile(CnfInstance(((1, -1), (2,))))
    assert M == 2
    assert len(p["c1"]) == 2 and len(p["c2"]) == 3
    assert bounded_minmax(p, M)


def clause_sets(nvars, max_clauses):
    lits = [l for v in range(1, nvars + 1) for l in (v, -v)]
    clauses = [c for size in range(1, nvars + 1) for c in itertools.combinations(lits, size)]
    for m in range(1, max_clauses + 1):
        yield from itertools.combinations(clauses, m)


def test_cnf_reduction_exhaustive_two_variables():
    for clauses in clause_sets(2, 2):
        phi = CnfInstance(clauses)
        assert bool(bounded_minmax(*cnfsat_to_profile(phi))) == oracles.satisfiable(clauses), clauses


def test_parsers():
    g = parse_edge_list("# graph\na b\nb c  # comment\nd\n", k=2)
    assert g.vertices == ("a", "b", "c", "d") and g.edges == {("a", "b"), ("b", "c")} and g.k == 2
    with pytest.raises(ParameterError):
        parse_edge_list("a b c")
    phi = parse_dimacs("c example\np cnf 3 2\n1 -3 0\n2\n3 0\n")
    assert phi.clauses == ((1, -3), (2, 3)) and phi.variables == [1, 2, 3]
    with pytest.raises(ParameterError):
        CnfInstance(())
    with pytest.raises(ParameterError):
        DirectedGraphInstance(("a",), frozenset({("a", "b")}))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.sampled_from(["bool", "liquid", "liquid*"]), st.integers(1, 4),
       st.floats(0, 1), st.integers(0, 10_000))
def test_random_profile_contract(n, language, levels, bias, seed):
    p = random_profile(n, language, levels, bias, seed)
    assert p.n == n and not validate_profile(p)
    assert all(1 <= len(p[a]) <= levels for a in p.agents)
    lang = classify_language(p)
    assert {"bool": lang.in_bool, "liquid": lang.in_liquid, "liquid*": lang.in_liquid_star}[language]
    assert random_profile(n, language, levels, bias, seed) == p


def test_random_profile_rejects_bad_parameters():
    for kwargs in ({"n": 0}, {"n": 3, "max_levels": 0}, {"n": 3, "cycle_bias": 2}, {"n": 3, "language": "x"}):
        with pytest.raises(ParameterError):
            random_profile(**kwargs)
