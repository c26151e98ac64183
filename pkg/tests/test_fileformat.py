import json

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from smartvote import fileformat, fixtures
from smartvote.fileformat import ProfileFormatError
from smartvote.generators import random_profile


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_packaged_json_matches_definition(name):
    assert fixtures.load(name) == fixtures.build(name)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.sampled_from(["bool", "liquid", "liquid*"]), st.integers(0, 10_000))
def test_roundtrip(n, language, seed):
    p = random_profile(n, language, 3, 0.4, seed)
    assert fileformat.loads(fileformat.dumps(p)) == p


def test_decode_error_has_position():
    with pytest.raises(ProfileFormatError) as info:
        fileformat.loads('{"domain": ["0", "1"],\n "agents": [}')
    assert "line 2" in str(info.value)


def _doc(levels):
    return json.dumps({"domain": ["0", "1"], "agents": ["a", "b"],
                       "ballots": {"a": levels, "b": [{"vote": "1"}]}})


def test_delegates_must_match_formula():
    bad = _doc([{"delegates": ["b", "a"], "fn": {"kind": "id", "of": "b"}}, {"vote": "0"}])
    with pytest.raises(ProfileFormatError) as info:
        fileformat.loads(bad)
    assert "ballots.a[0]" in str(info.value)


def test_unknown_kind_and_missing_vote():
    with pytest.raises(ProfileFormatError):
        fileformat.loads(_doc([{"delegates": ["b"], "fn": {"kind": "maj"}}, {"vote": "0"}]))
    with pytest.raises(ProfileFormatError):
        fileformat.loads(_doc([{"delegates": ["b"], "fn": {"kind": "id", "of": "b"}}]))
    with pytest.raises(ProfileFormatError):
        fileformat.loads(json.dumps({"agents": []}))


def test_tautology_in_file():
    bad = _doc([{"delegates": ["b"], "fn": {"kind": "dnf", "expr": "b | ~b"}}, {"vote": "0"}])
    with pytest.raises(ProfileFormatError) as info:
        fileformat.loads(bad)
    assert "expr" in info.value.where


def test_single_atom_dnf_loads_as_identity():
    doc = _doc([{"delegates": ["b"], "fn": {"kind": "dnf", "expr": "b"}}, {"vote": "0"}])
    p = fileformat.loads(doc)
    assert fileformat.profile_to_json(p)["ballots"]["a"][0]["fn"] == {"kind": "id", "of": "b"}
