import json

import pytest
from hypothesis import given, settings

from stardyn import fixtures
from stardyn.descriptors import System, element_to_json, load, parse, serialize
from stardyn.errors import InputError
from stardyn.pdsys import induced_endomorphism

from conftest import map_from, multimatrix_from, seeds


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixture_round_trip(name):
    s = fixtures.load(name)
    d = serialize(s)
    assert serialize(parse(json.loads(json.dumps(d)))) == d


def test_fixture_definitions(systems):
    assert systems["S_shift3"].partial_map.images == (1, 2, None)
    assert systems["S_merge"].partial_map.images == (0, 0, 1)
    assert systems["S_const3"].partial_map.images == (0, 0, 0)
    assert systems["S_id"].partial_map.images == (0,)


def test_load_from_file(tmp_path):
    path = tmp_path / "two.json"
    path.write_text(json.dumps({"kind": "partial_map", "points": ["a", "b"], "domain": ["b"],
                                "map": {"b": "a"}}))
    s = load(path)
    assert s.name == "two" and s.partial_map.images == (None, 0)


@pytest.mark.parametrize("bad", [
    [],
    {"kind": "other"},
    {"kind": "partial_map", "points": ["a"], "domain": ["b"], "map": {"b": "a"}},
    {"kind": "partial_map", "points": ["a"], "domain": ["a"], "map": {}},
    {"kind": "partial_map", "points": ["a"], "domain": []},
    {"kind": "multimatrix", "blocks": [2], "endo": {"multiplicities": [[0]],
                                                    "unitaries": [[[[1, 1, 0, 1], [1, 1, 0, 1]],
                                                                   [[0, 1, 0, 1], [1, 1, 0, 1]]]]}},
    {"kind": "multimatrix", "blocks": [1], "endo": {"multiplicities": [[0]],
                                                    "unitaries": [[[[1, 0, 0, 1]]]]}},
    {"kind": "multimatrix", "blocks": [1], "endo": {"multiplicities": [[0]],
                                                    "unitaries": [[[[0.5, 1, 0, 1]]]]}},
    {"kind": "multimatrix", "blocks": [1, 2], "endo": {"multiplicities": [[1], [0]]}},
    {"kind": "multimatrix", "blocks": [1.5], "endo": {"multiplicities": [[]]}},
    {"kind": "multimatrix", "blocks": [1], "endo": {"multiplicities": [[0]],
                                                    "unitaries": [[[[True, 1, 0, 1]]]]}},
])
def test_malformed_descriptors(bad):
    with pytest.raises(InputError):
        parse(bad)


def test_unreadable_file(tmp_path):
    with pytest.raises(InputError):
        load(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(InputError):
        load(broken)


def test_elements_serialize_as_quadruples(merge):
    a = merge.algebra.element([1, 2, 3])
    assert element_to_json(a) == [[1, 1, 0, 1], [2, 1, 0, 1], [3, 1, 0, 1]]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_multimatrix_round_trip(seed):
    A, phi = multimatrix_from(seed)
    d = serialize(System("random", A, phi))
    again = parse(json.loads(json.dumps(d)))
    assert again.phi == phi
    assert serialize(again) == d


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_partial_map_round_trip(seed):
    m = map_from(seed, 7)
    A, phi = induced_endomorphism(m)
    d = serialize(System("random", A, phi, m))
    again = parse(json.loads(json.dumps(d)))
    assert again.partial_map == m and serialize(again) == d
