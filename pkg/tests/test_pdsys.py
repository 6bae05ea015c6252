import pytest
from hypothesis import given, settings

from stardyn.errors import DomainError, InputError
from stardyn.finalg import classify, kernel_unit
from stardyn.pdsys import (
    DUALITY_ROWS,
    PartialMap,
    cycles,
    duality_report,
    induced_endomorphism,
    iterate_domains,
    periodic_points,
)

from conftest import fn, map_from, pointwise_delta, seeds


def test_induced_endomorphisms(shift3, ident, const3):
    assert shift3.phi(fn(shift3, 2, 3, 5)) == fn(shift3, 3, 5, 0)
    assert ident.phi(fn(ident, 9)) == fn(ident, 9)
    assert const3.phi(fn(const3, 2, 3, 5)) == fn(const3, 2, 2, 2)


def test_iterate_domains(shift3, merge):
    m = shift3.partial_map
    assert [iterate_domains(m, n)[0] for n in (1, 2, 3)] == [{0, 1}, {0}, set()]
    m = merge.partial_map
    for n in range(5):
        assert iterate_domains(m, n)[0] == {0, 1, 2}
    assert [iterate_domains(m, n)[1] for n in (1, 2, 3)] == [{0, 1}, {0}, {0}]


def test_duality_rows(shift3, const3, ident):
    rows = {r["algebra"]: r for r in duality_report(shift3.partial_map)}
    assert rows["complete"]["algebra_value"] and rows["complete"]["map_value"]
    rows = {r["algebra"]: r for r in duality_report(const3.partial_map)}
    assert not rows["mono"]["algebra_value"] and not rows["mono"]["map_value"]
    assert all(r["algebra_value"] and r["map_value"] for r in duality_report(ident.partial_map))
    assert [(r["algebra"], r["map"]) for r in duality_report(ident.partial_map)] == list(DUALITY_ROWS)


def test_periodic_points(merge, shift3, ident):
    assert periodic_points(merge.partial_map) == {0: ((0,), 0)}
    assert periodic_points(shift3.partial_map) == {}
    assert cycles(ident.partial_map) == [(0,)]


def test_cycle_normalization():
    m = PartialMap.from_images([2, 0, 1, 3])
    assert cycles(m) == [(0, 2, 1), (3,)]
    assert periodic_points(m)[1] == ((0, 2, 1), 2)


def test_partial_map_validation():
    with pytest.raises(InputError):
        PartialMap(("a", "a"), (None, None))
    with pytest.raises(InputError):
        PartialMap.from_images([5])
    with pytest.raises(InputError):
        PartialMap.from_mapping(["a"], {"a": "b"})
    with pytest.raises(DomainError):
        PartialMap.from_images([None])(0)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_induced_endomorphism_is_pointwise(seed):
    m = map_from(seed, 7)
    A, phi = induced_endomorphism(m)
    values = list(range(2, 2 + len(m)))
    assert phi(A.element(values)) == A.element(pointwise_delta(m, values))
    assert classify(phi).unital == m.is_total()
    assert [v.re for v in kernel_unit(phi).values()] == [0 if x in m.image else 1 for x in m.points]


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_duality_table(seed):
    duality_report(map_from(seed, 7))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_periodic_points_by_iteration(seed):
    m = map_from(seed, 7)
    found = periodic_points(m)
    for x in m.points:
        y, on_cycle = x, False
        for _ in range(len(m)):
            if m.images[y] is None:
                break
            y = m.images[y]
            if y == x:
                on_cycle = True
                break
        assert (x in found) == on_cycle
