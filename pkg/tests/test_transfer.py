from fractions import Fraction

import pytest
from hypothesis import given, settings

from stardyn.errors import InputError, NotComplete
from stardyn.finalg import classify, kernel_unit
from stardyn.pdsys import induced_endomorphism
from stardyn.transfer import (
    LinearMap,
    canonical_nondegenerate_transfer,
    complete_transfer,
    completeness_report,
    conditional_expectation,
    fiber_point_transfer,
    is_nondegenerate,
    is_transfer,
    satisfies_complete_identity,
    uniqueness_check,
)

from conftest import fn, map_from, multimatrix_from, seeds


def pointwise(system, f):
    """Linear map from a formula on point values."""
    A = system.algebra
    return LinearMap.from_function(A, lambda a: A.element(f([v for v in a.values()])))


def merge_average(v):
    return [(v[0] + v[1]) / 2, v[2], 0]


def test_merge_transfer_candidates(merge):
    phi = merge.phi
    assert is_transfer(phi, pointwise(merge, merge_average))
    assert is_transfer(phi, pointwise(merge, lambda v: [v[1], v[2], 0]))
    assert not is_transfer(phi, pointwise(merge, lambda v: [v[2], v[0], 0]))


def test_nondegeneracy(merge, shift3):
    assert is_nondegenerate(merge.phi, pointwise(merge, merge_average))
    assert is_nondegenerate(shift3.phi, pointwise(shift3, lambda v: [0, v[0], v[1]]))
    zero = pointwise(merge, lambda v: [0, 0, 0])
    assert not is_nondegenerate(merge.phi, zero, check_transfer=False)


def test_nondegeneracy_requires_a_transfer(merge):
    with pytest.raises(InputError):
        is_nondegenerate(merge.phi, pointwise(merge, lambda v: [v[2], v[0], 0]))


@pytest.mark.parametrize("name, formula", [
    ("S_merge", merge_average),
    ("S_shift3", lambda v: [0, v[0], v[1]]),
    ("S_id", lambda v: v),
])
def test_canonical_transfer(systems, name, formula):
    s = systems[name]
    tau = canonical_nondegenerate_transfer(s.phi)
    assert tau == pointwise(s, formula)
    a = fn(s, *[2, 3, 5][:len(s.partial_map)])
    assert tau(a) == s.algebra.element(formula(list(a.values())))


def test_canonical_merge_value(merge):
    tau = canonical_nondegenerate_transfer(merge.phi)
    assert tau(fn(merge, 2, 3, 5)) == fn(merge, Fraction(5, 2), 5, 0)


def test_complete_transfer(shift3, ident, const3):
    assert complete_transfer(shift3.phi) == pointwise(shift3, lambda v: [0, v[0], v[1]])
    assert complete_transfer(ident.phi) == pointwise(ident, lambda v: v)
    with pytest.raises(NotComplete) as exc:
        complete_transfer(const3.phi)
    assert exc.value.failed == ("hereditary range",)


def test_completeness_report(shift3, const3, ident):
    rep = completeness_report(shift3.phi)
    assert rep.as_dict() == {"i": True, "ii": True, "iii": True, "iv": True}
    assert rep.p == fn(shift3, 0, 1, 1)
    assert completeness_report(const3.phi).as_dict() == dict.fromkeys("i ii iii iv".split(), False)
    rep = completeness_report(ident.phi)
    assert rep.complete and rep.p == ident.algebra.one()


@pytest.mark.parametrize("name, formula", [
    ("S_merge", lambda v: [(v[0] + v[1]) / 2, (v[0] + v[1]) / 2, v[2]]),
    ("S_shift3", lambda v: [v[0], v[1], 0]),
    ("S_id", lambda v: v),
])
def test_conditional_expectation(systems, name, formula):
    s = systems[name]
    E = conditional_expectation(s.phi, canonical_nondegenerate_transfer(s.phi))
    assert E == pointwise(s, formula)


def test_non_uniqueness_witness(merge):
    lo = fiber_point_transfer(merge.phi, min)
    hi = fiber_point_transfer(merge.phi, max)
    assert lo != hi
    assert hi == pointwise(merge, lambda v: [v[1], v[2], 0])
    for tau in (lo, hi, canonical_nondegenerate_transfer(merge.phi)):
        assert is_nondegenerate(merge.phi, tau)
    assert uniqueness_check(merge.phi) == "many"


def test_uniqueness_when_complete(shift3, ident):
    assert uniqueness_check(shift3.phi) == "unique"
    assert uniqueness_check(ident.phi) == "unique"


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_canonical_transfer_is_nondegenerate(seed):
    A, phi = multimatrix_from(seed)
    tau = canonical_nondegenerate_transfer(phi)
    assert is_transfer(phi, tau)
    assert is_nondegenerate(phi, tau)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_completeness_items_agree(seed):
    _, phi = induced_endomorphism(map_from(seed))
    rep = completeness_report(phi)
    assert rep.i == rep.ii == rep.iii == rep.iv
    if rep.complete:
        A = phi.source
        tau = complete_transfer(phi)
        assert rep.p == tau(A.one()) == A.one() - kernel_unit(phi)
        assert satisfies_complete_identity(phi, tau)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_complete_transfer_is_the_only_one(seed):
    _, phi = induced_endomorphism(map_from(seed, 5))
    verdict = uniqueness_check(phi)
    if classify(phi).complete:
        assert verdict == "unique"
    else:
        assert verdict == "many"


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_noncommutative_completeness_items_agree(seed):
    _, phi = multimatrix_from(seed)
    rep = completeness_report(phi)
    assert rep.i == rep.ii == rep.iii == rep.iv
