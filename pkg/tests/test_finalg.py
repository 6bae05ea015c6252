import random

import pytest
from hypothesis import given, settings

from stardyn.errors import InputError
from stardyn.finalg import (
    MultiMatrixAlgebra,
    StarEndomorphism,
    central_projections,
    classify,
    compose_endo,
    corner_algebra,
    corner_dim,
    hereditary_range_oracle,
    is_hereditary_range,
    kernel_ideal,
    kernel_unit,
    power_of_unit,
    span_dimension,
)
from stardyn.matrix import CMatrix
from stardyn.samplers import random_element, random_multimatrix_system

from conftest import fn, multimatrix_from, pointwise_delta, seeds


def test_identity_system_fixes_elements(ident):
    a = fn(ident, 7)
    assert ident.phi(a) == a


@pytest.mark.parametrize("name, expected", [
    ("S_const3", [2, 2, 2]),
    ("S_shift3", [3, 5, 0]),
    ("S_merge", [2, 2, 3]),
])
def test_apply_matches_pointwise_formula(systems, name, expected):
    s = systems[name]
    assert pointwise_delta(s.partial_map, [2, 3, 5]) == expected
    assert s.phi(fn(s, 2, 3, 5)) == fn(s, *expected)


def test_powers_of_unit(shift3, const3, merge):
    assert [power_of_unit(shift3.phi, n) for n in range(4)] == [
        fn(shift3, 1, 1, 1), fn(shift3, 1, 1, 0), fn(shift3, 1, 0, 0), fn(shift3, 0, 0, 0)]
    for n in range(6):
        assert power_of_unit(const3.phi, n) == const3.algebra.one()
    assert power_of_unit(merge.phi, 0) == merge.algebra.one()


@pytest.mark.parametrize("name, q", [("S_shift3", [1, 0, 0]), ("S_const3", [0, 1, 1]), ("S_id", [0])])
def test_kernel_unit(systems, name, q):
    s = systems[name]
    assert kernel_unit(s.phi) == fn(s, *q)
    # oracle: the kernel unit is the indicator of points outside the image
    m = s.partial_map
    assert q == [0 if x in m.image else 1 for x in m.points]


def test_kernel_ideal_blocks(const3):
    assert kernel_ideal(const3.phi).blocks == frozenset({1, 2})


def test_corner_algebras(shift3, merge):
    A, compress, embed = corner_algebra(shift3.algebra, shift3.algebra.one())
    assert A == shift3.algebra
    a = fn(shift3, 2, 3, 5)
    assert embed(compress(a)) == a
    corner, _, _ = corner_algebra(shift3.algebra, power_of_unit(shift3.phi, 2))
    assert corner.dim == 1
    corner, compress, embed = corner_algebra(merge.algebra, fn(merge, 0, 0, 1))
    assert corner.dim == 1
    assert embed(compress(fn(merge, 2, 3, 5))) == fn(merge, 0, 0, 5)


def test_corner_rejects_non_projection(merge):
    with pytest.raises(InputError):
        corner_algebra(merge.algebra, fn(merge, 2, 0, 0))


@pytest.mark.parametrize("name, expected", [("S_shift3", True), ("S_const3", False), ("S_id", True)])
def test_hereditary_range(systems, name, expected):
    phi = systems[name].phi
    assert is_hereditary_range(phi) is expected
    assert hereditary_range_oracle(phi) is expected


def test_classify_fixtures(systems):
    shift = classify(systems["S_shift3"].phi)
    assert not shift.mono and shift.complete
    assert not classify(systems["S_const3"].phi).complete
    ident = classify(systems["S_id"].phi)
    assert ident.mono and ident.epi and ident.auto and ident.complete


def test_central_projections():
    assert len(central_projections(MultiMatrixAlgebra.commutative(3))) == 8
    factor = MultiMatrixAlgebra((2,))
    assert central_projections(factor) == [factor.zero(), factor.one()] or \
        central_projections(factor) == [factor.one(), factor.zero()]


def test_central_projections_of_merge_algebra(merge):
    found = central_projections(merge.algebra)
    assert fn(merge, 0, 0, 1) in found and fn(merge, 1, 1, 0) in found


def test_central_projection_block_limit():
    with pytest.raises(InputError):
        central_projections(MultiMatrixAlgebra.commutative(5), limit=4)


def test_unitarity_is_validated():
    A = MultiMatrixAlgebra((2,))
    not_unitary = CMatrix.from_rows([[1, 1], [0, 1]])
    with pytest.raises(InputError):
        StarEndomorphism(A, A, [[0]], unitaries=[not_unitary])


def test_dimension_bookkeeping_is_validated():
    A = MultiMatrixAlgebra((1, 2))
    with pytest.raises(InputError):
        StarEndomorphism(A, A, [[1], [0]])


def test_shape_mismatch_is_rejected(merge, shift3):
    with pytest.raises(InputError):
        merge.phi(MultiMatrixAlgebra((2,)).one())


def test_non_unital_noncommutative_padding():
    A = MultiMatrixAlgebra((1, 2))
    phi = StarEndomorphism(A, A, [[0], [0]], padding=[0, 1])
    one = phi(A.one())
    assert one.block_ranks() == (1, 1)
    assert not classify(phi).unital


def test_compose_is_function_composition(shift3):
    phi = shift3.phi
    twice = compose_endo(phi, phi)
    a = fn(shift3, 2, 3, 5)
    assert twice(a) == phi(phi(a)) == fn(shift3, 5, 0, 0)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_multiplicative_and_star_preserving(seed):
    A, phi = multimatrix_from(seed)
    rng = random.Random(seed)
    a, b = random_element(rng, A), random_element(rng, A)
    assert phi(a * b) == phi(a) * phi(b)
    assert phi(a.star()) == phi(a).star()
    assert phi(a + b) == phi(a) + phi(b)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_compose_matches_sequential_application(seed):
    A, phi = multimatrix_from(seed)
    _, psi = random_multimatrix_system(random.Random(seed + 1), dims=A.block_dims)
    a = random_element(random.Random(seed), A)
    assert compose_endo(phi, psi)(a) == phi(psi(a))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_powers_of_unit_decrease(seed):
    A, phi = multimatrix_from(seed)
    for n in range(5):
        e, f = power_of_unit(phi, n), power_of_unit(phi, n + 1)
        assert f * e == f == e * f
        assert f.is_projection()


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_kernel_unit_is_central_and_killed(seed):
    A, phi = multimatrix_from(seed)
    q = kernel_unit(phi)
    assert all(q * e == e * q for e in A.basis())
    assert phi(q).is_zero()
    p = A.one() - q
    assert p + q == A.one() and (p * q).is_zero()


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_corner_dimension_matches_spanning_set(seed):
    A, phi = multimatrix_from(seed)
    e = phi(A.one())
    assert corner_dim(e) == sum(r * r for r in e.block_ranks())
    assert corner_dim(e) == span_dimension(e * f * e for f in A.basis())


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_hereditary_range_agrees_with_span_oracle(seed):
    A, phi = multimatrix_from(seed)
    one = phi(A.one())
    image = span_dimension(phi(f) for f in A.basis())
    corner = span_dimension(one * f * one for f in A.basis())
    assert is_hereditary_range(phi) == (image == corner)
