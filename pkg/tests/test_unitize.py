import pytest
from hypothesis import given, settings

from stardyn.finalg import Ideal, kernel_ideal, kernel_unit
from stardyn.unitize import ideal_complement, unitize_kernel

from conftest import fn, multimatrix_from, seeds


def test_ideal_complement(const3):
    A = const3.algebra
    assert ideal_complement(A, kernel_ideal(const3.phi)).blocks == frozenset({0})
    assert ideal_complement(A, Ideal(A, frozenset())).blocks == frozenset({0, 1, 2})
    assert ideal_complement(A, Ideal(A, frozenset({0, 1, 2}))).blocks == frozenset()


@pytest.mark.parametrize("name", ["S_const3", "S_id", "S_merge", "S_shift3"])
def test_unitization_is_a_relabelling(systems, name):
    s = systems[name]
    u = unitize_kernel(s.phi)
    assert u.aplus.dim == s.algebra.dim
    assert u.check()
    assert sorted(u.order) == list(range(s.algebra.num_blocks))


def test_const3_split(const3):
    u = unitize_kernel(const3.phi)
    assert u.order == (0, 1, 2) and u.split == 1
    assert u.kernel_unit_plus() == u.embed(kernel_unit(const3.phi))


def test_identity_unitization(ident):
    u = unitize_kernel(ident.phi)
    a = fn(ident, 4)
    assert u.delta_plus(u.embed(a)) == u.embed(a)
    assert u.split == 1


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_extension_property(seed):
    A, phi = multimatrix_from(seed)
    u = unitize_kernel(phi)
    for e in A.basis():
        assert u.delta_plus(u.embed(e)) == u.embed(phi(e))
        assert u.lift(u.embed(e)) == e
    assert kernel_unit(u.delta_plus) == u.kernel_unit_plus()
