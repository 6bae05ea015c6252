"""Kernel unitization ``A+ = (A/I) + (A/I^perp)`` for ``I = ker d``.

In a multi-matrix algebra both quotients are sums of blocks, so ``A+`` is
``A`` with its blocks reordered (non-kernel blocks first) and the
embedding ``a -> (a + I) + (a + I^perp)`` is always bijective.
"""

from dataclasses import dataclass
from typing import Callable

from .errors import ContractBreach, InputError
from .finalg import Element, MultiMatrixAlgebra, StarEndomorphism, kernel_ideal, kernel_unit

__all__ = ["ideal_complement", "unitize_kernel", "UnitizedSystem"]


def ideal_complement(algebra, ideal):
    """Largest ideal meeting ``ideal`` only in zero: the remaining blocks."""
    if ideal.algebra != algebra:
        raise InputError("ideal of a different algebra")
    return ideal.complement()


@dataclass(frozen=True)
class UnitizedSystem:
    algebra: MultiMatrixAlgebra
    aplus: MultiMatrixAlgebra
    order: tuple            # A+ block t is A block order[t]
    split: int              # blocks [0, split) are A/I, the rest A/I^perp
    delta: StarEndomorphism
    delta_plus: StarEndomorphism
    embed: Callable
    lift: Callable
    p_plus: Element

    def kernel_unit_plus(self):
        """``(0 + I) + (1 + I^perp)``."""
        return self.aplus.unit_of(range(self.split, self.aplus.num_blocks))

    def check(self):
        """Extension property, unital kernel with the stated unit, bijectivity."""
        A = self.algebra
        for e in A.basis():
            if self.delta_plus(self.embed(e)) != self.embed(self.delta(e)):
                raise ContractBreach("d+ does not extend d")
            if self.lift(self.embed(e)) != e:
                raise ContractBreach("embedding is not injective")
        for f in self.aplus.basis():
            if self.embed(self.lift(f)) != f:
                raise ContractBreach("embedding is not surjective")
        if kernel_unit(self.delta_plus) != self.kernel_unit_plus():
            raise ContractBreach("kernel unit of d+ is not (0 + I) + (1 + I^perp)")
        return True


def unitize_kernel(phi):
    if not phi.is_endomorphism():
        raise InputError("unitization needs an endomorphism")
    A = phi.source
    ker = kernel_ideal(phi)
    perp = ideal_complement(A, ker)
    order = tuple(sorted(perp.blocks)) + tuple(sorted(ker.blocks))
    split = len(perp.blocks)
    position = {j: t for t, j in enumerate(order)}
    aplus = MultiMatrixAlgebra(tuple(A.block_dims[j] for j in order))

    def embed(a):
        if a.algebra != A:
            raise InputError("element of a different algebra")
        return Element(aplus, tuple(a.blocks[j] for j in order))

    def lift(x):
        if x.algebra != aplus:
            raise InputError("element of a different algebra")
        blocks = [None] * A.num_blocks
        for t, j in enumerate(order):
            blocks[j] = x.blocks[t]
        return Element(A, tuple(blocks))

    # only the A/I component feeds d, which kills I
    mults = [[position[i] for i in phi.multiplicities[j]] for j in order]
    delta_plus = StarEndomorphism(
        aplus, aplus, mults,
        [phi.padding[j] for j in order],
        [phi.unitaries[j] for j in order],
    )
    p_plus = embed(A.one() - kernel_unit(phi))
    return UnitizedSystem(A, aplus, order, split, phi, delta_plus, embed, lift, p_plus)
