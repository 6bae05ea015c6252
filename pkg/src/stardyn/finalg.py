"""Finite-dimensional C*-algebras as direct sums of full matrix algebras.

An algebra is described by its block sizes ``[n_1, ..., n_B]``; an element
is a tuple of square Gaussian-rational matrices, one per block.  Every
*-homomorphism between such algebras is encoded in Bratteli normal form:
for each target block a list of source blocks (with repetition), an amount
of zero padding and a unitary conjugator.
"""

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import ContractBreach, InputError
from .matrix import CMatrix, hstack
from .scalar import Scalar

__all__ = [
    "MultiMatrixAlgebra",
    "Element",
    "Ideal",
    "StarEndomorphism",
    "Classification",
    "apply_endo",
    "compose_endo",
    "power_of_unit",
    "kernel_ideal",
    "kernel_unit",
    "corner_algebra",
    "is_hereditary_range",
    "hereditary_range_oracle",
    "classify",
    "central_projections",
    "span_dimension",
]

CENTRAL_PROJECTION_BLOCK_LIMIT = int(os.environ.get("STARDYN_BLOCK_LIMIT", 20))


@dataclass(frozen=True)
class MultiMatrixAlgebra:
    """``M_{n_1} + ... + M_{n_B}`` over Q(i)."""

    block_dims: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if any(n <= 0 for n in dims):
            raise InputError("block sizes must be positive: %r" % (dims,))
        object.__setattr__(self, "block_dims", dims)

    @classmethod
    def commutative(cls, n):
        """Functions on an ``n``-point set."""
        return cls((1,) * n)

    @property
    def num_blocks(self):
        return len(self.block_dims)

    @property
    def dim(self):
        return sum(n * n for n in self.block_dims)

    def is_commutative(self):
        return all(n == 1 for n in self.block_dims)

    def offsets(self):
        return _offsets(self.block_dims)

    def zero(self):
        return Element(self, tuple(CMatrix.zeros(n) for n in self.block_dims))

    def one(self):
        return Element(self, tuple(CMatrix.identity(n) for n in self.block_dims))

    def block_unit(self, j):
        return self.unit_of([j])

    def unit_of(self, blocks):
        blocks = set(blocks)
        return Element(self, tuple(CMatrix.identity(n) if j in blocks else CMatrix.zeros(n)
                                   for j, n in enumerate(self.block_dims)))

    def element(self, data):
        """Build an element.

        ``data`` is either a list of matrices (nested lists / CMatrix), one
        per block, or, for a commutative algebra, a flat list of scalars.
        """
        if len(data) != self.num_blocks:
            raise InputError("expected %d blocks, got %d" % (self.num_blocks, len(data)))
        blocks = []
        for n, b in zip(self.block_dims, data):
            if isinstance(b, CMatrix):
                m = b
            elif isinstance(b, (list, tuple)):
                m = CMatrix.from_rows(b)
            else:
                m = CMatrix.from_rows([[b]])
            if m.shape != (n, n):
                raise InputError("block of shape %s where %dx%d expected" % (m.shape, n, n))
            blocks.append(m)
        return Element(self, tuple(blocks))

    def matrix_unit(self, j, r, c):
        return _matrix_units(self.block_dims)[(j, r, c)]

    def basis(self):
        """Matrix units ``E^{(j)}_{rc}`` in block-major, row-major order."""
        return _basis(self)

    def vec(self, a):
        """Coordinates of ``a`` in :meth:`basis` as a ``dim x 1`` CMatrix."""
        re, im = [], []
        for b in a.blocks:
            r, i = b.parts()
            re.extend(r)
            im.extend(i)
        return CMatrix.from_parts(len(re), 1, re, im)

    def unvec(self, col):
        re, im = col.parts()
        blocks = []
        off = 0
        for n in self.block_dims:
            k = n * n
            blocks.append(CMatrix.from_parts(n, n, re[off:off + k], im[off:off + k]))
            off += k
        return Element(self, tuple(blocks))

    def __repr__(self):
        return "MultiMatrixAlgebra(%s)" % list(self.block_dims)


@lru_cache(maxsize=None)
def _offsets(dims):
    out, acc = [], 0
    for n in dims:
        out.append(acc)
        acc += n * n
    return tuple(out)


@lru_cache(maxsize=None)
def _matrix_units(dims):
    alg = MultiMatrixAlgebra(dims)
    units = {}
    for j, n in enumerate(dims):
        for r in range(n):
            for c in range(n):
                blocks = []
                for k, m in enumerate(dims):
                    if k == j:
                        rows = [[1 if (i, l) == (r, c) else 0 for l in range(m)] for i in range(m)]
                        blocks.append(CMatrix.from_real(rows))
                    else:
                        blocks.append(CMatrix.zeros(m))
                units[(j, r, c)] = Element(alg, tuple(blocks))
    return units


@lru_cache(maxsize=None)
def _basis(alg):
    units = _matrix_units(alg.block_dims)
    return tuple(units[(j, r, c)] for j, n in enumerate(alg.block_dims)
                 for r in range(n) for c in range(n))


class Element:
    """An element of a :class:`MultiMatrixAlgebra` (immutable)."""

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra, blocks):
        self.algebra = algebra
        self.blocks = tuple(blocks)

    def _check(self, other):
        if not isinstance(other, Element) or other.algebra != self.algebra:
            raise InputError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, tuple(x + y for x, y in zip(self.blocks, other.blocks)))

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, tuple(x - y for x, y in zip(self.blocks, other.blocks)))

    def __neg__(self):
        return Element(self.algebra, tuple(-x for x in self.blocks))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.algebra, tuple(x @ y for x, y in zip(self.blocks, other.blocks)))
        c = Scalar.coerce(other)
        return Element(self.algebra, tuple(x.scale(c) for x in self.blocks))

    def __rmul__(self, other):
        c = Scalar.coerce(other)
        return Element(self.algebra, tuple(x.scale(c) for x in self.blocks))

    def star(self):
        return Element(self.algebra, tuple(x.adjoint() for x in self.blocks))

    def is_zero(self):
        return all(b.is_zero() for b in self.blocks)

    def is_projection(self):
        return self.star() == self and self * self == self

    def is_central(self):
        """Commutes with every matrix unit."""
        return all(self * e == e * self for e in self.algebra.basis())

    def block_ranks(self):
        return tuple(b.rank() for b in self.blocks)

    def values(self):
        """Scalar values of an element of a commutative algebra."""
        if not self.algebra.is_commutative():
            raise InputError("values() needs a commutative algebra")
        return [b.entry(0, 0) for b in self.blocks]

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.blocks == other.blocks

    __hash__ = None

    def __repr__(self):
        if self.algebra.is_commutative():
            return "Element(%s)" % ", ".join(str(v) for v in self.values())
        return "Element(%r)" % ([[[str(v) for v in r] for r in b.rows()] for b in self.blocks],)


@dataclass(frozen=True)
class Ideal:
    """An ideal of a multi-matrix algebra, i.e. a sum of blocks."""

    algebra: MultiMatrixAlgebra
    blocks: frozenset

    def __post_init__(self):
        blocks = frozenset(int(b) for b in self.blocks)
        if not blocks <= set(range(self.algebra.num_blocks)):
            raise InputError("block index out of range in %r" % (sorted(blocks),))
        object.__setattr__(self, "blocks", blocks)

    def unit(self):
        return self.algebra.unit_of(self.blocks)

    @property
    def dim(self):
        return sum(self.algebra.block_dims[j] ** 2 for j in self.blocks)

    def contains(self, a):
        return all(b.is_zero() for j, b in enumerate(a.blocks) if j not in self.blocks)

    def complement(self):
        return Ideal(self.algebra, frozenset(range(self.algebra.num_blocks)) - self.blocks)


class StarEndomorphism:
    """A *-homomorphism in Bratteli normal form.

    ``multiplicities[j]`` lists source blocks (repeats allowed) placed along
    the diagonal of target block ``j``, followed by ``padding[j]`` zeros;
    the result is conjugated by the unitary ``unitaries[j]``::

        phi(a)_j = W_j diag(a_{i_1}, ..., a_{i_k}, 0_{r_j}) W_j^*
    """

    def __init__(self, source, target, multiplicities, padding=None, unitaries=None):
        self.source = source
        self.target = target
        self.multiplicities = tuple(tuple(int(i) for i in m) for m in multiplicities)
        if len(self.multiplicities) != target.num_blocks:
            raise InputError("need one multiplicity list per target block")
        for m in self.multiplicities:
            if any(not 0 <= i < source.num_blocks for i in m):
                raise InputError("source block index out of range in %r" % (m,))
        sizes = [sum(source.block_dims[i] for i in m) for m in self.multiplicities]
        if padding is None:
            padding = [n - s for n, s in zip(target.block_dims, sizes)]
        self.padding = tuple(int(r) for r in padding)
        for n, s, r in zip(target.block_dims, sizes, self.padding):
            if r < 0 or s + r != n:
                raise InputError("dimension bookkeeping fails: %d + %d != %d" % (s, r, n))
        if unitaries is None:
            unitaries = [None] * target.num_blocks
        ws = []
        for n, w in zip(target.block_dims, unitaries):
            if w is None:
                w = CMatrix.identity(n)
            elif not isinstance(w, CMatrix):
                w = CMatrix.from_rows(w)
            if w.shape != (n, n):
                raise InputError("unitary of shape %s for a block of size %d" % (w.shape, n))
            if w.adjoint() @ w != CMatrix.identity(n):
                raise InputError("conjugator is not unitary")
            ws.append(w)
        self.unitaries = tuple(ws)
        self._isometries = tuple(self._build_isometries(j) for j in range(target.num_blocks))
        self._matrix = None

    def _build_isometries(self, j):
        # V_k = W_j E_k where E_k embeds source block i_k at its diagonal offset
        n = self.target.block_dims[j]
        out = []
        off = 0
        for i in self.multiplicities[j]:
            s = self.source.block_dims[i]
            rows = [[1 if r == off + c else 0 for c in range(s)] for r in range(n)]
            v = self.unitaries[j] @ CMatrix.from_real(rows)
            out.append((i, v.real, v.real.transpose()))
            off += s
        return out

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, algebra, [[j] for j in range(algebra.num_blocks)])

    def is_endomorphism(self):
        return self.source == self.target

    def __call__(self, a):
        return apply_endo(self, a)

    def total_multiplicity(self, i):
        return sum(m.count(i) for m in self.multiplicities)

    def matrix(self):
        """Matrix of the underlying linear map in the matrix-unit bases."""
        if self._matrix is None:
            self._matrix = hstack([self.target.vec(self(e)) for e in self.source.basis()])
        return self._matrix

    def __eq__(self, other):
        if not isinstance(other, StarEndomorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and all(self(e) == other(e) for e in self.source.basis()))

    __hash__ = None

    def __repr__(self):
        return "StarEndomorphism(%s -> %s, mult=%s, pad=%s)" % (
            list(self.source.block_dims), list(self.target.block_dims),
            [list(m) for m in self.multiplicities], list(self.padding))


def apply_endo(phi, a):
    """Evaluate ``phi(a)``."""
    if not isinstance(a, Element) or a.algebra != phi.source:
        raise InputError("element does not belong to the source algebra")
    blocks = []
    for j, n in enumerate(phi.target.block_dims):
        acc = None
        for i, v, vt in phi._isometries[j]:
            term = v * a.blocks[i].real * vt
            acc = term if acc is None else acc + term
        blocks.append(CMatrix(n, n, acc) if acc is not None else CMatrix.zeros(n))
    return Element(phi.target, tuple(blocks))


def compose_endo(phi, psi):
    """``phi o psi`` (apply ``psi`` first) in Bratteli normal form."""
    if psi.target != phi.source:
        raise InputError("cannot compose: %r after %r" % (phi, psi))
    mults, pads, ws = [], [], []
    sdims = psi.source.block_dims
    for j, n in enumerate(phi.target.block_dims):
        # diagonal segments of blockdiag(psi(a)_{k_1}, ..., 0) before reordering
        segments = []
        conj = []
        for k in phi.multiplicities[j]:
            for i in psi.multiplicities[k]:
                segments.append(("src", i, sdims[i]))
            segments.append(("pad", None, psi.padding[k]))
            conj.append(psi.unitaries[k])
        segments.append(("pad", None, phi.padding[j]))
        conj.append(CMatrix.identity(phi.padding[j]) if phi.padding[j] else None)
        positions, order_src, order_pad = 0, [], []
        for kind, i, size in segments:
            idx = list(range(positions, positions + size))
            (order_src if kind == "src" else order_pad).extend(idx)
            positions += size
        order = order_src + order_pad
        perm = [[1 if r == order[c] else 0 for c in range(n)] for r in range(n)]
        d = _block_diag_unitaries([c for c in conj if c is not None], n)
        ws.append(phi.unitaries[j] @ d @ CMatrix.from_real(perm))
        mults.append([i for kind, i, _ in segments if kind == "src"])
        pads.append(sum(size for kind, _, size in segments if kind == "pad"))
    return StarEndomorphism(psi.source, phi.target, mults, pads, ws)


def _block_diag_unitaries(mats, n):
    rows = [[Scalar(0)] * n for _ in range(n)]
    off = 0
    for m in mats:
        for r, row in enumerate(m.rows()):
            rows[off + r][off:off + m.ncols] = row
        off += m.nrows
    if off != n:
        raise ContractBreach("unitary bookkeeping mismatch")
    return CMatrix.from_rows(rows, ncols=n)


def endo_power(phi, n):
    """``phi^n`` as a StarEndomorphism (``n = 0`` gives the identity)."""
    if not phi.is_endomorphism():
        raise InputError("powers need an endomorphism")
    out = StarEndomorphism.identity(phi.source)
    for _ in range(n):
        out = compose_endo(phi, out)
    return out


def power_of_unit(phi, n):
    """The projection ``phi^n(1)``."""
    if not phi.is_endomorphism():
        raise InputError("powers need an endomorphism")
    x = phi.source.one()
    for _ in range(n):
        x = phi(x)
    return x


def kernel_ideal(phi):
    return Ideal(phi.source, frozenset(i for i in range(phi.source.num_blocks)
                                       if phi.total_multiplicity(i) == 0))


def kernel_unit(phi):
    """The unit ``q`` of ``ker phi`` (a central projection)."""
    return kernel_ideal(phi).unit()


def corner_algebra(algebra, e):
    """The corner ``eAe`` of a projection ``e``.

    Returns ``(corner, compress, embed)``: the abstract multi-matrix algebra
    whose blocks have the per-block ranks of ``e``, the compression
    ``a -> e a e`` and the inclusion of ``eAe`` into ``A``.  Corner elements
    are kept as elements of ``A``.
    """
    if e.algebra != algebra or not e.is_projection():
        raise InputError("corner_algebra needs a projection of the algebra")
    ranks = [r for r in e.block_ranks() if r > 0]
    corner = MultiMatrixAlgebra(tuple(ranks)) if ranks else None

    def compress(a):
        return e * a * e

    def embed(x):
        if compress(x) != x:
            raise InputError("element is not in the corner")
        return x

    return corner, compress, embed


def corner_dim(e):
    return sum(r * r for r in e.block_ranks())


def span_dimension(elements):
    """Complex dimension of the linear span of a list of elements."""
    elements = list(elements)
    if not elements:
        return 0
    return hstack([e.algebra.vec(e) for e in elements]).rank()


def is_hereditary_range(phi):
    """``dim phi(A) == dim phi(1) A phi(1)`` for an endomorphism ``phi``."""
    if not phi.is_endomorphism():
        raise InputError("hereditary range is defined for endomorphisms")
    range_dim = phi.source.dim - kernel_ideal(phi).dim
    return range_dim == corner_dim(phi(phi.source.one()))


def hereditary_range_oracle(phi):
    """Brute-force twin of :func:`is_hereditary_range` via linear spans."""
    A = phi.source
    one = phi(A.one())
    img = span_dimension(phi(e) for e in A.basis())
    corner = span_dimension(one * e * one for e in A.basis())
    return img == corner


@dataclass(frozen=True)
class Classification:
    mono: bool
    epi: bool
    auto: bool
    unital: bool
    unital_kernel: bool
    hereditary_range: bool
    complete: bool

    def as_dict(self):
        return dict(self.__dict__)


def classify(phi):
    if not phi.is_endomorphism():
        raise InputError("classify needs an endomorphism")
    A = phi.source
    ker = kernel_ideal(phi)
    q = ker.unit()
    # every ideal of a multi-matrix algebra is a sum of blocks, hence unital
    if not (all(q * e == e == e * q for e in A.basis() if ker.contains(e)) and phi(q).is_zero()):
        raise ContractBreach("kernel unit is not a unit of the kernel")
    unital_kernel = True
    mono = not ker.blocks
    epi = A.dim - ker.dim == A.dim
    hereditary = is_hereditary_range(phi)
    return Classification(
        mono=mono,
        epi=epi,
        auto=mono and epi,
        unital=phi(A.one()) == A.one(),
        unital_kernel=unital_kernel,
        hereditary_range=hereditary,
        complete=unital_kernel and hereditary,
    )


def central_projections(algebra, limit=None):
    """All ``2^B`` central projections (sums of block units)."""
    limit = CENTRAL_PROJECTION_BLOCK_LIMIT if limit is None else limit
    if algebra.num_blocks > limit:
        raise InputError("%d blocks exceed the central projection search limit %d"
                         % (algebra.num_blocks, limit))
    out = []
    for bits in itertools.product((0, 1), repeat=algebra.num_blocks):
        out.append(algebra.unit_of([j for j, b in enumerate(bits) if b]))
    return out
