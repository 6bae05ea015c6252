"""The natural extension of a C*-dynamical system as a tower of algebras.

Level ``n`` is ``B_n = qA_0 + qA_1 + ... + qA_{n-1} + A_n`` where
``A_k = d^k(1) A d^k(1)`` and ``q`` is the kernel unit.  Slot elements are
kept as full elements of ``A`` compressed by the slot projection.  The
bonding map ``B_n -> B_{n+1}`` is

    (a_0, ..., a_{n-1}, a_n) -> (a_0, ..., a_{n-1}, q a_n, d(a_n))

and the extension carries the endomorphism ``s_{n+1} o bond`` (left shift)
together with the complete transfer operator given by the right shift
``(a_0, ..., a_n) -> (0, d(1) a_0 d(1), ..., d^{n+1}(1) a_n d^{n+1}(1))``.
"""

import os
from dataclasses import dataclass
from functools import cached_property

from .errors import ContractBreach, InputError
from .finalg import MultiMatrixAlgebra, corner_dim, kernel_unit
from .matrix import CMatrix, hstack, independent_columns, solve

__all__ = [
    "NaturalExtension",
    "LevelAlgebra",
    "TowerElement",
    "TowerReport",
    "normal_form_coordinates",
]

LEVEL_LIMIT = int(os.environ.get("STARDYN_LEVEL_LIMIT", 64))


@dataclass(frozen=True)
class LevelAlgebra:
    level: int
    projections: tuple      # one per slot, elements of A
    summands: tuple         # MultiMatrixAlgebra or None for a zero summand

    @property
    def dim(self):
        return sum(corner_dim(e) for e in self.projections)

    def slot_dims(self):
        return [corner_dim(e) for e in self.projections]


class TowerElement:
    """An element of ``B_n`` tagged with its level ``n``."""

    __slots__ = ("ext", "level", "coords")

    def __init__(self, ext, level, coords):
        self.ext = ext
        self.level = level
        self.coords = tuple(coords)

    def _align(self, other):
        if not isinstance(other, TowerElement) or other.ext is not self.ext:
            raise InputError("tower elements of different extensions")
        n = max(self.level, other.level)
        return self.ext.raise_to(self, n), self.ext.raise_to(other, n)

    def __add__(self, other):
        x, y = self._align(other)
        return TowerElement(self.ext, x.level, (a + b for a, b in zip(x.coords, y.coords)))

    def __sub__(self, other):
        x, y = self._align(other)
        return TowerElement(self.ext, x.level, (a - b for a, b in zip(x.coords, y.coords)))

    def __neg__(self):
        return TowerElement(self.ext, self.level, (-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, TowerElement):
            x, y = self._align(other)
            return TowerElement(self.ext, x.level, (_mul(a, b) for a, b in zip(x.coords, y.coords)))
        return TowerElement(self.ext, self.level, (a * other for a in self.coords))

    def __rmul__(self, other):
        return TowerElement(self.ext, self.level, (a * other for a in self.coords))

    def star(self):
        return TowerElement(self.ext, self.level, (a.star() for a in self.coords))

    def is_zero(self):
        return all(a.is_zero() for a in self.coords)

    def same_level_equal(self, other):
        return self.level == other.level and self.coords == other.coords

    def __eq__(self, other):
        if not isinstance(other, TowerElement):
            return NotImplemented
        return self.ext.equal(self, other)

    __hash__ = None

    def vec(self):
        """Stacked matrix-unit coordinates of all slots."""
        A = self.ext.algebra
        re, im = [], []
        for a in self.coords:
            r, i = A.vec(a).parts()
            re.extend(r)
            im.extend(i)
        return CMatrix.from_parts(len(re), 1, re, im)

    def __repr__(self):
        return "TowerElement(level=%d, %r)" % (self.level, list(self.coords))


def _mul(a, b):
    if a.is_zero() or b.is_zero():
        return a.algebra.zero()
    return a * b


@dataclass
class TowerReport:
    """Pass/fail per identity with the number of cases checked."""

    results: dict

    @property
    def ok(self):
        return all(r["pass"] for r in self.results.values())

    def record(self, name, passed, count):
        entry = self.results.setdefault(name, {"pass": True, "checked": 0})
        entry["pass"] = entry["pass"] and passed
        entry["checked"] += count


class NaturalExtension:
    """The tower ``B_0 -> B_1 -> ...`` of an endomorphism ``phi`` of ``A``."""

    def __init__(self, phi):
        if not phi.is_endomorphism():
            raise InputError("the natural extension needs an endomorphism")
        self.phi = phi
        self.algebra = phi.source
        self.q = kernel_unit(phi)
        self.p = self.algebra.one() - self.q
        self._powers = [self.algebra.one()]
        self._slots = {}
        self._corner_bases = {}

    # projections --------------------------------------------------------

    def power(self, k):
        """``d^k(1)``."""
        if k > LEVEL_LIMIT:
            raise InputError("level %d exceeds STARDYN_LEVEL_LIMIT=%d" % (k, LEVEL_LIMIT))
        while len(self._powers) <= k:
            self._powers.append(self.phi(self._powers[-1]))
        return self._powers[k]

    def slot_projection(self, n, k):
        if not 0 <= k <= n:
            raise InputError("slot %d out of range at level %d" % (k, n))
        key = (k, k == n)
        e = self._slots.get(key)
        if e is None:
            e = self._slots[key] = self.power(k) if k == n else self.q * self.power(k)
        return e

    def level_algebra(self, n):
        if n < 0:
            raise InputError("negative level")
        projections = tuple(self.slot_projection(n, k) for k in range(n + 1))
        summands = []
        for e in projections:
            ranks = [r for r in e.block_ranks() if r]
            summands.append(MultiMatrixAlgebra(tuple(ranks)) if ranks else None)
        return LevelAlgebra(n, projections, tuple(summands))

    def dim(self, n):
        return self.level_algebra(n).dim

    # elements -----------------------------------------------------------

    def iota(self, a):
        """``A = B_0`` inside the tower."""
        if a.algebra != self.algebra:
            raise InputError("element of a different algebra")
        return TowerElement(self, 0, (a,))

    def element(self, coords):
        """Level ``len(coords) - 1`` element; each slot must lie in its corner."""
        n = len(coords) - 1
        coords = tuple(coords)
        for k, c in enumerate(coords):
            e = self.slot_projection(n, k)
            if e * c * e != c:
                raise InputError("coordinate %d is not in its corner" % k)
        return TowerElement(self, n, coords)

    def zero(self, n=0):
        return TowerElement(self, n, (self.algebra.zero(),) * (n + 1))

    def one(self, n=0):
        return TowerElement(self, n, (self.slot_projection(n, k) for k in range(n + 1)))

    def _corner_basis(self, n, k):
        key = (k, k == n)
        cached = self._corner_bases.get(key)
        if cached is not None:
            return cached
        e = self.slot_projection(n, k)
        A = self.algebra
        spanning = []
        for f in A.basis():
            g = e * f * e
            if not g.is_zero():
                spanning.append(g)
        if spanning:
            chosen = independent_columns([A.vec(g) for g in spanning])
            basis = [spanning[i] for i in chosen]
        else:
            basis = []
        if len(basis) != corner_dim(e):
            raise ContractBreach("corner basis of the wrong size")
        self._corner_bases[key] = basis
        return basis

    def basis(self, n):
        """Basis of ``B_n``: corner bases placed in single slots."""
        zero = self.algebra.zero()
        out = []
        for k in range(n + 1):
            for f in self._corner_basis(n, k):
                coords = [zero] * (n + 1)
                coords[k] = f
                out.append(TowerElement(self, n, coords))
        return out

    # structure maps -----------------------------------------------------

    def embed_level(self, x):
        """The bonding map ``B_n -> B_{n+1}``."""
        last = x.coords[-1]
        return TowerElement(self, x.level + 1, x.coords[:-1] + (self.q * last, self.phi(last)))

    def raise_to(self, x, n):
        if n < x.level:
            raise InputError("cannot lower level %d to %d by embedding" % (x.level, n))
        while x.level < n:
            x = self.embed_level(x)
        return x

    def left_shift(self, x):
        """``s_n``: drop the first slot."""
        if x.level == 0:
            raise InputError("left shift is undefined on level 0")
        return TowerElement(self, x.level - 1, x.coords[1:])

    def right_shift(self, x):
        """``s_{*,n}``: prepend zero, compress slot ``k`` by ``d^{k+1}(1)``."""
        coords = [self.algebra.zero()]
        for k, c in enumerate(x.coords):
            e = self.power(k + 1)
            coords.append(_mul(_mul(e, c), e))
        return TowerElement(self, x.level + 1, coords)

    def ext_delta(self, x):
        return self.left_shift(self.embed_level(x))

    def ext_transfer(self, x):
        return self.right_shift(x)

    # direct-limit identification -----------------------------------------

    @cached_property
    def _range_system(self):
        A = self.algebra
        pbasis = [e for e in A.basis() if (self.q * e).is_zero()]
        if not pbasis:
            return pbasis, None
        return pbasis, hstack([A.vec(self.phi(e)) for e in pbasis])

    def preimage(self, c):
        """The unique ``b`` in ``(1 - q)A`` with ``d(b) = c``, or None."""
        A = self.algebra
        pbasis, v = self._range_system
        if v is None:
            return A.zero() if c.is_zero() else None
        coeffs = solve(v, A.vec(c))
        if coeffs is None:
            return None
        b = A.zero()
        for e, s in zip(pbasis, coeffs.column_scalars(0)):
            if s:
                b = b + e * s
        return b

    def lower(self, x):
        """A level ``n - 1`` element bonding to ``x``, or None."""
        if x.level == 0:
            return None
        n = x.level
        b = self.preimage(x.coords[-1])
        if b is None:
            return None
        y = x.coords[-2] + b
        e = self.power(n - 1)
        if e * y * e != y:
            return None
        cand = TowerElement(self, n - 1, x.coords[:-2] + (y,))
        if not self.embed_level(cand).same_level_equal(x):
            return None
        return cand

    def reduce(self, x):
        """The minimal-level representative of ``x``."""
        while True:
            y = self.lower(x)
            if y is None:
                return x
            x = y

    def equal(self, x, y):
        n = max(x.level, y.level)
        return self.raise_to(x, n).same_level_equal(self.raise_to(y, n))

    # normal form --------------------------------------------------------

    def from_transfer_sum(self, bs):
        """``sum_k T^k(iota(b_k))`` at level ``len(bs) - 1``."""
        if not bs:
            raise InputError("need at least one coefficient")
        n = len(bs) - 1
        total = self.zero(n)
        for k, b in enumerate(bs):
            term = self.iota(b)
            for _ in range(k):
                term = self.ext_transfer(term)
            total = total + self.raise_to(term, n)
        return total

    def to_coordinates(self, x, n=None):
        n = x.level if n is None else n
        return self.raise_to(x, n).coords

    def from_coordinates(self, coords):
        """Inverse of :meth:`to_coordinates`: the coefficient of slot ``k``
        (in ``qA_k`` for ``k < n``) is transported by ``T^k``."""
        n = len(coords) - 1
        bs = list(coords)
        x = self.from_transfer_sum(bs)
        if x.level != n:
            raise ContractBreach("transfer sum landed on the wrong level")
        return x

    # checks -------------------------------------------------------------

    def level_delta_matrix(self, n):
        """Matrix of ``ext_delta`` on ``B_n`` in the stacked coordinates."""
        return hstack([self.ext_delta(x).vec() for x in self.basis(n)])

    def verify_tower(self, N):
        """Shift identities and commuting squares on basis elements, levels ``<= N``."""
        if N < 1:
            raise InputError("verify_tower needs N >= 1")
        report = TowerReport({})
        for n in range(N + 1):
            bn = self.basis(n)
            bn1 = self.basis(n + 1)
            unit = self.left_shift(self.one(n + 1))
            shifted = [self.right_shift(b) for b in bn]
            ok = True
            for a in bn1:
                sa = self.left_shift(a)
                for b, sb in zip(bn, shifted):
                    if not (self.right_shift(sa * b)).same_level_equal(a * sb):
                        ok = False
            report.record("s_*(s(a) b) = a s_*(b)", ok, len(bn1) * len(bn))
            ok = all(self.left_shift(sb).same_level_equal(unit * b * unit)
                     for b, sb in zip(bn, shifted))
            report.record("s(s_*(a)) = s(1) a s(1)", ok, len(bn))
            if n >= 1:
                ok = all(self.embed_level(self.left_shift(b)).same_level_equal(
                    self.left_shift(self.embed_level(b))) for b in bn)
                report.record("bond o s = s o bond", ok, len(bn))
                ok = all(self.embed_level(self.right_shift(b)).same_level_equal(
                    self.right_shift(self.embed_level(b))) for b in self.basis(n - 1))
                report.record("bond o s_* = s_* o bond", ok, len(self.basis(n - 1)))
        return report

    def verify_transfer_axioms(self, N):
        """Module identity, complete identity and ``D T D = D`` on basis elements."""
        report = TowerReport({})
        for n in range(N + 1):
            bn = self.basis(n)
            unit_image = self.ext_delta(self.one(n))
            deltas = [self.ext_delta(x) for x in bn]
            transfers = [self.ext_transfer(y) for y in bn]
            ok = True
            for x, dx in zip(bn, deltas):
                xr = self.embed_level(x)
                for y, ty in zip(bn, transfers):
                    if not self.ext_transfer(dx * y).same_level_equal(xr * ty):
                        ok = False
            report.record("T(D(x) y) = x T(y)", ok, len(bn) ** 2)
            ok = True
            for x, tx in zip(bn, transfers):
                u = self.embed_level(unit_image)
                if not self.ext_delta(tx).same_level_equal(u * self.embed_level(x) * u):
                    ok = False
            report.record("D(T(x)) = D(1) x D(1)", ok, len(bn))
            ok = all(self.ext_delta(self.ext_transfer(dx)).same_level_equal(self.embed_level(dx))
                     for dx in deltas)
            report.record("D T D = D", ok, len(bn))
        return report

    def level_checks(self, n):
        """Completeness of ``ext_delta`` seen from level ``n``.

        The kernel of ``ext_delta`` on ``B_n`` must be ``iota(q) B_n`` (a
        unital ideal).  The range is hereditary only in the limit, so the
        corner ``D(1) B_n D(1)`` is compared with ``D(B_{n+1})``.
        """
        bn = self.basis(n)
        images = [self.ext_delta(x) for x in bn]
        kernel_dim = len(bn) - span_dimension_tower(images)
        iq = self.raise_to(self.iota(self.q), n)
        qpart = [x for x in bn if (iq * x).same_level_equal(x)]
        kernel_ok = (kernel_dim == len(qpart)
                     and all(self.ext_delta(x).is_zero() for x in qpart))
        unit = self.ext_delta(self.one(n))
        corner = [self.embed_level(unit * x * unit) for x in bn]
        upper = [self.ext_delta(y) for y in self.basis(n + 1)]
        rank_upper = span_dimension_tower(upper)
        hereditary = span_dimension_tower(upper + corner) == rank_upper
        return {"unital kernel": kernel_ok, "hereditary range": hereditary, "kernel unit": iq}

    def bonding_rank(self, n):
        return span_dimension_tower([self.embed_level(x) for x in self.basis(n)])


def span_dimension_tower(elements):
    elements = list(elements)
    if not elements:
        return 0
    return hstack([x.vec() for x in elements]).rank()


def normal_form_coordinates(phi, bs):
    """Level-``n`` coordinates of ``sum_k T^k(iota(b_k))`` computed inside ``A``.

    Inductively ``c_0 = b_0``, ``c_{k+1} = d^{k+1}(1) b_{k+1} d^{k+1}(1) + d(c_k)``;
    the coordinates are ``q c_0, ..., q c_{n-1}, c_n``.
    """
    if not bs:
        raise InputError("need at least one coefficient")
    A = phi.source
    q = kernel_unit(phi)
    unit = A.one()
    c = bs[0]
    coords = []
    for b in bs[1:]:
        coords.append(q * c)
        unit = phi(unit)
        c = unit * b * unit + phi(c)
    coords.append(c)
    return tuple(coords)
