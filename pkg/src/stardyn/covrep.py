"""Covariant representations on finitely supported vectors.

Two realizations of a commutative system coming from a partial map:

* ``strict``: on ``l2(X~)`` with ``U e_p = e_{alpha~^-1 p}`` and ``pi`` the
  multiplication by the first coordinate, extended to the whole natural
  extension by evaluation at points;
* shifted copies (CLI mode ``example13``): on ``l2(X) (x) l2(N)`` with ``(U~ h)_n = U h_{n+1}``, which
  is covariant but never strict.

Bases are truncated.  A relation is only asserted on basis vectors for
which every operator word it involves stays inside the truncation; such
vectors are called certified.
"""

from dataclasses import dataclass, field

from .errors import ContractBreach, InputError
from .finalg import kernel_unit
from .matrix import CMatrix
from .natext import NaturalExtension
from .pdsys import PartialMap, induced_endomorphism
from .scalar import Scalar
from .spectral import (
    alpha_tilde,
    alpha_tilde_inv,
    enumerate_points,
    evaluate,
    in_domain,
    in_image,
)
from .transfer import complete_transfer
from .unitize import unitize_kernel

__all__ = [
    "Ext",
    "Pair",
    "SparseVector",
    "LeavesTruncation",
    "RepContext",
    "build_strict_rep",
    "build_shifted_copies_rep",
    "verify_CR",
    "structural_checks",
    "correspondence_check",
    "RELATIONS",
]

RELATIONS = ("CR1", "CR1'", "CR1''", "CR2", "CR3")


@dataclass(frozen=True)
class Ext:
    point: object

    def label(self, names):
        return self.point.label(names)


@dataclass(frozen=True)
class Pair:
    x: int
    n: int

    def label(self, names):
        return "%s@%d" % (names[self.x], self.n)


class LeavesTruncation(Exception):
    """An operator sent a vector outside the enumerated basis."""


class SparseVector:
    """Finitely supported vector ``{basis id: Scalar}`` without zero entries."""

    __slots__ = ("data",)

    def __init__(self, data=None):
        self.data = {k: v for k, v in (data or {}).items() if v}

    @classmethod
    def basis(cls, b):
        return cls({b: Scalar(1)})

    def __add__(self, other):
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, Scalar(0)) + v
        return SparseVector(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Scalar.coerce(c)
        return SparseVector({k: v * c for k, v in self.data.items()})

    def is_zero(self):
        return not self.data

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.data == other.data

    __hash__ = None

    def __repr__(self):
        return "SparseVector(%r)" % self.data


@dataclass
class RepContext:
    """A representation of a commutative system on a truncated basis."""

    mode: str
    m: PartialMap
    phi: object
    basis: tuple
    ext: NaturalExtension = None
    transfer: object = None
    elements: list = field(default_factory=list)
    _index: frozenset = None

    def __post_init__(self):
        self._index = frozenset(self.basis)

    # operators ----------------------------------------------------------

    def _check(self, b):
        if b not in self._index:
            raise LeavesTruncation(b)
        return b

    def U(self, v):
        out = {}
        for b, c in v.data.items():
            t = self._shift(b)
            if t is not None:
                t = self._check(t)
                out[t] = out.get(t, Scalar(0)) + c
        return SparseVector(out)

    def Ustar(self, v):
        out = {}
        for b, c in v.data.items():
            t = self._shift_adjoint(b)
            if t is not None:
                t = self._check(t)
                out[t] = out.get(t, Scalar(0)) + c
        return SparseVector(out)

    def _shift(self, b):
        if self.mode == "strict":
            return Ext(alpha_tilde_inv(self.m, b.point)) if in_image(b.point) else None
        pre = self.m.preimage(b.x)
        if b.n == 0 or not pre:
            return None
        return Pair(pre[0], b.n - 1)

    def _shift_adjoint(self, b):
        if self.mode == "strict":
            return Ext(alpha_tilde(self.m, b.point)) if in_domain(self.m, b.point) else None
        y = self.m.images[b.x]
        return None if y is None else Pair(y, b.n + 1)

    def value(self, x, b):
        """Diagonal entry of ``pi(x)`` at basis id ``b``; ``x`` is in A or in the tower."""
        if hasattr(x, "coords"):
            if self.mode != "strict":
                raise InputError("tower elements act only in the strict representation")
            return evaluate(x, b.point)
        point = b.point.coord(0) if self.mode == "strict" else b.x
        return x.blocks[point].entry(0, 0)

    def pi(self, x, v):
        return SparseVector({b: c * self.value(x, b) for b, c in v.data.items()})

    # algebra of the represented system -----------------------------------

    def delta(self, x):
        return self.ext.ext_delta(x) if hasattr(x, "coords") else self.phi(x)

    def transfer_of(self, x):
        if hasattr(x, "coords"):
            return self.ext.ext_transfer(x)
        if self.transfer is None:
            return None
        return self.transfer(x)

    def kernel_complement(self):
        """``1 - q`` for the represented system."""
        if self.mode == "strict":
            one = self.ext.one(0)
            return one - self.ext.iota(self.ext.q)
        A = self.phi.source
        return A.one() - kernel_unit(self.phi)


def build_strict_rep(m, depth, tower_levels=2):
    """Strict representation on ``l2(X~)`` truncated to paths of length ``<= depth``.

    Relations are tested on the matrix units of ``A`` and on tower basis
    elements of levels ``1..tower_levels``.
    """
    A, phi = induced_endomorphism(m)
    ext = NaturalExtension(phi)
    basis = tuple(Ext(p) for p in enumerate_points(m, depth))
    elements = [ext.iota(e) for e in A.basis()]
    for n in range(1, tower_levels + 1):
        elements.extend(ext.basis(n))
    return RepContext("strict", m, phi, basis, ext=ext, elements=elements)


def build_shifted_copies_rep(m, depth):
    """``pi(a) h_n = a h_n`` and ``(U~ h)_n = U h_{n+1}`` on blocks ``n <= depth``."""
    if not m.is_injective():
        raise InputError("the shifted-copies representation needs an injective map")
    A, phi = induced_endomorphism(m)
    basis = tuple(Pair(x, n) for n in range(depth + 1) for x in m.points)
    transfer = complete_transfer(phi)
    return RepContext("example13", m, phi, basis, transfer=transfer, elements=list(A.basis()))


def _relation(ctx, name, x, b):
    """``(lhs, rhs)`` applied to ``e_b``; raises LeavesTruncation near the boundary."""
    e = SparseVector.basis(b)
    if name == "CR1":
        return ctx.U(ctx.pi(x, e)), ctx.pi(ctx.delta(x), ctx.U(e))
    if name == "CR1'":
        return ctx.Ustar(ctx.U(ctx.pi(x, e))), ctx.pi(x, ctx.Ustar(ctx.U(e)))
    if name == "CR1''":
        return ctx.Ustar(ctx.U(e)), ctx.pi(ctx.kernel_complement(), e)
    if name == "CR2":
        return ctx.pi(ctx.delta(x), e), ctx.U(ctx.pi(x, ctx.Ustar(e)))
    if name == "CR3":
        t = ctx.transfer_of(x)
        if t is None:
            raise InputError("CR3 needs a transfer operator")
        return ctx.pi(t, e), ctx.Ustar(ctx.pi(x, ctx.U(e)))
    raise InputError("unknown relation %r" % (name,))


def verify_CR(ctx, flags=RELATIONS):
    """Check each relation on every certified basis vector.

    Per relation: ``status`` (pass / fail / inconclusive), number of
    certified and excluded vectors, number of (vector, element) checks and
    the first failing vector.
    """
    report = {}
    for name in flags:
        certified, excluded, checks, failures = set(), set(), 0, []
        elements = [None] if name == "CR1''" else ctx.elements
        for b in ctx.basis:
            try:
                outcomes = [_relation(ctx, name, x, b) for x in elements]
            except LeavesTruncation:
                excluded.add(b)
                continue
            certified.add(b)
            for x, (lhs, rhs) in zip(elements, outcomes):
                checks += 1
                if lhs != rhs:
                    failures.append((b, x))
        if not certified:
            status = "inconclusive"
        else:
            status = "fail" if failures else "pass"
        report[name] = {
            "status": status,
            "certified": len(certified),
            "excluded": len(excluded),
            "checks": checks,
            "witness": failures[0][0].label(ctx.m.names) if failures else None,
        }
    return report


def _diag(ctx, x, op):
    """Diagonal of ``op o pi(x)`` on certified vectors (all operators here are diagonal)."""
    out = {}
    for b in ctx.basis:
        try:
            v = op(ctx.pi(x, SparseVector.basis(b)))
        except LeavesTruncation:
            continue
        if set(v.data) - {b}:
            raise ContractBreach("expected a diagonal operator at %r" % (b,))
        out[b] = v.data.get(b, Scalar(0))
    return out


def _rank(rows):
    if not rows:
        return 0
    return CMatrix.from_rows(rows).rank()


def structural_checks(ctx):
    """Projection ``P = pi(1 - q)`` against ``U*U`` and the maps built from them."""
    A = ctx.phi.source
    basis = list(A.basis())
    q = kernel_unit(ctx.phi)
    P = A.one() - q
    checked = {}

    def UsU(v):
        return ctx.Ustar(ctx.U(v))

    def Pop(v):
        return ctx.pi(P, v)

    ident = (lambda v: v)
    sus = _diag(ctx, A.one(), UsU)
    pdiag = _diag(ctx, A.one(), Pop)
    common = [b for b in sus if b in pdiag]
    # U*U <= P for commuting diagonal projections is entrywise
    leq = all((pdiag[b] - sus[b]).re >= 0 and (pdiag[b] - sus[b]).im == 0 for b in common)
    strict_gap = [b for b in common if pdiag[b] != sus[b]]
    commute = all(ctx.pi(a, ctx.pi(P, SparseVector.basis(b)))
                  == ctx.pi(P, ctx.pi(a, SparseVector.basis(b))) for a in basis for b in ctx.basis)
    if not (leq and commute):
        raise ContractBreach("U*U <= P or P in pi(A)' fails")
    checked["U*U <= P"] = True
    checked["P commutes with pi(A)"] = True
    checked["U*U = P"] = not strict_gap
    checked["gap witness"] = strict_gap[0].label(ctx.m.names) if strict_gap else None
    if ctx.mode == "strict" and strict_gap:
        raise ContractBreach("strict representation with U*U != P")

    # {a : (1 - U*U) pi(a) = pi(a)} = ker d
    ker_blocks = {j for j, e in enumerate(basis) if ctx.phi(e).is_zero()}
    absorbed = set()
    for j, e in enumerate(basis):
        d1 = _diag(ctx, e, UsU)
        if all(v == 0 for v in d1.values()):
            absorbed.add(j)
    if absorbed != ker_blocks:
        raise ContractBreach("kernel of a -> U*U pi(a) is not ker d")
    checked["kernel of U*U pi = ker d"] = True

    # U*U pi(A) ~ d(A) via Ad U and Ad U*
    for a in basis:
        for b in ctx.basis:
            e = SparseVector.basis(b)
            try:
                lhs = ctx.Ustar(ctx.pi(ctx.phi(a), ctx.U(e)))
                rhs = ctx.Ustar(ctx.U(ctx.pi(a, e)))
                fwd = ctx.U(ctx.pi(a, ctx.Ustar(e)))
            except LeavesTruncation:
                continue
            if lhs != rhs or fwd != ctx.pi(ctx.phi(a), e):
                raise ContractBreach("U*U pi(A) and d(A) are not matched by Ad U / Ad U*")
    checked["U*U pi(A) iso d(A)"] = True

    # T1: U*U pi(a) -> P pi(a) iso, T2: (1-U*U) pi(a) -> (1-P) pi(a) epi
    def rows_of(op):
        cols = [_diag(ctx, a, op) for a in basis]
        keys = [b for b in ctx.basis if all(b in c for c in cols)]
        return [[c[b] for c in cols] for b in keys]

    r_sus, r_p = rows_of(UsU), rows_of(Pop)
    r_csus = rows_of(lambda v: v - UsU(v))
    r_cp = rows_of(lambda v: v - Pop(v))
    t1 = _rank(r_sus) == _rank(r_p) == _rank(r_sus + r_p)
    t2 = _rank(r_csus) == _rank(r_csus + r_cp)
    if not (t1 and t2):
        raise ContractBreach("T1 is not an isomorphism or T2 is not well defined")
    checked["T1 isomorphism"] = True
    checked["T2 epimorphism"] = True

    # largest ideal orthogonal to the kernel
    perp = {j for j, e in enumerate(basis) if _diag(ctx, e, Pop) == _diag(ctx, e, ident)}
    if perp != set(range(A.num_blocks)) - ker_blocks:
        raise ContractBreach("{a : P pi(a) = pi(a)} is not the complement of ker d")
    checked["I-perp"] = True

    # the (1 - U*U) pi(A) gap of non-strict representations
    complement_rank = _rank(r_csus)
    checked["dim (1 - U*U) pi(A)"] = complement_rank
    checked["dim pi(ker d)"] = len(ker_blocks)

    if ctx.mode == "strict":
        checked["unitization"] = _unitization_check(ctx)
    return checked


def _unitization_check(ctx):
    """``pi+((a + I) + (b + I^perp)) = U*U pi(a) + (1 - U*U) pi(b)`` is a strict
    representation of ``(A+, d+)`` that restricts to ``pi`` on ``A``."""
    u = unitize_kernel(ctx.phi)
    A, Ap = u.algebra, u.aplus

    def pi_plus(x, v):
        head = Ap.unit_of(range(u.split))
        tail = Ap.one() - head
        a = u.lift(head * x)
        b = u.lift(tail * x)
        usu = ctx.Ustar(ctx.U(v))
        return ctx.pi(a, usu) + ctx.pi(b, v - usu)

    qplus = u.kernel_unit_plus()
    for x in Ap.basis():
        for b in ctx.basis:
            e = SparseVector.basis(b)
            try:
                cr2 = ctx.U(pi_plus(x, ctx.Ustar(e))) == pi_plus(u.delta_plus(x), e)
                cr1pp = ctx.Ustar(ctx.U(e)) == pi_plus(Ap.one() - qplus, e)
            except LeavesTruncation:
                continue
            if not (cr2 and cr1pp):
                raise ContractBreach("pi+ is not a strict representation of the unitization")
    for a in A.basis():
        for b in ctx.basis:
            e = SparseVector.basis(b)
            try:
                if pi_plus(u.embed(a), e) != ctx.pi(a, e):
                    raise ContractBreach("pi+ does not extend pi")
            except LeavesTruncation:
                continue
    return True


def correspondence_check(ctx, coefficient_lists):
    """``pi~(sum_k T^k(a_k)) = sum_k U*^k pi(a_k) U^k`` on certified vectors."""
    if ctx.mode != "strict":
        raise InputError("the correspondence lives on the strict representation")
    ext = ctx.ext
    certified, checks = set(), 0
    for coeffs in coefficient_lists:
        x = ext.from_transfer_sum(list(coeffs))
        for b in ctx.basis:
            e = SparseVector.basis(b)
            try:
                rhs = SparseVector()
                for k, a in enumerate(coeffs):
                    v = e
                    for _ in range(k):
                        v = ctx.U(v)
                    v = ctx.pi(a, v)
                    for _ in range(k):
                        v = ctx.Ustar(v)
                    rhs = rhs + v
            except LeavesTruncation:
                continue
            lhs = ctx.pi(x, e)
            checks += 1
            certified.add(b)
            if lhs != rhs:
                return {"pass": False, "witness": b.label(ctx.m.names), "checks": checks}
    return {"pass": True, "certified": len(certified), "checks": checks}
