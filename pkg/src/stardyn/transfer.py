"""Transfer operators of finite-dimensional C*-dynamical systems.

A transfer operator for an endomorphism ``d`` of ``A`` is a positive linear
map ``t`` with ``t(d(a) b) = a t(b)``.  It is non-degenerate when
``d t d = d`` and complete when ``d t (a) = d(1) a d(1)``.  This module
builds the canonical non-degenerate transfer, the complete transfer when
it exists, and decides completeness four independent ways.
"""

import random
from dataclasses import dataclass, field

from .errors import ContractBreach, InputError, NotComplete
from .finalg import (
    Element,
    central_projections,
    classify,
    corner_dim,
    hereditary_range_oracle,
    kernel_unit,
    span_dimension,
)
from .matrix import CMatrix, hstack, is_psd, left_inverse, real_nullity, real_solve, solve
from .scalar import Scalar

__all__ = [
    "LinearMap",
    "TransferCandidate",
    "CompletenessReport",
    "is_transfer",
    "is_nondegenerate",
    "satisfies_complete_identity",
    "canonical_nondegenerate_transfer",
    "complete_transfer",
    "completeness_report",
    "conditional_expectation",
    "fiber_point_transfer",
    "uniqueness_check",
]


class LinearMap:
    """A linear map ``A -> A`` stored as its matrix in the matrix-unit basis."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra, matrix):
        if matrix.shape != (algebra.dim, algebra.dim):
            raise InputError("matrix of shape %s for an algebra of dimension %d"
                             % (matrix.shape, algebra.dim))
        self.algebra = algebra
        self.matrix = matrix

    @classmethod
    def from_function(cls, algebra, f):
        return cls(algebra, hstack([algebra.vec(f(e)) for e in algebra.basis()]))

    def __call__(self, a):
        if a.algebra != self.algebra:
            raise InputError("element of a different algebra")
        return self.algebra.unvec(self.matrix @ self.algebra.vec(a))

    def then(self, other):
        """``other o self``."""
        return type(self)(self.algebra, other.matrix @ self.matrix)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.algebra == other.algebra and self.matrix == other.matrix

    __hash__ = None

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, self.matrix)


class TransferCandidate(LinearMap):
    """A linear map proposed as a transfer operator; nothing is assumed."""


def _delta_map(phi):
    return LinearMap(phi.source, phi.matrix())


def _positivity_family(algebra, samples, seed):
    basis = algebra.basis()
    by_block = {}
    for e in basis:
        j = next(k for k, b in enumerate(e.blocks) if not b.is_zero())
        by_block.setdefault(j, []).append(e)
    family = list(basis)
    i = Scalar(0, 1)
    for group in by_block.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                family.append(group[a] + group[b])
                family.append(group[a] + group[b] * i)
    rng = random.Random(seed)
    for _ in range(samples):
        x = algebra.zero()
        for e in basis:
            c = Scalar(rng.randint(-3, 3), rng.randint(-3, 3))
            if c:
                x = x + e * c
        family.append(x)
    return family


def _is_positive_element(a):
    return all(is_psd(b) for b in a.blocks)


def _module_identity_holds(phi, tau):
    basis = phi.source.basis()
    images = [tau(b) for b in basis]
    for a in basis:
        da = phi(a)
        for b, tb in zip(basis, images):
            if tau(da * b) != a * tb:
                return False
    return True


def is_transfer(phi, tau, samples=4, seed=0):
    """``tau`` is *-preserving, positive and satisfies ``tau(d(a) b) = a tau(b)``.

    Positivity is tested exactly on ``tau(x* x)`` for matrix units, sums of
    pairs of matrix units in a common block (with real and imaginary
    coefficient) and ``samples`` seeded random elements.
    """
    A = phi.source
    if tau.algebra != A:
        raise InputError("transfer candidate acts on a different algebra")
    for e in A.basis():
        if tau(e.star()) != tau(e).star():
            return False
    for x in _positivity_family(A, samples, seed):
        if not _is_positive_element(tau(x.star() * x)):
            return False
    return _module_identity_holds(phi, tau)


def is_nondegenerate(phi, tau, check_transfer=True):
    """``d t d = d``, checked together with ``d(t(1)) = d(1)``.

    Both conditions are evaluated independently; a transfer operator
    satisfies both or neither, so disagreement raises ContractBreach.
    """
    if check_transfer and not is_transfer(phi, tau):
        raise InputError("candidate is not a transfer operator")
    A = phi.source
    dtd = all(phi(tau(phi(e))) == phi(e) for e in A.basis())
    unit = phi(tau(A.one())) == phi(A.one())
    if dtd != unit:
        raise ContractBreach("d t d = d is %s but d(t(1)) = d(1) is %s" % (dtd, unit))
    return dtd


def satisfies_complete_identity(phi, tau):
    """``d(t(a)) = d(1) a d(1)`` on every basis element."""
    one = phi(phi.source.one())
    return all(phi(tau(e)) == one * e * one for e in phi.source.basis())


def _support_basis(phi):
    """Matrix units spanning ``pA`` where ``p = 1 - q``."""
    q = kernel_unit(phi)
    return [e for e in phi.source.basis() if (q * e).is_zero()]


def _restricted_image(phi):
    pbasis = _support_basis(phi)
    A = phi.source
    if not pbasis:
        return pbasis, None
    return pbasis, hstack([A.vec(phi(e)) for e in pbasis])


def _zero_map(algebra):
    return TransferCandidate(algebra, CMatrix.zeros(algebra.dim))


def _compressed(phi):
    A = phi.source
    one = phi(A.one())
    return hstack([A.vec(one * e * one) for e in A.basis()])


def _embedding(algebra, basis):
    # columns: vec of each chosen basis element inside A
    return hstack([algebra.vec(e) for e in basis])


def canonical_nondegenerate_transfer(phi):
    """``t(a) = d^-1(E(d(1) a d(1)))`` with ``E`` the trace-orthogonal
    conditional expectation onto ``d(A)`` and ``d^-1`` the inverse of ``d``
    restricted to ``(1 - q)A``."""
    A = phi.source
    pbasis, v = _restricted_image(phi)
    if v is None:
        return _zero_map(A)
    coeffs = left_inverse(v) @ _compressed(phi)
    return TransferCandidate(A, _embedding(A, pbasis) @ coeffs)


def complete_transfer(phi):
    """``t(a) = d^-1(d(1) a d(1))``; raises NotComplete when the system is not complete."""
    A = phi.source
    report = classify(phi)
    failed = [name for name, ok in (("unital kernel", report.unital_kernel),
                                    ("hereditary range", report.hereditary_range)) if not ok]
    if failed:
        raise NotComplete(failed)
    pbasis, v = _restricted_image(phi)
    if v is None:
        return _zero_map(A)
    coeffs = solve(v, _compressed(phi))
    if coeffs is None:
        raise ContractBreach("complete system whose corner is not in the range")
    return TransferCandidate(A, _embedding(A, pbasis) @ coeffs)


def _complete_formula_candidate(phi):
    """The complete-transfer formula where it makes sense, else None."""
    pbasis, v = _restricted_image(phi)
    if v is None:
        return _zero_map(phi.source)
    coeffs = solve(v, _compressed(phi))
    if coeffs is None:
        return None
    return TransferCandidate(phi.source, _embedding(phi.source, pbasis) @ coeffs)


def conditional_expectation(phi, tau):
    """``E = d o t`` after checking idempotence, positivity and the bimodule law."""
    if not is_nondegenerate(phi, tau, check_transfer=False):
        raise InputError("conditional expectation needs a non-degenerate transfer")
    A = phi.source
    E = tau.then(_delta_map(phi))
    if E.then(E) != E:
        raise ContractBreach("d o t is not idempotent")
    for x in _positivity_family(A, 2, 1):
        if not _is_positive_element(E(x.star() * x)):
            raise ContractBreach("d o t is not positive")
    range_span = [phi(e) for e in A.basis()]
    for a in A.basis():
        Ea = E(a)
        for x in range_span:
            if E(x * a) != x * Ea or E(a * x) != Ea * x:
                raise ContractBreach("d o t is not a d(A)-bimodule map")
    for x in range_span:
        if E(x) != x:
            raise ContractBreach("d o t does not fix d(A)")
    return E


def _alpha_of(phi):
    """Recover the partial map of a commutative system: target point -> source point."""
    if not phi.source.is_commutative():
        raise InputError("needs a commutative algebra")
    alpha = {}
    for x, m in enumerate(phi.multiplicities):
        if len(m) > 1:
            raise InputError("not induced by a partial map")
        if m:
            alpha[x] = m[0]
    return alpha


def fiber_point_transfer(phi, pick=min):
    """``t(a)(y) = a(pick(fiber of y))`` on the range of a commutative system.

    Any choice of one point per fiber gives a non-degenerate transfer
    operator; distinct choices differ exactly when the map is not injective.
    """
    A = phi.source
    alpha = _alpha_of(phi)
    fibers = {}
    for x, y in alpha.items():
        fibers.setdefault(y, []).append(x)
    rows = [[0] * A.dim for _ in range(A.dim)]
    for y, xs in fibers.items():
        rows[y][pick(xs)] = 1
    return TransferCandidate(A, CMatrix.from_real(rows))


# linear-system views ------------------------------------------------------

def _left_mult_matrix(a):
    A = a.algebra
    return hstack([A.vec(a * e) for e in A.basis()])


class _System:
    """Real linear constraints on the complex ``d x d`` matrix of a map ``T``.

    Unknowns are ``Re T`` then ``Im T``, row-major.
    """

    def __init__(self, d):
        self.d = d
        self.rows = []
        self.rhs = []

    def _coeffs(self, p, c):
        # coefficients of (P T c)_i over the real unknowns, real and imaginary part
        d = self.d
        pr = p.rows()
        cv = c.column_scalars(0)
        out = []
        for i in range(p.nrows):
            re_row = [0] * (2 * d * d)
            im_row = [0] * (2 * d * d)
            for k in range(d):
                pik = pr[i][k]
                if not pik:
                    continue
                for l in range(d):
                    w = pik * cv[l]
                    if not w:
                        continue
                    # w * (x + iy) = (w.re x - w.im y) + i (w.im x + w.re y)
                    u = k * d + l
                    re_row[u] += w.re
                    re_row[d * d + u] -= w.im
                    im_row[u] += w.im
                    im_row[d * d + u] += w.re
            out.append((re_row, im_row))
        return out

    def add(self, terms, rhs=None):
        """Constrain ``sum(P @ T @ c for P, c in terms) == rhs``."""
        total = None
        for p, c in terms:
            part = self._coeffs(p, c)
            if total is None:
                total = part
            else:
                total = [([x + y for x, y in zip(r0, r1)], [x + y for x, y in zip(i0, i1)])
                         for (r0, i0), (r1, i1) in zip(total, part)]
        values = rhs.column_scalars(0) if rhs is not None else [Scalar(0)] * len(total)
        for (re_row, im_row), v in zip(total, values):
            for row, val in ((re_row, v.re), (im_row, v.im)):
                if any(row) or val:
                    self.rows.append(row)
                    self.rhs.append(val)

    def nullity(self):
        return real_nullity(self.rows, 2 * self.d * self.d)

    def solve(self):
        if not self.rows:
            return [0] * (2 * self.d * self.d)
        return real_solve(self.rows, self.rhs, 2 * self.d * self.d)


def _module_constraints(phi, system):
    A = phi.source
    ident = CMatrix.identity(A.dim)
    basis = A.basis()
    for a in basis:
        da = phi(a)
        la = _left_mult_matrix(a)
        for b in basis:
            system.add([(ident, A.vec(da * b)), (-la, A.vec(b))])


def _star_constraints(phi, system):
    # T(e*) = T(e)* is real-linear: vec(T(e)*) is a permutation of conj(T col e)
    A = phi.source
    d = A.dim
    basis = A.basis()
    star_idx = []
    for e in basis:
        s = e.star()
        star_idx.append(next(i for i, f in enumerate(basis) if f == s))
    for j in range(d):
        sj = star_idx[j]
        for i in range(d):
            si = star_idx[i]
            # T[i][sj] = conj(T[si][j])
            re_row = [0] * (2 * d * d)
            im_row = [0] * (2 * d * d)
            re_row[i * d + sj] += 1
            re_row[si * d + j] -= 1
            im_row[d * d + i * d + sj] += 1
            im_row[d * d + si * d + j] += 1
            for row in (re_row, im_row):
                if any(row):
                    system.rows.append(row)
                    system.rhs.append(0)


def _linear_complete_exists(phi):
    """Exact feasibility of module identity plus the complete identity."""
    A = phi.source
    system = _System(A.dim)
    _module_constraints(phi, system)
    D = phi.matrix()
    one = phi(A.one())
    for e in A.basis():
        system.add([(D, A.vec(e))], rhs=A.vec(one * e * one))
    return system.solve() is not None


def uniqueness_check(phi):
    """Solution count of module identity + *-preservation + ``d t d = d``.

    Returns ``"none"``, ``"unique"`` or ``"many"``.  Exhaustive, so only
    offered for commutative algebras.
    """
    A = phi.source
    if not A.is_commutative():
        raise InputError("exhaustive uniqueness check needs a commutative algebra")
    system = _System(A.dim)
    _module_constraints(phi, system)
    _star_constraints(phi, system)
    D = phi.matrix()
    for e in A.basis():
        system.add([(D, phi.matrix() @ A.vec(e))], rhs=A.vec(phi(e)))
    if system.solve() is None:
        return "none"
    return "unique" if system.nullity() == 0 else "many"


@dataclass
class CompletenessReport:
    """The four equivalent completeness criteria, each decided on its own."""

    i: bool
    ii: bool
    iii: bool
    iv: bool
    p: Element = None
    witnesses: dict = field(default_factory=dict)

    @property
    def complete(self):
        return self.i

    def as_dict(self):
        return {"i": self.i, "ii": self.ii, "iii": self.iii, "iv": self.iv}


def _bijective_on_corner(phi, p):
    """``d`` maps ``pA`` bijectively onto ``d(A)``."""
    A = phi.source
    pa = [p * e * p for e in A.basis()]
    dim_pa = span_dimension(pa)
    dim_img_pa = span_dimension(phi(x) for x in pa)
    dim_img = span_dimension(phi(e) for e in A.basis())
    return dim_pa == dim_img_pa == dim_img


def completeness_report(phi, exhaustive=None):
    """Decide completeness via the classification, complete-transfer search,
    canonical transfer + hereditary range, and central-projection search.

    ``exhaustive`` adds the linear-system search for a complete transfer
    (default: on for commutative algebras).
    """
    A = phi.source
    if exhaustive is None:
        exhaustive = A.is_commutative()
    witnesses = {}

    item_i = classify(phi).complete

    found = []
    for name, cand in (("canonical", canonical_nondegenerate_transfer(phi)),
                       ("complete formula", _complete_formula_candidate(phi))):
        if cand is not None and satisfies_complete_identity(phi, cand) \
                and _module_identity_holds(phi, cand):
            found.append(name)
    item_ii = bool(found)
    witnesses["complete transfer candidates"] = found
    if exhaustive:
        lin = _linear_complete_exists(phi)
        witnesses["linear system feasible"] = lin
        if lin != item_ii:
            raise ContractBreach("candidate search and linear system disagree")

    canon = canonical_nondegenerate_transfer(phi)
    nondeg = is_nondegenerate(phi, canon, check_transfer=False)
    item_iii = nondeg and hereditary_range_oracle(phi)
    witnesses["canonical non-degenerate"] = nondeg

    one = phi(A.one())
    hereditary = span_dimension(phi(e) for e in A.basis()) == corner_dim(one)
    p_found = None
    for p in central_projections(A):
        if hereditary and _bijective_on_corner(phi, p):
            p_found = p
            break
    item_iv = p_found is not None

    if not item_i == item_ii == item_iii == item_iv:
        raise ContractBreach("completeness criteria disagree: i=%s ii=%s iii=%s iv=%s"
                             % (item_i, item_ii, item_iii, item_iv))
    if item_i:
        tau = complete_transfer(phi)
        q = kernel_unit(phi)
        if not (p_found == tau(A.one()) == A.one() - q):
            raise ContractBreach("p, t(1) and 1 - q do not coincide")
        witnesses["t(1)"] = tau(A.one())
    return CompletenessReport(item_i, item_ii, item_iii, item_iv, p_found, witnesses)
