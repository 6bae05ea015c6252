"""Exact Gaussian-rational matrices.

A complex matrix ``R + iJ`` is stored as the rational matrix
``[[R, -J], [J, R]]`` (its realification).  Realification is a faithful
*-homomorphism, so products, adjoints (transposes), ranks (halved) and
linear solves can all be delegated to FLINT's ``fmpq_mat``.
"""

from fractions import Fraction

import flint

from .scalar import Scalar

__all__ = [
    "CMatrix",
    "block_diag",
    "hstack",
    "independent_columns",
    "is_psd",
    "left_inverse",
    "real_nullity",
    "real_solve",
    "solve",
]

_fmpq = flint.fmpq
_mat = flint.fmpq_mat


def _q(x):
    if isinstance(x, Fraction):
        return _fmpq(x.numerator, x.denominator)
    return _fmpq(x)


def _to_frac(x):
    return Fraction(int(x.p), int(x.q))


class CMatrix:
    """Immutable ``m x n`` matrix over Q(i)."""

    __slots__ = ("nrows", "ncols", "real")

    def __init__(self, nrows, ncols, real):
        self.nrows = nrows
        self.ncols = ncols
        self.real = real

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [[Scalar.coerce(v) for v in row] for row in rows]
        m = len(rows)
        n = len(rows[0]) if rows else (ncols or 0)
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix")
        top = [[_q(v.re) for v in r] + [_q(-v.im) for v in r] for r in rows]
        bot = [[_q(v.im) for v in r] + [_q(v.re) for v in r] for r in rows]
        return cls(m, n, _mat(2 * m, 2 * n, [x for row in top + bot for x in row]))

    @classmethod
    def from_real(cls, rows):
        """Build from a list of rows of rationals (no imaginary part)."""
        m = len(rows)
        n = len(rows[0]) if rows else 0
        z = _fmpq(0)
        flat = []
        for r in rows:
            flat.extend(_q(v) for v in r)
            flat.extend([z] * n)
        for r in rows:
            flat.extend([z] * n)
            flat.extend(_q(v) for v in r)
        return cls(m, n, _mat(2 * m, 2 * n, flat))

    @classmethod
    def from_parts(cls, m, n, re, im):
        """Build from row-major lists of FLINT rationals (real and imaginary parts)."""
        flat = []
        for i in range(m):
            row_re = re[i * n:(i + 1) * n]
            flat.extend(row_re)
            flat.extend(-v for v in im[i * n:(i + 1) * n])
        for i in range(m):
            flat.extend(im[i * n:(i + 1) * n])
            flat.extend(re[i * n:(i + 1) * n])
        return cls(m, n, _mat(2 * m, 2 * n, flat))

    @classmethod
    def zeros(cls, m, n=None):
        n = m if n is None else n
        return cls(m, n, _mat(2 * m, 2 * n))

    @classmethod
    def identity(cls, n):
        return cls(n, n, _identity(2 * n))

    @classmethod
    def scalar(cls, c, n):
        c = Scalar.coerce(c)
        return cls(n, n, _identity(2 * n) * _q(c.re) + _j(n) * _q(c.im))

    # access -------------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i, j):
        return Scalar(_to_frac(self.real[i, j]), _to_frac(self.real[self.nrows + i, j]))

    def __getitem__(self, ij):
        return self.entry(*ij)

    def rows(self):
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def parts(self):
        """Row-major lists of the real and imaginary parts (FLINT rationals)."""
        m, n, r = self.nrows, self.ncols, self.real
        re = [r[i, j] for i in range(m) for j in range(n)]
        im = [r[m + i, j] for i in range(m) for j in range(n)]
        return re, im

    def column_scalars(self, j=0):
        """Column ``j`` as a list of Scalars."""
        m = self.nrows
        r = self.real
        return [Scalar(_to_frac(r[i, j]), _to_frac(r[m + i, j])) for i in range(m)]

    # algebra ------------------------------------------------------------

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s + %s" % (self.shape, other.shape))
        return CMatrix(self.nrows, self.ncols, self.real + other.real)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s - %s" % (self.shape, other.shape))
        return CMatrix(self.nrows, self.ncols, self.real - other.real)

    def __neg__(self):
        return CMatrix(self.nrows, self.ncols, -self.real)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        return CMatrix(self.nrows, other.ncols, self.real * other.real)

    def scale(self, c):
        c = Scalar.coerce(c)
        if c.im == 0:
            return CMatrix(self.nrows, self.ncols, self.real * _q(c.re))
        return CMatrix(self.nrows, self.ncols, (CMatrix.scalar(c, self.nrows).real) * self.real)

    def adjoint(self):
        return CMatrix(self.ncols, self.nrows, self.real.transpose())

    def transpose(self):
        rows = self.rows()
        return CMatrix.from_rows([list(c) for c in zip(*rows)], ncols=self.nrows)

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        n = self.nrows
        re = sum((self.real[i, i] for i in range(n)), _fmpq(0))
        im = sum((self.real[n + i, i] for i in range(n)), _fmpq(0))
        return Scalar(_to_frac(re), _to_frac(im))

    def is_zero(self):
        return self.real == _zero(self.real.nrows(), self.real.ncols())

    def rank(self):
        return self.real.rank() // 2

    def is_diagonal(self):
        n = self.nrows
        r = self.real
        for i in range(2 * n):
            for j in range(2 * self.ncols):
                if i % n != j % self.ncols and r[i, j] != 0:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self.shape == other.shape and self.real == other.real

    __hash__ = None

    def __repr__(self):
        return "CMatrix(%r)" % [[str(v) for v in r] for r in self.rows()]


def block_diag(blocks, pad=0):
    """Block diagonal matrix of square CMatrix blocks followed by ``pad`` zeros."""
    sizes = [b.nrows for b in blocks]
    n = sum(sizes) + pad
    rows = [[Scalar(0)] * n for _ in range(n)]
    off = 0
    for b, s in zip(blocks, sizes):
        for i, row in enumerate(b.rows()):
            rows[off + i][off:off + s] = row
        off += s
    return CMatrix.from_rows(rows, ncols=n)


_cache_id = {}
_cache_j = {}
_cache_zero = {}


def _identity(n):
    m = _cache_id.get(n)
    if m is None:
        m = _cache_id[n] = _mat(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])
    return m


def _j(n):
    # realification of i*Id_n
    m = _cache_j.get(n)
    if m is None:
        entries = [0] * (4 * n * n)
        for i in range(n):
            entries[i * 2 * n + n + i] = -1
            entries[(n + i) * 2 * n + i] = 1
        m = _cache_j[n] = _mat(2 * n, 2 * n, entries)
    return m


def _zero(m, n):
    z = _cache_zero.get((m, n))
    if z is None:
        z = _cache_zero[(m, n)] = _mat(m, n)
    return z


def hstack(columns):
    """Concatenate column CMatrices into one matrix."""
    if not columns:
        raise ValueError("nothing to stack")
    m = columns[0].nrows
    re_cols, im_cols = [], []
    for c in columns:
        if c.nrows != m:
            raise ValueError("row mismatch")
        r = c.real
        for j in range(c.ncols):
            re_cols.append([r[i, j] for i in range(m)])
            im_cols.append([r[m + i, j] for i in range(m)])
    n = len(re_cols)
    re = [re_cols[j][i] for i in range(m) for j in range(n)]
    im = [im_cols[j][i] for i in range(m) for j in range(n)]
    return CMatrix.from_parts(m, n, re, im)


def independent_columns(columns):
    """Indices of a greedy C-linearly independent subset of ``columns``."""
    chosen = []
    rank = 0
    for idx in range(len(columns)):
        trial = chosen + [idx]
        r = hstack([columns[k] for k in trial]).rank()
        if r > rank:
            chosen.append(idx)
            rank = r
    return chosen


def left_inverse(v):
    """Exact left inverse ``(V*V)^-1 V*`` of a full column rank matrix.

    Applied to ``x`` it returns the coefficients of the trace-orthogonal
    projection of ``x`` onto the column space of ``V``.
    """
    if v.ncols == 0:
        return CMatrix.zeros(0, v.nrows)
    g = v.adjoint() @ v
    if g.rank() != v.ncols:
        raise ValueError("matrix does not have full column rank")
    ginv = CMatrix(g.nrows, g.ncols, g.real.inv())
    return ginv @ v.adjoint()


def solve(a, b):
    """A particular solution ``x`` of ``a @ x == b`` or ``None``.

    Works for singular and rectangular systems via the reduced row echelon
    form of the realified augmented matrix.
    """
    m, n = a.real.nrows(), a.real.ncols()
    k = b.real.ncols()
    aug = _mat(m, n + k, [a.real[i, j] if j < n else b.real[i, j - n]
                          for i in range(m) for j in range(n + k)])
    rref, rank = aug.rref()
    sol = [[_fmpq(0)] * k for _ in range(n)]
    for i in range(rank):
        piv = next(j for j in range(n + k) if rref[i, j] != 0)
        if piv >= n:
            return None
        for c in range(k):
            sol[piv][c] = rref[i, n + c]
    # a real solution of the realified system need not be realified itself;
    # column c of it still reads as [Re x_c; Im x_c] for a complex solution
    cols = []
    for c in range(b.ncols):
        cols.append([Scalar(_to_frac(sol[i][c]), _to_frac(sol[a.ncols + i][c]))
                     for i in range(a.ncols)])
    cx = CMatrix.from_rows([list(r) for r in zip(*cols)], ncols=b.ncols)
    if a @ cx != b:
        return None
    return cx


def real_nullity(rows, ncols):
    """Nullity of a rational matrix given as a list of rows."""
    if not rows:
        return ncols
    m = _mat(len(rows), ncols, [_q(v) for r in rows for v in r])
    return ncols - m.rank()


def real_solve(rows, rhs, ncols):
    """A particular rational solution of ``rows @ x == rhs`` or ``None``."""
    m = len(rows)
    aug = _mat(m, ncols + 1, [_q(v) for r, b in zip(rows, rhs) for v in list(r) + [b]])
    rref, rank = aug.rref()
    sol = [Fraction(0)] * ncols
    for i in range(rank):
        piv = next(j for j in range(ncols + 1) if rref[i, j] != 0)
        if piv == ncols:
            return None
        sol[piv] = _to_frac(rref[i, ncols])
    return sol


def is_psd(h):
    """Exact positive semidefiniteness test for a Hermitian CMatrix.

    Symmetric-pivoted LDL^T on the realification, which is symmetric
    and PSD exactly when ``h`` is.
    """
    if h.nrows != h.ncols:
        return False
    if h.adjoint() != h:
        return False
    n = h.real.nrows()
    a = [[h.real[i, j] for j in range(n)] for i in range(n)]
    active = list(range(n))
    while active:
        diag = [(a[i][i], i) for i in active]
        if any(d < 0 for d, _ in diag):
            return False
        piv = next((i for d, i in diag if d > 0), None)
        if piv is None:
            # zero diagonal: PSD forces the remaining block to vanish
            return all(a[i][j] == 0 for i in active for j in active)
        d = a[piv][piv]
        rest = [i for i in active if i != piv]
        for i in rest:
            f = a[i][piv] / d
            if f == 0:
                continue
            for j in rest:
                a[i][j] -= f * a[piv][j]
        active = rest
    return True
