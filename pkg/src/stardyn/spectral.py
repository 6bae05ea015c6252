"""The natural extension ``(X~, alpha~)`` of a finite partial map.

Points of ``X~`` are maximal anti-orbits ``(x_0, x_1, ...)`` with
``alpha(x_{n+1}) = x_n``.  Over a finite set a finite one ends at a point
outside the image of ``alpha`` (:class:`Path`) and an infinite one runs
backwards around a cycle (:class:`Cycle`).
"""

from dataclasses import dataclass

from .errors import ContractBreach, DomainError, InputError
from .natext import NaturalExtension
from .pdsys import induced_endomorphism, iterate_domains, periodic_points
from .scalar import Scalar

__all__ = [
    "Path",
    "Cycle",
    "LevelSpectrum",
    "enumerate_points",
    "alpha_tilde",
    "alpha_tilde_inv",
    "level_spectrum",
    "level_bonding",
    "evaluate",
    "functional_sequence",
    "natural_extension_system_check",
    "brute_force_infinite_prefixes",
    "cycle_prefixes",
    "brute_force_paths",
]


@dataclass(frozen=True, order=True)
class Path:
    """A finite maximal anti-orbit ``(x_0, ..., x_N)``."""

    coords: tuple

    @property
    def length(self):
        return len(self.coords) - 1

    def coord(self, n):
        return self.coords[n]

    def label(self, names):
        return "(" + ",".join(names[x] for x in self.coords) + ")"


@dataclass(frozen=True, order=True)
class Cycle:
    """The infinite anti-orbit through ``cycle[phase]``; ``x_n = cycle[phase - n]``."""

    cycle: tuple
    phase: int

    def coord(self, n):
        return self.cycle[(self.phase - n) % len(self.cycle)]

    def label(self, names):
        return "~(" + ",".join(names[self.coord(n)] for n in range(len(self.cycle))) + ")"


def _sort_key(p):
    if isinstance(p, Path):
        return (0, len(p.coords), p.coords)
    return (1, p.cycle, p.phase)


def enumerate_points(m, n_max):
    """Every Path of length at most ``n_max`` and every Cycle point."""
    if n_max < 0:
        raise InputError("n_max must be non-negative")
    out = []
    image = m.image
    for n in range(n_max + 1):
        dom, _ = iterate_domains(m, n)
        for x in sorted(dom - image):
            coords = [x]
            for _ in range(n):
                coords.append(m(coords[-1]))
            out.append(Path(tuple(reversed(coords))))
    for x, (cyc, phase) in sorted(periodic_points(m).items()):
        out.append(Cycle(cyc, phase))
    return sorted(out, key=_sort_key)


def alpha_tilde(m, p):
    """Prepend ``alpha(x_0)``."""
    if isinstance(p, Cycle):
        return Cycle(p.cycle, (p.phase + 1) % len(p.cycle))
    x0 = p.coords[0]
    if m.images[x0] is None:
        raise DomainError("alpha~ is undefined at %r: first coordinate outside the domain" % (p,))
    return Path((m.images[x0],) + p.coords)


def alpha_tilde_inv(m, p):
    """Drop ``x_0``."""
    if isinstance(p, Cycle):
        return Cycle(p.cycle, (p.phase - 1) % len(p.cycle))
    if len(p.coords) == 1:
        raise DomainError("alpha~ inverse is undefined at %r: no second coordinate" % (p,))
    return Path(p.coords[1:])


def in_domain(m, p):
    return isinstance(p, Cycle) or m.images[p.coords[0]] is not None


def in_image(p):
    return isinstance(p, Cycle) or len(p.coords) > 1


@dataclass(frozen=True)
class LevelSpectrum:
    """``X~_n`` as the tagged union of slots
    ``X - D_{-1}, D_1 - D_{-1}, ..., D_{n-1} - D_{-1}, D_n``."""

    level: int
    slots: tuple

    def points(self):
        return [(k, x) for k, slot in enumerate(self.slots) for x in slot]

    def __len__(self):
        return sum(len(s) for s in self.slots)


def level_spectrum(m, n):
    if n < 0:
        raise InputError("negative level")
    image = m.image
    slots = [tuple(sorted(iterate_domains(m, k)[0] - image)) for k in range(n)]
    slots.append(tuple(sorted(iterate_domains(m, n)[0])))
    return LevelSpectrum(n, tuple(slots))


def level_bonding(m, n):
    """``X~_{n+1} -> X~_n``: identity on slots up to ``n``, ``alpha`` from slot ``n+1``."""
    upper = level_spectrum(m, n + 1)
    out = {}
    for k, x in upper.points():
        out[(k, x)] = (k, x) if k <= n else (n, m(x))
    return out


def _slot_of(p, n):
    if isinstance(p, Path) and p.length < n:
        return p.length, p.coords[-1]
    return n, p.coord(n)


def evaluate(x, p):
    """Value of the tower element ``x`` at the point ``p`` of ``X~``."""
    A = x.ext.algebra
    if not A.is_commutative():
        raise InputError("evaluation at points needs a commutative system")
    slot, point = _slot_of(p, x.level)
    return x.coords[slot].blocks[point].entry(0, 0)


def functional_sequence(ext, p, a, n_max):
    """``[evaluate(T^n(iota(a)), p) for n = 0..n_max]``."""
    out = []
    x = ext.iota(a)
    for _ in range(n_max + 1):
        out.append(evaluate(x, p))
        x = ext.ext_transfer(x)
    return out


def natural_extension_system_check(m, N):
    """Spectrum sizes, bonding duality and the ``alpha~`` / shift match up to level ``N``."""
    if N < 1:
        raise InputError("N must be at least 1")
    A, phi = induced_endomorphism(m)
    ext = NaturalExtension(phi)
    zero = Scalar(0)
    counts = {}
    checked = {"sizes": 0, "bonding": 0, "alpha~": 0, "alpha~ inverse": 0}
    points = enumerate_points(m, N + 1)
    for n in range(N + 1):
        size, dim = len(level_spectrum(m, n)), ext.dim(n)
        counts[n] = size
        checked["sizes"] += 1
        if size != dim:
            raise ContractBreach("|X~_%d| = %d but dim B_%d = %d" % (n, size, n, dim))
        if n < N:
            bond = level_bonding(m, n)
            for b in ext.basis(n):
                up = ext.embed_level(b)
                for (k, y), (k0, y0) in bond.items():
                    if up.coords[k].blocks[y] != b.coords[k0].blocks[y0]:
                        raise ContractBreach("bonding duality fails at level %d" % n)
                    checked["bonding"] += 1
        for b in ext.basis(n):
            db = ext.ext_delta(b)
            tb = ext.ext_transfer(b)
            for p in points:
                want = evaluate(b, alpha_tilde(m, p)) if in_domain(m, p) else zero
                if evaluate(db, p) != want:
                    raise ContractBreach("ext_delta does not act as alpha~ at %r" % (p,))
                checked["alpha~"] += 1
                want = evaluate(b, alpha_tilde_inv(m, p)) if in_image(p) else zero
                if evaluate(tb, p) != want:
                    raise ContractBreach("ext_transfer does not act as alpha~ inverse at %r" % (p,))
                checked["alpha~ inverse"] += 1
    for p in points:
        if in_domain(m, p) and alpha_tilde_inv(m, alpha_tilde(m, p)) != p:
            raise ContractBreach("alpha~ is not injective at %r" % (p,))
        if in_image(p) and alpha_tilde(m, alpha_tilde_inv(m, p)) != p:
            raise ContractBreach("alpha~ inverse round trip fails at %r" % (p,))
    return {"pass": True, "sizes": counts, "checked": checked, "points": len(points)}


# brute-force oracles ------------------------------------------------------

def _anti_orbits(m, length):
    """All sequences ``(x_0, ..., x_{length-1})`` with ``alpha(x_{k+1}) = x_k``."""
    pre = {y: m.preimage(y) for y in m.points}
    level = [(x,) for x in m.points]
    for _ in range(length - 1):
        level = [s + (z,) for s in level for z in pre[s[-1]]]
    return level


def brute_force_paths(m, n_max):
    """Maximal finite anti-orbits of length at most ``n_max + 1`` by direct search."""
    out = set()
    for n in range(n_max + 1):
        for s in _anti_orbits(m, n + 1):
            if not m.preimage(s[-1]):
                out.add(Path(s))
    return out


def brute_force_infinite_prefixes(m, length=12):
    """Prefixes of length ``length - |X|`` of all anti-orbits of length ``length``.

    A backward chain longer than ``|X|`` repeats a point, so every such
    prefix consists of periodic points.
    """
    k = length - len(m)
    if k < 1:
        raise InputError("length must exceed the number of points")
    return {s[:k] for s in _anti_orbits(m, length)}


def cycle_prefixes(m, k):
    return {tuple(p.coord(n) for n in range(k))
            for p in enumerate_points(m, 0) if isinstance(p, Cycle)}
