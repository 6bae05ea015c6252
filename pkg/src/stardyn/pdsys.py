"""Finite partial dynamical systems and their commutative C*-algebra duals."""

from dataclasses import dataclass

from .errors import ContractBreach, DomainError, InputError
from .finalg import MultiMatrixAlgebra, StarEndomorphism, classify, kernel_unit
from .transfer import completeness_report

__all__ = [
    "PartialMap",
    "induced_endomorphism",
    "iterate_domains",
    "duality_report",
    "periodic_points",
    "DUALITY_ROWS",
]


@dataclass(frozen=True)
class PartialMap:
    """``alpha: domain -> points`` on a finite set, stored by index.

    ``images[x]`` is the index of ``alpha(x)`` or None off the domain.
    """

    names: tuple
    images: tuple

    def __post_init__(self):
        names = tuple(str(n) for n in self.names)
        if len(set(names)) != len(names):
            raise InputError("duplicate point names")
        if len(self.images) != len(names):
            raise InputError("one image slot per point is required")
        for y in self.images:
            if y is not None and not 0 <= y < len(names):
                raise InputError("image index %r out of range" % (y,))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "images", tuple(self.images))

    @classmethod
    def from_mapping(cls, points, mapping):
        """Build from point names and a ``{name: name}`` dict (its keys are the domain)."""
        points = [str(p) for p in points]
        index = {p: i for i, p in enumerate(points)}
        images = [None] * len(points)
        for x, y in mapping.items():
            x, y = str(x), str(y)
            if x not in index or y not in index:
                raise InputError("mapping %s -> %s leaves the point set" % (x, y))
            images[index[x]] = index[y]
        return cls(tuple(points), tuple(images))

    @classmethod
    def from_images(cls, images):
        return cls(tuple(str(i) for i in range(len(images))), tuple(images))

    def __len__(self):
        return len(self.images)

    @property
    def points(self):
        return range(len(self.images))

    @property
    def domain(self):
        return frozenset(x for x, y in enumerate(self.images) if y is not None)

    @property
    def image(self):
        return frozenset(y for y in self.images if y is not None)

    def __call__(self, x):
        y = self.images[x]
        if y is None:
            raise DomainError("point %s is outside the domain" % self.names[x])
        return y

    def preimage(self, y):
        return [x for x, z in enumerate(self.images) if z == y]

    def is_total(self):
        return all(y is not None for y in self.images)

    def is_injective(self):
        img = [y for y in self.images if y is not None]
        return len(img) == len(set(img))

    def is_surjective(self):
        return len(self.image) == len(self)

    def mapping(self):
        return {self.names[x]: self.names[y] for x, y in enumerate(self.images) if y is not None}


def induced_endomorphism(m):
    """``d(a)(x) = a(alpha(x))`` on the domain and ``0`` off it."""
    A = MultiMatrixAlgebra.commutative(len(m))
    mults = [[y] if y is not None else [] for y in m.images]
    return A, StarEndomorphism(A, A, mults)


def iterate_domains(m, n):
    """``(Delta_n, Delta_{-n})``: domain of ``alpha^n`` and its image."""
    if n < 0:
        raise InputError("n must be non-negative")
    dom = set(m.points)
    for _ in range(n):
        dom = {x for x in dom if m.images[x] is not None and m.images[x] in dom}
    img = set()
    for x in dom:
        y = x
        for _ in range(n):
            y = m.images[y]
        img.add(y)
    return frozenset(dom), frozenset(img)


def _image_open(m):
    # every subset of a finite discrete space is open
    return True


DUALITY_ROWS = (
    ("mono", "surjective"),
    ("unital", "total"),
    ("epi", "injective and total"),
    ("unital kernel", "image open"),
    ("complete", "injective and image open"),
)


def duality_report(m):
    """Each algebra-side predicate next to its map-side partner.

    The algebra side is computed from the induced endomorphism alone; a
    mismatch in any row raises ContractBreach.
    """
    _, phi = induced_endomorphism(m)
    cls = classify(phi)
    complete = completeness_report(phi, exhaustive=False).complete
    algebra_side = {
        "mono": cls.mono,
        "unital": cls.unital,
        "epi": cls.epi,
        "unital kernel": cls.unital_kernel,
        "complete": complete,
    }
    map_side = {
        "surjective": m.is_surjective(),
        "total": m.is_total(),
        "injective and total": m.is_injective() and m.is_total(),
        "image open": _image_open(m),
        "injective and image open": m.is_injective() and _image_open(m),
    }
    rows = []
    for left, right in DUALITY_ROWS:
        rows.append({"algebra": left, "map": right,
                     "algebra_value": algebra_side[left], "map_value": map_side[right]})
        if algebra_side[left] != map_side[right]:
            raise ContractBreach("duality row %s <=> %s fails: %s vs %s"
                                 % (left, right, algebra_side[left], map_side[right]))
    expected_q = [0 if x in m.image else 1 for x in m.points]
    if [v.re for v in kernel_unit(phi).values()] != expected_q:
        raise ContractBreach("kernel unit is not the indicator of the complement of the image")
    return rows


def periodic_points(m):
    """``{point: (cycle, phase)}`` for every point on a cycle of ``alpha``.

    A cycle is the tuple ``(c_0, alpha(c_0), ...)`` starting at its smallest
    point; ``phase`` is the position of the point in it.
    """
    out = {}
    for start in m.points:
        if start in out:
            continue
        x, seen = start, []
        while x is not None and x not in seen and x not in out:
            seen.append(x)
            x = m.images[x]
        if x is None or x in out or x not in seen:
            continue
        cyc = seen[seen.index(x):]
        k = cyc.index(min(cyc))
        cyc = tuple(cyc[k:] + cyc[:k])
        for phase, y in enumerate(cyc):
            out[y] = (cyc, phase)
    return out


def cycles(m):
    return sorted({c for c, _ in periodic_points(m).values()})
