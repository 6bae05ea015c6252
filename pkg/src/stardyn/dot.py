"""Graphviz DOT text for Bratteli towers and truncated ``X~`` graphs.

Node names are stable so that emitted files diff cleanly: summand ``s`` of
level ``n`` is ``L{n}S{s}``, summands numbered slot by slot and, within a
slot, by the block of ``A`` they live in.
"""

from dataclasses import dataclass

from .matrix import CMatrix
from .spectral import Cycle, alpha_tilde, enumerate_points, in_domain

__all__ = ["Summand", "tower_summands", "bratteli_edges", "bratteli_dot", "xtilde_dot", "point_node"]


@dataclass(frozen=True)
class Summand:
    level: int
    index: int
    slot: int
    block: int
    size: int

    @property
    def node(self):
        return "L%dS%d" % (self.level, self.index)


def tower_summands(ext, n):
    """Simple summands of ``B_n`` in node order."""
    out = []
    for k, e in enumerate(ext.level_algebra(n).projections):
        for b, r in enumerate(e.block_ranks()):
            if r:
                out.append(Summand(n, len(out), k, b, r))
    return out


def _minimal_projection(ext, s):
    """A rank-one subprojection of the slot projection inside block ``s.block``."""
    e = ext.slot_projection(s.level, s.slot).blocks[s.block]
    j = next(j for j in range(e.ncols) if e.entry(j, j))
    v = e.column_scalars(j)
    norm = e.entry(j, j)
    f = CMatrix.from_rows([[vi * vk.conjugate() / norm for vk in v] for vi in v])
    A = ext.algebra
    blocks = [CMatrix.zeros(d) for d in A.block_dims]
    blocks[s.block] = f
    a = A.element(blocks)
    zero = A.zero()
    coords = [zero] * (s.level + 1)
    coords[s.slot] = a
    return ext.element(coords)


def bratteli_edges(ext, n):
    """``{(source node, target node): multiplicity}`` for the bond ``B_n -> B_{n+1}``."""
    upper = tower_summands(ext, n + 1)
    edges = {}
    for s in tower_summands(ext, n):
        image = ext.embed_level(_minimal_projection(ext, s))
        for t in upper:
            mult = image.coords[t.slot].blocks[t.block].rank()
            if mult:
                edges[(s.node, t.node)] = mult
    return edges


def bratteli_dot(ext, levels, name="tower"):
    lines = ["digraph %s {" % name, "  rankdir=TB;", "  node [shape=circle];"]
    for n in range(levels + 1):
        summands = tower_summands(ext, n)
        lines.append("  { rank=same; %s }" % " ".join(s.node for s in summands) if summands
                     else "  // level %d is zero" % n)
        for s in summands:
            lines.append('  %s [label="%d", slot=%d, block=%d];' % (s.node, s.size, s.slot, s.block))
    for n in range(levels):
        for (a, b), mult in sorted(bratteli_edges(ext, n).items()):
            lines.append('  %s -> %s [label="%d"];' % (a, b, mult))
    lines.append("}")
    return "\n".join(lines) + "\n"


def point_node(p):
    if isinstance(p, Cycle):
        return "C%s_%d" % ("_".join(map(str, p.cycle)), p.phase)
    return "P" + "_".join(map(str, p.coords))


def xtilde_dot(m, depth, name="xtilde"):
    """Points of ``X~`` with paths of length ``<= depth``; edges are ``alpha~``.

    Edges leaving the truncation are omitted.
    """
    points = enumerate_points(m, depth)
    present = set(points)
    lines = ["digraph %s {" % name]
    for p in points:
        shape = "doublecircle" if isinstance(p, Cycle) else "box"
        lines.append('  %s [label="%s", shape=%s];' % (point_node(p), p.label(m.names), shape))
    for p in points:
        if in_domain(m, p):
            r = alpha_tilde(m, p)
            if r in present:
                lines.append("  %s -> %s;" % (point_node(p), point_node(r)))
    lines.append("}")
    return "\n".join(lines) + "\n"
