import random
import re

import pytest

from stardyn.dot import bratteli_dot, bratteli_edges, tower_summands, xtilde_dot
from stardyn.natext import NaturalExtension
from stardyn.plotting import render_bratteli, render_xtilde
from stardyn.samplers import random_multimatrix_system


def test_summand_nodes_follow_level_dimensions(systems):
    for s in systems.values():
        ext = NaturalExtension(s.phi)
        for n in range(4):
            assert sum(t.size ** 2 for t in tower_summands(ext, n)) == ext.dim(n)


def test_merge_bratteli_dot(merge):
    text = bratteli_dot(NaturalExtension(merge.phi), 2)
    nodes = re.findall(r"^  (L\d+S\d+) \[", text, re.M)
    assert nodes == ["L0S0", "L0S1", "L0S2", "L1S0", "L1S1", "L1S2", "L1S3",
                     "L2S0", "L2S1", "L2S2", "L2S3", "L2S4"]
    assert '  L0S2 -> L1S0 [label="1"];' in text
    assert '  L0S0 -> L1S1 [label="1"];' in text and '  L0S0 -> L1S2 [label="1"];' in text


def test_edge_multiplicities_account_for_sizes():
    A, phi = random_multimatrix_system(random.Random(7), dims=(1, 3))
    ext = NaturalExtension(phi)
    for n in range(3):
        upper = {t.node: t for t in tower_summands(ext, n + 1)}
        lower = {t.node: t for t in tower_summands(ext, n)}
        received = {}
        for (a, b), mult in bratteli_edges(ext, n).items():
            received[b] = received.get(b, 0) + mult * lower[a].size
        for node, t in upper.items():
            assert received.get(node, 0) <= t.size


def test_dot_is_stable(const3):
    ext = NaturalExtension(const3.phi)
    assert bratteli_dot(ext, 3) == bratteli_dot(NaturalExtension(const3.phi), 3)


def test_xtilde_dot(merge):
    text = xtilde_dot(merge.partial_map, 3)
    assert text.count("shape=box") == 4 and text.count("shape=doublecircle") == 1
    assert "  P1_2 -> P0_1_2;" in text
    assert "  C0_0 -> C0_0;" in text


@pytest.mark.parametrize("name", ["S_merge", "S_const3"])
def test_png_renderings(systems, name, tmp_path):
    s = systems[name]
    tower = render_bratteli(NaturalExtension(s.phi), 3, tmp_path / "tower.png")
    points = render_xtilde(s.partial_map, 3, tmp_path / "xtilde.png")
    for path in (tower, points):
        assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
