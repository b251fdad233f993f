from __future__ import annotations

import pytest

from cosetgeom.catalog import build
from cosetgeom.extract import extract_geometries
from cosetgeom.geometry import isomorphic, polygon_check
from cosetgeom.hexagon import G2_2_ORDER, g2_dessins, load_g2_dessins, split_cayley_hexagon
from cosetgeom.perm import evaluate
from cosetgeom.words import G_DOUBLE_PRIME


@pytest.fixture(scope="module")
def regenerated():
    return g2_dessins()


def test_quadric_model_is_a_hexagon():
    h = split_cayley_hexagon()
    assert (h.n, h.num_lines) == (63, 63)
    assert polygon_check(h, 6, (2, 2)).ok


def test_stored_data_matches_regeneration(regenerated):
    stored = load_g2_dessins()
    assert [d.canonical() for d in stored] == [d.canonical() for d in regenerated]


def test_exactly_two_dessins(regenerated):
    assert len(regenerated) == 2
    assert [d.signature() for d in regenerated] == [(21, 35, 9, 0), (18, 36, 9, 1)]
    assert all(d.group.order() == G2_2_ORDER for d in regenerated)


def test_relators_hold(regenerated):
    for d in regenerated:
        for r in G_DOUBLE_PRIME.relators:
            assert evaluate(r, d.g0, d.g1).is_identity()


def test_stabilizer_classes(hexagon_results):
    for res in hexagon_results:
        orders = sorted(g.order for g in extract_geometries(res.dessin))
        assert orders == [6, 8, 32]
        assert res.geometry.order == 32
        assert res.geometry.structure.num_lines == 63


def test_genus_zero_gives_hexagon_genus_one_its_dual(hexagon_results):
    h = split_cayley_hexagon()
    g0, g1 = (r.geometry.structure for r in hexagon_results)
    assert isomorphic(g0, h)
    assert isomorphic(g1, h.dual())
    assert not isomorphic(g0, g1)
    assert build("GH(2,2)") == g0 and build("dual GH(2,2)") == g1
