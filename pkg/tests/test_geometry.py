from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cosetgeom.catalog import build, names, recognize
from cosetgeom.dessin import Dessin
from cosetgeom.extract import extract_geometries, pair_families
from cosetgeom.geometry import (
    INF,
    GeometryError,
    IncidenceStructure,
    automorphism_generators,
    collinearity_distance,
    isomorphic,
    isomorphism,
    polygon_check,
)
from cosetgeom.perm import PermGroup, Permutation
from cosetgeom.scenarios import octahedron_geometry


def test_structure_validation():
    with pytest.raises(GeometryError):
        IncidenceStructure.from_lines(3, [[0]])
    with pytest.raises(GeometryError):
        IncidenceStructure.from_lines(3, [[0, 1], [1, 0]])
    with pytest.raises(GeometryError):
        IncidenceStructure.from_lines(3, [[0, 3]])


def test_json_round_trip():
    s = build("Fano")
    data = json.loads(json.dumps(s.to_json()))
    assert min(min(line) for line in data["lines"]) == 1
    assert IncidenceStructure.from_json(data) == s


def test_dot_exports():
    s = build("Fano")
    assert s.to_dot().count(" -- ") == 21
    assert s.to_dot("collinearity").count(" -- ") == 21


@pytest.mark.parametrize("name,points,lines", [
    ("grid(3,3)", 9, 6), ("Fano", 7, 7), ("PG(3,2)", 15, 35), ("PG(4,2)", 31, 155),
    ("GQ(2,2)", 15, 15), ("GQ(2,4)", 27, 45), ("GH(2,1)", 21, 14), ("GO(2,1)", 45, 30),
    ("GH(1,2)", 14, 21), ("GO(1,2)", 30, 45), ("K(3,3)", 6, 9), ("K(4,4)", 8, 16),
    ("K(5,5)", 10, 25), ("K(3,3,3)", 9, 27), ("Petersen", 10, 15), ("Desargues", 10, 10),
    ("Pappus", 9, 9), ("Hesse", 9, 12), ("pentagram", 10, 5), ("octahedron", 6, 8),
    ("GH(2,2)", 63, 63), ("dual GH(2,2)", 63, 63),
])
def test_catalog_sizes(name, points, lines):
    s = build(name)
    assert (s.n, s.num_lines) == (points, lines)


def test_unknown_name():
    with pytest.raises(GeometryError):
        build("PG(9,3)")


def test_aliases():
    assert build("doily") == build("GQ(2,2)")
    assert "dual GH(2,2)" in names()


@pytest.mark.parametrize("name,gon,order", [
    ("grid(3,3)", 4, (2, 1)), ("Fano", 3, (2, 2)), ("GQ(2,2)", 4, (2, 2)), ("GQ(2,4)", 4, (2, 4)),
    ("GH(1,2)", 6, (1, 2)), ("GH(2,1)", 6, (2, 1)), ("GO(1,2)", 8, (1, 2)), ("GO(2,1)", 8, (2, 1)),
    ("GH(2,2)", 6, (2, 2)), ("dual GH(2,2)", 6, (2, 2)),
])
def test_generalized_polygons(name, gon, order):
    v = polygon_check(build(name), gon, order)
    assert v.ok, v.reason


def test_polygon_failures():
    v = polygon_check(build("Fano"), 4, (2, 2))
    assert not v and "diameter" in v.reason
    assert not polygon_check(build("grid(3,3)"), 4, (2, 2))
    with pytest.raises(GeometryError, match="components"):
        polygon_check(IncidenceStructure.from_lines(4, [[0, 1], [2, 3]]), 4, (1, 0))


def test_collinearity_distance():
    grid = build("grid(3,3)")
    assert collinearity_distance(grid, 0, 0) == 0
    assert collinearity_distance(grid, 0, 1) == 1
    assert collinearity_distance(grid, 0, 4) == 2
    assert collinearity_distance(IncidenceStructure.from_lines(4, [[0, 1], [2, 3]]), 0, 3) == INF


def test_gh22_opposite_points_at_distance_three():
    s = build("GH(2,2)")
    dists = [collinearity_distance(s, 0, q) for q in range(s.n)]
    assert max(dists) == 3
    # a point of GH(2,2) has 6 neighbours, 24 at distance 2 and 32 opposite
    assert [dists.count(k) for k in range(4)] == [1, 6, 24, 32]


def test_isomorphism_examples():
    grid = build("grid(3,3)")
    sigma = list(range(9))
    random.Random(1).shuffle(sigma)
    other = grid.relabel(sigma)
    m = isomorphism(grid, other)
    assert m is not None
    assert {tuple(sorted(m[p] for p in line)) for line in grid.lines} == set(other.lines)
    assert not isomorphic(build("K(3,3)"), grid)
    assert isomorphic(build("Fano"), build("PG(2,2)").relabel([1, 0, 2, 3, 4, 5, 6]))


def test_hexagon_and_dual_are_not_isomorphic():
    assert not isomorphic(build("GH(2,2)"), build("dual GH(2,2)"))


def test_automorphism_group_orders():
    def order(name):
        s = build(name)
        return PermGroup([Permutation(tuple(g)) for g in automorphism_generators(s)] or
                         [Permutation.identity(s.n)], s.n).order()

    assert order("Fano") == 168
    assert order("grid(3,3)") == 72
    assert order("GQ(2,2)") == 720
    assert order("Petersen") == 120


@given(st.sampled_from(["grid(3,3)", "Fano", "GQ(2,2)", "Petersen", "Pappus", "Hesse"]),
       st.randoms(use_true_random=False))
def test_relabelled_structures_are_isomorphic(name, rnd):
    s = build(name)
    sigma = list(range(s.n))
    rnd.shuffle(sigma)
    assert isomorphic(s, s.relabel(sigma))


def test_recognize():
    assert recognize(build("Petersen")) == ["Petersen"]
    assert "GQ(2,1)" in recognize(build("grid(3,3)"))


# --- extraction ---------------------------------------------------------------

def _check_shared_keys(d):
    subgroups, family = pair_families(d)
    for geo in extract_geometries(d):
        for line in geo.structure.lines:
            fams = {family[(p, q)] for i, p in enumerate(line) for q in line[i + 1:]}
            assert len(fams) == 1
            assert subgroups[fams.pop()].order() == geo.order


def test_mermin_extraction(mermin):
    grid = build("grid(3,3)")
    orders = sorted(g.order for g in mermin.grids)
    assert orders == [1, 2]
    assert all(isomorphic(g.structure, grid) for g in mermin.grids)
    _check_shared_keys(mermin.dessin)


def test_pg32_extraction(pg32):
    target = build("PG(3,2)")
    for d, geo in zip(pg32.dessins, pg32.geometries):
        assert geo.order == 12
        assert isomorphic(geo.structure, target)
    _check_shared_keys(pg32.dessins[0])


def test_octahedron_extraction(octahedron):
    geos = extract_geometries(octahedron)
    by_order = {g.order: g.structure for g in geos}
    # antipodal vertex pairs share a stabilizer of order 2
    assert by_order[2].lines == ((0, 5), (1, 3), (2, 4))
    octa = octahedron_geometry(octahedron)
    assert octa.num_lines == 8 and isomorphic(octa, build("octahedron"))


def test_index10_petersen_and_pentagram_lines():
    """Petersen graph and the pentagram's lines come from two stabilizer
    classes; the trivial class also carries ten triangles (clique rule)."""
    d = Dessin.from_pair("(2,3,4)(5,7,8)(6,9,10)", "(1,2)(3,5)(4,6)(7,10)", n=10)
    assert d.group.order() == 60
    geos = {g.order: g.structure for g in extract_geometries(d)}
    assert recognize(geos[2]) == ["Petersen"]
    trivial = geos[1]
    quads = [line for line in trivial.lines if len(line) == 4]
    assert len(quads) == 5
    assert isomorphic(IncidenceStructure.from_lines(10, quads), build("pentagram"))
    assert sorted(map(len, trivial.lines)) == [3] * 10 + [4] * 5
    _check_shared_keys(d)


@given(st.integers(3, 9).flatmap(lambda n: st.tuples(
    st.permutations(list(range(n))), st.permutations(list(range(n))))))
def test_lines_share_stabilizer(pair):
    g0, g1 = (Permutation(tuple(p)) for p in pair)
    if len(PermGroup([g0, g1]).orbits()) != 1:
        return
    _check_shared_keys(Dessin(g0, g1))
