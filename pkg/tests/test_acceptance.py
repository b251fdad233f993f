"""End-to-end acceptance checks, one ``criterion`` marker per requirement.

The terminal summary prints one PASS/FAIL/SKIP line per criterion.  Property
tests across the suite are attached to criterion 9 by ``conftest.py``.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction

import pytest

from cosetgeom.catalog import build
from cosetgeom.cosets import low_index_subgroups
from cosetgeom.dessin import Dessin
from cosetgeom.geometry import isomorphic, polygon_check
from cosetgeom.hexagon import G2_2_ORDER
from cosetgeom.hyperplanes import hyperplanes
from cosetgeom.pauli import (
    find_mermin_square,
    find_pentagram,
    max_commuting_geometry,
    verify_mermin_square,
    verify_pentagram,
)
from cosetgeom.belyi import matches_dessin, parse_rational_map, passport_of
from cosetgeom.contextuality import score
from cosetgeom.scenarios import P1, P2, PG32_REFERENCE_U, hexagons, octahedron_geometry
from cosetgeom.words import Presentation

from conftest import RUN_INDEX63, TIMINGS
from oracles import brute_hyperplanes, sympy_fibers, transitive_pair_counts


# --- 1. octahedron --------------------------------------------------------------

@pytest.mark.criterion(1, "octahedron pipeline")
def test_octahedron_pipeline():
    start = time.perf_counter()
    d = Dessin.from_pair(*P1, n=6)
    assert d.n == 6
    assert d.signature() == (2, 4, 2, 0)
    assert [str(w) for w in d.labels()] == ["e", "a", "A", "ab", "Ab", "abA"]
    octa = octahedron_geometry(d)
    assert isomorphic(octa, build("octahedron"))
    rep = score(octa, d.labels(), d, "iterated")
    assert (rep.l, rep.u, rep.c) == (8, 4, Fraction(1, 2))
    assert time.perf_counter() - start < 1.0


# --- 2. subgroup count ----------------------------------------------------------

@pytest.mark.criterion(2, "index-6 subgroup count")
def test_index_6_count_matches_oracle(acceptance_note):
    start = time.perf_counter()
    all_subgroups, classes = transitive_pair_counts(6, involution=True)
    G = Presentation.involution()
    assert len(low_index_subgroups(G, 6, up_to_conjugacy=True)) == classes
    assert len(low_index_subgroups(G, 6, up_to_conjugacy=False)) == all_subgroups
    assert classes == 56
    acceptance_note(f"56 = conjugacy classes; all subgroups = {all_subgroups}")
    assert time.perf_counter() - start < 60


# --- 3. Mermin square -----------------------------------------------------------

@pytest.mark.criterion(3, "Mermin square from an index-9 dessin")
def test_mermin_square(mermin):
    assert mermin.dessin.genus == 1 and mermin.dessin.n == 9
    grid = build("grid(3,3)")
    assert sorted(g.order for g in mermin.grids) == [1, 2]
    assert all(isomorphic(g.structure, grid) for g in mermin.grids)
    by_order = {g.order: r for g, r in zip(mermin.grids, mermin.reports)}
    assert by_order[1].c == 0
    rep = by_order[2]
    assert (rep.l, rep.u) == (6, 5)
    assert rep.l_over_u == Fraction(6, 5)
    assert TIMINGS["mermin"] < 300


# --- 4. PG(3,2) -----------------------------------------------------------------

@pytest.mark.criterion(4, "PG(3,2) from index-15 dessins")
def test_pg32_tables(pg32):
    assert len(pg32.dessins) == 4
    for d in pg32.dessins:
        grp = d.group
        assert grp.order() == 2520
        assert grp.point_stabilizer(0).order() == 168
        assert grp.two_point_stabilizer(0, 1).order() == 12
    target = build("PG(3,2)")
    for g in pg32.geometries:
        assert (g.structure.n, g.structure.num_lines) == (15, 35)
        assert isomorphic(g.structure, target)
    assert TIMINGS["pg32"] < 30 * 60


@pytest.mark.criterion(4, "PG(3,2) commuting lines")
def test_pg32_score(pg32, acceptance_note):
    best = pg32.best
    assert best.l == 35 and best.mode == "iterated"
    assert pg32.pairwise.mode == "pairwise" and pg32.pairwise.l == 35
    if best.u == PG32_REFERENCE_U:
        assert best.c == Fraction(26, 35)
    else:
        # documented deviation: both readings are reported side by side
        assert pg32.note is not None
        assert f"u={best.u}" in pg32.note and f"u={pg32.pairwise.u}" in pg32.note
        acceptance_note(pg32.note)


# --- 5. GH(2,2) -----------------------------------------------------------------

@pytest.mark.criterion(5, "GH(2,2) index-63 search")
@pytest.mark.skipif(not RUN_INDEX63, reason="set COSETGEOM_RUN_INDEX63=1 to run the index-63 search")
def test_gh22_index63_search(hexagon_results):
    searched = hexagons(search=True)
    assert len(searched) == 2
    assert [r.dessin.canonical() for r in searched] == [r.dessin.canonical() for r in hexagon_results]


@pytest.mark.criterion(5, "GH(2,2) dessins")
def test_gh22_dessins(hexagon_results):
    assert len(hexagon_results) == 2
    assert all(r.dessin.group.order() == G2_2_ORDER for r in hexagon_results)
    assert [r.dessin.signature() for r in hexagon_results] == [(21, 35, 9, 0), (18, 36, 9, 1)]
    for r in hexagon_results:
        assert polygon_check(r.geometry.structure, 6, (2, 2)).ok
        assert r.polygon_ok


@pytest.mark.criterion(5, "GH(2,2) genus-0 score")
def test_gh22_genus0_score(hexagon_results):
    rep = hexagon_results[0].report
    assert (rep.l, rep.u) == (63, 3)
    assert rep.l_over_u == 21


@pytest.mark.criterion(5, "dual GH(2,2) genus-1 score")
def test_gh22_genus1_score(hexagon_results, acceptance_note):
    res = hexagon_results[1]
    rep = res.report
    pair = score(res.geometry.structure, res.dessin.labels(), res.dessin, "pairwise")
    acceptance_note(f"iterated u={rep.u}, pairwise u={pair.u}")
    assert rep.l == 63
    assert rep.u == 4
    assert rep.l_over_u == Fraction(63, 4)


# --- 6. hyperplanes -------------------------------------------------------------

@pytest.mark.criterion(6, "hyperplane counts")
@pytest.mark.parametrize("name,h", [("grid(3,3)", 15), ("GQ(2,2)", 31)])
def test_hyperplanes_brute_and_closure(name, h):
    s = build(name)
    oracle = brute_hyperplanes(s.n, s.lines)
    brute = hyperplanes(s, "brute")
    closure = hyperplanes(s, "veldkamp")
    assert len(oracle) == h
    assert brute.masks == oracle
    assert closure.masks == oracle


@pytest.mark.criterion(6, "rounded log2 h")
def test_hyperplane_log2():
    start = time.perf_counter()
    expected = {"grid(3,3)": 4, "GQ(2,2)": 5, "GQ(2,4)": 6, "GH(2,2)": 14}
    got = {name: round(math.log2(hyperplanes(build(name), "veldkamp").h)) for name in expected}
    assert got == expected
    assert time.perf_counter() - start < 600


# --- 7. Pauli -------------------------------------------------------------------

@pytest.mark.criterion(7, "Mermin square and pentagram")
def test_pauli_configurations():
    grid = find_mermin_square()
    v = verify_mermin_square(grid)
    assert v.ok and v.negative_lines % 2 == 1
    ops, lines = find_pentagram()
    pv = verify_pentagram(ops, lines)
    assert pv.ok and pv.negative_lines % 2 == 1


@pytest.mark.criterion(7, "maximal commuting sets")
@pytest.mark.parametrize("n,target,lines", [(2, "triangle", 1), (3, "Fano", 7), (4, "PG(3,2)", 35)])
def test_pauli_max_commuting(n, target, lines):
    s, _ = max_commuting_geometry(n)
    assert s.num_lines == lines
    assert isomorphic(s, build(target))


# --- 8. Belyi -------------------------------------------------------------------

F2 = "(4/27)*x^6/(x^2-1)^2"
F1 = "-(1/64)*(x-1)^3*(x+3)^2 / x^3"


@pytest.mark.criterion(8, "f2 passport and P2")
def test_belyi_f2():
    start = time.perf_counter()
    f2 = parse_rational_map(F2)
    rep = passport_of(f2)
    assert rep.passport == ((6,), (2, 2, 1, 1), (2, 2, 2))
    assert rep.sums_ok and rep.critical_values_ok and rep.ok
    assert matches_dessin(f2, Dessin.from_pair(*P2, n=6))
    assert time.perf_counter() - start < 1.0
    assert rep.passport == tuple(map(tuple, sympy_fibers(F2)))


@pytest.mark.criterion(8, "f1 verdict")
def test_belyi_f1_verdict(acceptance_note):
    rep = passport_of(parse_rational_map(F1))
    assert not rep.ok
    assert rep.ramification == 6 and 2 * rep.degree - 2 == 8
    acceptance_note(f"f1 as printed: degree {rep.degree}, passport {rep.passport}, "
                    f"ramification {rep.ramification} of {2 * rep.degree - 2}")
