"""Named incidence structures.

Point numbering (0-based here, 1-based in JSON):

* ``grid(3,3)``: point ``3*i + j`` is row ``i``, column ``j``.
* ``PG(n,2)``: point ``v - 1`` is the nonzero vector of GF(2)^(n+1) whose
  binary expansion is ``v``; lines are triads ``{x, y, x ^ y}``.
* ``GQ(2,2)``: points are the 15 duads of {1..6} in lexicographic order,
  lines the 15 synthemes.
* ``GQ(2,4)``: singular points of x0x1 + x2x3 + x4^2 + x4x5 + x5^2 in
  increasing binary order; lines are singular triads summing to zero.
* ``GH(1,2)`` / ``GO(1,2)``: incidence graphs of the Fano plane / GQ(2,2);
  points first, then lines.  ``GH(2,1)`` / ``GO(2,1)`` are their duals.
* ``K(m,m)``, ``K(3,3,3)``: parts are consecutive blocks; lines are edges.
* ``Petersen``, ``Desargues``, ``pentagram``: points are the 10 duads of
  {1..5}; lines are disjoint pairs, the ten triples, and the five stars.
* ``Hesse`` is AG(2,3) with point ``3*x + y``; ``Pappus`` drops the
  parallel class of slope infinity.
* ``GH(2,2)`` and its dual come from the stored G2(2) dessins.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache

from .geometry import GeometryError, IncidenceStructure


def grid(rows: int = 3, cols: int = 3) -> IncidenceStructure:
    lines = [[cols * i + j for j in range(cols)] for i in range(rows)]
    lines += [[cols * i + j for i in range(rows)] for j in range(cols)]
    return IncidenceStructure.from_lines(rows * cols, lines, f"grid({rows},{cols})")


def projective_space(n: int) -> IncidenceStructure:
    top = 1 << (n + 1)
    lines = {tuple(sorted((x - 1, y - 1, (x ^ y) - 1))) for x in range(1, top) for y in range(x + 1, top)}
    return IncidenceStructure.from_lines(top - 1, sorted(lines), f"PG({n},2)")


def doily() -> IncidenceStructure:
    duads = list(itertools.combinations(range(6), 2))
    index = {d: i for i, d in enumerate(duads)}
    lines = set()
    for a, b, c in itertools.combinations(duads, 3):
        if len(set(a + b + c)) == 6:
            lines.add(tuple(sorted((index[a], index[b], index[c]))))
    return IncidenceStructure.from_lines(15, sorted(lines), "GQ(2,2)")


def elliptic_quadric() -> IncidenceStructure:
    def q(v):
        x = [(v >> i) & 1 for i in range(6)]
        return (x[0] * x[1] + x[2] * x[3] + x[4] + x[4] * x[5] + x[5]) % 2

    pts = [v for v in range(1, 64) if q(v) == 0]
    index = {v: i for i, v in enumerate(pts)}
    lines = {tuple(sorted((index[x], index[y], index[x ^ y])))
             for x, y in itertools.combinations(pts, 2) if (x ^ y) in index}
    return IncidenceStructure.from_lines(len(pts), sorted(lines), "GQ(2,4)")


def incidence_graph(s: IncidenceStructure, name: str) -> IncidenceStructure:
    edges = [(p, s.n + i) for i, line in enumerate(s.lines) for p in line]
    return IncidenceStructure.from_lines(s.n + s.num_lines, edges, name)


def complete_multipartite(*parts: int) -> IncidenceStructure:
    offs = list(itertools.accumulate((0,) + parts))
    blocks = [range(offs[i], offs[i + 1]) for i in range(len(parts))]
    edges = [(p, q) for b1, b2 in itertools.combinations(blocks, 2) for p in b1 for q in b2]
    return IncidenceStructure.from_lines(offs[-1], edges, "K(" + ",".join(map(str, parts)) + ")")


def _duads5():
    duads = list(itertools.combinations(range(5), 2))
    return duads, {d: i for i, d in enumerate(duads)}


def petersen() -> IncidenceStructure:
    duads, index = _duads5()
    edges = [(index[a], index[b]) for a, b in itertools.combinations(duads, 2) if not set(a) & set(b)]
    return IncidenceStructure.from_lines(10, edges, "Petersen")


def desargues() -> IncidenceStructure:
    _, index = _duads5()
    lines = [[index[d] for d in itertools.combinations(t, 2)] for t in itertools.combinations(range(5), 3)]
    return IncidenceStructure.from_lines(10, lines, "Desargues")


def pentagram() -> IncidenceStructure:
    duads, index = _duads5()
    lines = [[index[d] for d in duads if i in d] for i in range(5)]
    return IncidenceStructure.from_lines(10, lines, "pentagram")


def _affine_lines(skip_vertical: bool = False):
    lines = []
    for m in range(3):
        for c in range(3):
            lines.append([3 * x + (m * x + c) % 3 for x in range(3)])
    if not skip_vertical:
        lines += [[3 * c + y for y in range(3)] for c in range(3)]
    return lines


def hesse() -> IncidenceStructure:
    return IncidenceStructure.from_lines(9, _affine_lines(), "Hesse")


def pappus() -> IncidenceStructure:
    return IncidenceStructure.from_lines(9, _affine_lines(skip_vertical=True), "Pappus")


def octahedron() -> IncidenceStructure:
    """Triangles of the octahedron; antipodal pairs are (0,1), (2,3), (4,5)."""
    tris = [(a, 2 + b, 4 + c) for a in range(2) for b in range(2) for c in range(2)]
    return IncidenceStructure.from_lines(6, tris, "octahedron")


@lru_cache(maxsize=None)
def _hexagon(dual: bool) -> IncidenceStructure:
    from .extract import extract_geometries
    from .hexagon import load_g2_dessins

    d = load_g2_dessins()[1 if dual else 0]
    geo = next(g for g in extract_geometries(d) if g.order == 32)
    return IncidenceStructure(geo.structure.n, geo.structure.lines, "dual of GH(2,2)" if dual else "GH(2,2)")


def _fano_flags() -> IncidenceStructure:
    return incidence_graph(projective_space(2), "GH(1,2)")


BUILDERS = {
    "grid(3,3)": grid,
    "GQ(2,1)": lambda: IncidenceStructure(9, grid().lines, "GQ(2,1)"),
    "Fano": lambda: IncidenceStructure(7, projective_space(2).lines, "Fano"),
    "triangle": lambda: IncidenceStructure(3, projective_space(1).lines, "triangle"),
    "GQ(2,2)": doily,
    "GQ(2,4)": elliptic_quadric,
    "GH(1,2)": _fano_flags,
    "GH(2,1)": lambda: _fano_flags().dual("GH(2,1)"),
    "GO(1,2)": lambda: incidence_graph(doily(), "GO(1,2)"),
    "GO(2,1)": lambda: incidence_graph(doily(), "GO(1,2)").dual("GO(2,1)"),
    "K(3,3)": lambda: complete_multipartite(3, 3),
    "K(4,4)": lambda: complete_multipartite(4, 4),
    "K(5,5)": lambda: complete_multipartite(5, 5),
    "K(3,3,3)": lambda: complete_multipartite(3, 3, 3),
    "Petersen": petersen,
    "Desargues": desargues,
    "Pappus": pappus,
    "Hesse": hesse,
    "pentagram": pentagram,
    "octahedron": octahedron,
    "GH(2,2)": lambda: _hexagon(False),
    "dual GH(2,2)": lambda: _hexagon(True),
}
for _n in (1, 2, 3, 4):
    BUILDERS[f"PG({_n},2)"] = lambda _n=_n: projective_space(_n)

# structures cheap enough to compare against every extracted geometry
RECOGNIZABLE = [k for k in BUILDERS if k not in ("GH(2,2)", "dual GH(2,2)", "grid(3,3)", "PG(1,2)")]


def _normalize(name: str) -> str:
    return re.sub(r"[\s_-]+", "", name).lower()


_ALIASES = {_normalize(k): k for k in BUILDERS}
_ALIASES.update({"grid": "grid(3,3)", "doily": "GQ(2,2)", "mermin": "GQ(2,1)", "k33": "K(3,3)",
                 "k44": "K(4,4)", "k55": "K(5,5)", "k333": "K(3,3,3)", "fano": "Fano",
                 "dualofgh(2,2)": "dual GH(2,2)", "gh(2,2)dual": "dual GH(2,2)",
                 "pg(2,2)": "PG(2,2)", "mermin-pentagram": "pentagram", "merminpentagram": "pentagram"})


def names() -> list[str]:
    return list(BUILDERS)


def build(name: str) -> IncidenceStructure:
    key = _ALIASES.get(_normalize(name))
    if key is None:
        raise GeometryError(f"unknown geometry {name!r}; known: {', '.join(BUILDERS)}")
    return BUILDERS[key]()


def recognize(s: IncidenceStructure) -> list[str]:
    """Catalog names whose structure is isomorphic to ``s``."""
    from .geometry import isomorphic

    out = []
    for name in RECOGNIZABLE:
        ref = BUILDERS[name]()
        if ref.n == s.n and ref.num_lines == s.num_lines and isomorphic(ref, s):
            out.append(name)
    return out
