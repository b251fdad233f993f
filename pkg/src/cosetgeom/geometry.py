"""Point-line incidence structures.

Points are ``0..n-1``; a line is a sorted tuple of at least two points.
JSON and DOT output use 1-based point numbers.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

INF = float("inf")


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class IncidenceStructure:
    n: int
    lines: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        norm = []
        for line in self.lines:
            pts = tuple(sorted(set(line)))
            if len(pts) != len(line) or len(pts) < 2:
                raise GeometryError(f"line {line} needs at least two distinct points")
            if pts[0] < 0 or pts[-1] >= self.n:
                raise GeometryError(f"line {line} leaves the point range 0..{self.n - 1}")
            norm.append(pts)
        norm.sort()
        if len(set(norm)) != len(norm):
            raise GeometryError("duplicate lines")
        object.__setattr__(self, "lines", tuple(norm))

    @classmethod
    def from_lines(cls, n: int, lines: Iterable[Iterable[int]], name: str = "") -> IncidenceStructure:
        return cls(n, tuple(tuple(line) for line in lines), name)

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        acc: list[list[int]] = [[] for _ in range(self.n)]
        for i, line in enumerate(self.lines):
            for p in line:
                acc[p].append(i)
        return tuple(tuple(x) for x in acc)

    @cached_property
    def collinear(self) -> tuple[frozenset[int], ...]:
        acc: list[set[int]] = [set() for _ in range(self.n)]
        for line in self.lines:
            for p in line:
                acc[p].update(line)
        for p in range(self.n):
            acc[p].discard(p)
        return tuple(frozenset(x) for x in acc)

    def line_sizes(self) -> list[int]:
        return sorted({len(line) for line in self.lines})

    def point_degrees(self) -> list[int]:
        return sorted({len(x) for x in self.lines_through})

    def relabel(self, sigma: Sequence[int]) -> IncidenceStructure:
        """Image under the point map ``p -> sigma[p]``."""
        return IncidenceStructure.from_lines(self.n, ([sigma[p] for p in line] for line in self.lines), self.name)

    def dual(self, name: str = "") -> IncidenceStructure:
        return IncidenceStructure.from_lines(self.num_lines, self.lines_through, name or f"dual of {self.name}")

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            for x in comp:
                for y in self.collinear[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
            comps.append(sorted(comp))
        return comps

    def to_json(self) -> dict:
        return {"points": self.n, "lines": [[p + 1 for p in line] for line in self.lines], "name": self.name}

    @classmethod
    def from_json(cls, data: str | dict) -> IncidenceStructure:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_lines(int(data["points"]), ([p - 1 for p in line] for line in data["lines"]),
                              data.get("name", ""))

    def to_dot(self, graph: str = "incidence", labels: Sequence[str] | None = None) -> str:
        """DOT text for the incidence graph or the collinearity graph."""
        name = lambda p: labels[p] if labels else str(p + 1)  # noqa: E731
        out = ["graph G {", "  node [shape=circle];"]
        for p in range(self.n):
            out.append(f'  p{p} [label="{name(p)}"];')
        if graph == "incidence":
            for i, line in enumerate(self.lines):
                out.append(f'  L{i} [shape=box, label="L{i + 1}"];')
                out.extend(f"  p{p} -- L{i};" for p in line)
        elif graph == "collinearity":
            for p in range(self.n):
                out.extend(f"  p{p} -- p{q};" for q in sorted(self.collinear[p]) if q > p)
        else:
            raise ValueError(f"unknown graph kind {graph!r}")
        out.append("}")
        return "\n".join(out) + "\n"


def collinearity_distance(s: IncidenceStructure, p: int, q: int) -> float:
    """BFS distance in the collinearity graph; ``inf`` when unreachable."""
    return _distances_from(s, p)[q]


def _distances_from(s: IncidenceStructure, p: int) -> list[float]:
    dist: list[float] = [INF] * s.n
    dist[p] = 0
    queue = deque([p])
    while queue:
        x = queue.popleft()
        for y in s.collinear[x]:
            if dist[y] == INF:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def incidence_adjacency(s: IncidenceStructure) -> list[list[int]]:
    """Incidence graph: vertices ``0..n-1`` are points, ``n + i`` is line ``i``."""
    adj: list[list[int]] = [list() for _ in range(s.n + s.num_lines)]
    for i, line in enumerate(s.lines):
        for p in line:
            adj[p].append(s.n + i)
            adj[s.n + i].append(p)
    return adj


@dataclass
class PolygonVerdict:
    ok: bool
    reason: str = ""
    diameter: float = 0
    girth: float = 0

    def __bool__(self) -> bool:
        return self.ok


def _graph_girth_and_diameter(adj: list[list[int]]) -> tuple[float, float]:
    girth: float = INF
    diam: float = 0
    for s in range(len(adj)):
        dist = [-1] * len(adj)
        parent = [-1] * len(adj)
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    girth = min(girth, dist[x] + dist[y] + 1)
        if min(dist) < 0:
            return girth, INF
        diam = max(diam, max(dist))
    return girth, diam


def polygon_check(s: IncidenceStructure, gon: int, order: tuple[int, int]) -> PolygonVerdict:
    """Test for a generalized ``gon``-gon of order ``(s, t)``."""
    if not s.is_connected():
        raise GeometryError(f"structure is disconnected: components {s.components()}")
    ss, tt = order
    bad = [line for line in s.lines if len(line) != ss + 1]
    if bad:
        return PolygonVerdict(False, f"line {bad[0]} has {len(bad[0])} points, expected {ss + 1}")
    for p, through in enumerate(s.lines_through):
        if len(through) != tt + 1:
            return PolygonVerdict(False, f"point {p} lies on {len(through)} lines, expected {tt + 1}")
    girth, diam = _graph_girth_and_diameter(incidence_adjacency(s))
    if diam != gon:
        return PolygonVerdict(False, f"incidence graph diameter {diam} != {gon}", diam, girth)
    if girth != 2 * gon:
        return PolygonVerdict(False, f"incidence graph girth {girth} != {2 * gon}", diam, girth)
    return PolygonVerdict(True, "", diam, girth)


# --- isomorphism by individualization and refinement -------------------------

def _refine(adj: list[list[int]], colors: list[int], registry: dict) -> list[int]:
    """Colour refinement to a stable partition.

    ``registry`` maps signatures to colour ids and is shared between the two
    graphs under comparison, so equal ids mean equal refinement histories.
    """
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        new = []
        for sig in sigs:
            if sig not in registry:
                registry[sig] = len(registry)
            new.append(registry[sig])
        k = len(set(new))
        colors = new
        if k == ncolors:
            return colors
        ncolors = k


def _initial_colors(s: IncidenceStructure) -> list[int]:
    return ([1000 + len(t) for t in s.lines_through]
            + [2000 + len(line) for line in s.lines])


def _cells(colors: list[int]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def _search(adj1, adj2, c1, c2, n_points, fixed=None, first_only=True):
    """Yield vertex bijections adj1 -> adj2 respecting the colourings."""
    # individualization colours must not collide with refinement ids
    stack_id = [10**9]

    def rec(c1, c2):
        reg: dict = {}
        c1 = _refine(adj1, c1, reg)
        c2 = _refine(adj2, c2, reg)
        cells1, cells2 = _cells(c1), _cells(c2)
        if sorted((k, len(v)) for k, v in cells1.items()) != sorted((k, len(v)) for k, v in cells2.items()):
            return
        big = [k for k, v in cells1.items() if len(v) > 1]
        if not big:
            mapping = {cells1[k][0]: cells2[k][0] for k in cells1}
            if all(sorted(mapping[w] for w in adj1[v]) == sorted(adj2[mapping[v]]) for v in mapping):
                yield [mapping[v] for v in range(len(adj1))]
            return
        # smallest non-singleton cell, preferring point cells
        k = min(big, key=lambda k: (cells1[k][0] >= n_points, len(cells1[k]), k))
        v = cells1[k][0]
        for w in cells2[k]:
            stack_id[0] += 1
            d1 = list(c1)
            d2 = list(c2)
            d1[v] = d2[w] = stack_id[0]
            yield from rec(d1, d2)

    if fixed:
        c1, c2 = list(c1), list(c2)
        for v, w in fixed:
            stack_id[0] += 1
            c1[v] = c2[w] = stack_id[0]
    yield from rec(c1, c2)


def isomorphism(s1: IncidenceStructure, s2: IncidenceStructure,
                fixed: Sequence[tuple[int, int]] = ()) -> list[int] | None:
    """A point bijection carrying the lines of ``s1`` onto those of ``s2``, or None."""
    if s1.n != s2.n or s1.num_lines != s2.num_lines:
        return None
    if sorted(map(len, s1.lines)) != sorted(map(len, s2.lines)):
        return None
    adj1, adj2 = incidence_adjacency(s1), incidence_adjacency(s2)
    for m in _search(adj1, adj2, _initial_colors(s1), _initial_colors(s2), s1.n, fixed):
        return m[: s1.n]
    return None


def isomorphic(s1: IncidenceStructure, s2: IncidenceStructure) -> bool:
    return isomorphism(s1, s2) is not None


def automorphism_generators(s: IncidenceStructure) -> list[list[int]]:
    """Strong generators of the automorphism group, as point permutations.

    Walks the base 0, 1, 2, ...: at each level, one automorphism fixing the
    earlier base points is found for every image of the next base point
    that is not yet in its orbit.
    """
    adj = incidence_adjacency(s)
    base_colors = _initial_colors(s)
    gens: list[list[int]] = []
    fixed: list[tuple[int, int]] = []
    for p in range(s.n):
        colors = list(base_colors)
        for i, (v, _) in enumerate(fixed):
            colors[v] = 10**8 + i
        colors = _refine(adj, colors, {})
        cell = [q for q in range(s.n) if colors[q] == colors[p]]
        if len(cell) > 1:
            level = [g for g in gens if all(g[v] == v for v, _ in fixed)]
            orbit = _orbit(p, level)
            for q in cell:
                if q in orbit:
                    continue
                m = isomorphism(s, s, fixed + [(p, q)])
                if m is not None:
                    gens.append(m)
                    level.append(m)
                    orbit = _orbit(p, level)
        fixed.append((p, p))
        if len(set(colors)) == len(colors):
            break
    return gens


def _orbit(p: int, gens: list[list[int]]) -> set[int]:
    orb = {p}
    queue = [p]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in orb:
                orb.add(y)
                queue.append(y)
    return orb
