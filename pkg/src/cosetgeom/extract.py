"""Geometries read off a dessin from its two-point stabilizers.

Two pairs of points belong to the same line family when their two-point
stabilizers are the same subgroup.  Each family's pairs form a graph
whose maximal cliques are the lines.  Families are grouped into
geometries by the order of the common stabilizer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from .dessin import Dessin
from .geometry import IncidenceStructure
from .perm import PermGroup, profile


@dataclass
class StabilizerGeometry:
    order: int
    structure: IncidenceStructure
    subgroups: list[PermGroup] = field(repr=False)
    pairs: dict[int, list[tuple[int, int]]] = field(repr=False)

    def profile(self) -> dict:
        return profile(self.subgroups[0])

    def to_json(self) -> dict:
        out = {"stabilizer_order": self.order, "families": len(self.subgroups)}
        out.update(self.structure.to_json())
        return out


def _fixed_points(g: PermGroup) -> frozenset[int]:
    return frozenset(x for x in range(g.degree) if all(s.images[x] == x for s in g.generators))


def pair_families(d: Dessin) -> tuple[list[PermGroup], dict[tuple[int, int], int]]:
    """Distinct two-point stabilizers and the family index of each pair.

    Candidates are bucketed by (order, fixed-point set), then compared by
    membership, so equality is exact for groups of any size.
    """
    g = d.group
    subgroups: list[PermGroup] = []
    buckets: dict[tuple, list[int]] = {}
    family: dict[tuple[int, int], int] = {}
    for p, q in combinations(range(d.n), 2):
        h = g.two_point_stabilizer(p, q)
        key = (h.order(), _fixed_points(h))
        found = None
        for idx in buckets.get(key, ()):
            if h.is_subgroup_of(subgroups[idx]):
                found = idx
                break
        if found is None:
            found = len(subgroups)
            subgroups.append(h)
            buckets.setdefault(key, []).append(found)
        family[(p, q)] = found
    return subgroups, family


def extract_geometries(d: Dessin, min_line: int = 2) -> list[StabilizerGeometry]:
    """One geometry per stabilizer order, sorted by that order."""
    subgroups, family = pair_families(d)
    by_family: dict[int, list[tuple[int, int]]] = {}
    for pair, idx in family.items():
        by_family.setdefault(idx, []).append(pair)
    by_order: dict[int, list[int]] = {}
    for idx, h in enumerate(subgroups):
        by_order.setdefault(h.order(), []).append(idx)
    out = []
    for order in sorted(by_order):
        lines = []
        for idx in by_order[order]:
            graph = nx.Graph(by_family[idx])
            lines.extend(tuple(sorted(c)) for c in nx.find_cliques(graph) if len(c) >= min_line)
        if not lines:
            continue
        s = IncidenceStructure.from_lines(d.n, sorted(set(lines)), f"stabilizer order {order}")
        out.append(StabilizerGeometry(order, s, [subgroups[i] for i in by_order[order]],
                                      {i: by_family[i] for i in by_order[order]}))
    return out
