"""Geometric hyperplanes and their Veldkamp closure.

A hyperplane is a proper point set meeting every line in one point or
containing it.  Sets are bitmasks, bit ``p`` for point ``p``.  The sum
H1 ⊞ H2 is the complement of the symmetric difference, so complements
add by XOR.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (INF, GeometryError, IncidenceStructure, _distances_from,
                       _graph_girth_and_diameter, incidence_adjacency)

BRUTE_LIMIT = 25
_CHUNK = 1 << 20


class HyperplaneError(GeometryError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    mask: int
    n: int

    @property
    def points(self) -> list[int]:
        return [p for p in range(self.n) if self.mask >> p & 1]

    def to_json(self) -> list[int]:
        return [p + 1 for p in self.points]


@dataclass(frozen=True)
class HyperplaneSet:
    n: int
    masks: frozenset[int]
    mode: str

    @property
    def h(self) -> int:
        return len(self.masks)

    @property
    def log2_h(self) -> float:
        return math.log2(self.h) if self.h else float("-inf")

    def hyperplanes(self) -> list[Hyperplane]:
        return [Hyperplane(m, self.n) for m in sorted(self.masks)]

    def to_json(self, with_sets: bool = False) -> dict:
        out = {"points": self.n, "h": self.h, "log2_h": self.log2_h,
               "round_log2_h": round(self.log2_h), "mode": self.mode}
        if with_sets:
            out["hyperplanes"] = [x.to_json() for x in self.hyperplanes()]
        return out


def _full(n: int) -> int:
    return (1 << n) - 1


def line_masks(s: IncidenceStructure) -> list[int]:
    return [sum(1 << p for p in line) for line in s.lines]


def is_hyperplane(s: IncidenceStructure, mask: int) -> bool:
    if mask == _full(s.n) or mask == 0:
        return False
    for lm, line in zip(line_masks(s), s.lines):
        k = bin(mask & lm).count("1")
        if k != 1 and k != len(line):
            return False
    return True


def veldkamp_sum(h1: int, h2: int, n: int) -> int:
    """Complement of the symmetric difference."""
    return _full(n) ^ h1 ^ h2


def _valid(arr: np.ndarray, lms: list[int], sizes: list[int], full: int) -> np.ndarray:
    ok = (arr != np.uint64(full)) & (arr != 0)
    for lm, size in zip(lms, sizes):
        k = np.bitwise_count(arr & np.uint64(lm))
        ok &= (k == 1) | (k == size)
    return ok


def polygon_gon(s: IncidenceStructure) -> int:
    """The ``gon`` of a generalized polygon (girth = 2 * diameter), else error."""
    if not s.is_connected():
        raise HyperplaneError("structure is disconnected, not a generalized polygon")
    girth, diam = _graph_girth_and_diameter(incidence_adjacency(s))
    if diam == INF or girth != 2 * diam:
        raise HyperplaneError(f"not a generalized polygon (incidence girth {girth}, diameter {diam})")
    return int(diam)


def singular_hyperplanes(s: IncidenceStructure, gon: int | None = None) -> list[int]:
    """For each point, the points within collinearity distance gon/2 - 1."""
    gon = polygon_gon(s) if gon is None else gon
    radius = gon // 2 - 1
    out = []
    for p in range(s.n):
        dist = _distances_from(s, p)
        out.append(sum(1 << q for q in range(s.n) if dist[q] <= radius))
    return out


def _brute(s: IncidenceStructure) -> set[int]:
    if s.n > BRUTE_LIMIT:
        raise HyperplaneError(f"brute force needs n <= {BRUTE_LIMIT}, got {s.n}")
    lms, sizes, full = line_masks(s), [len(x) for x in s.lines], _full(s.n)
    found: set[int] = set()
    for start in range(0, 1 << s.n, _CHUNK):
        arr = np.arange(start, min(start + _CHUNK, 1 << s.n), dtype=np.uint64)
        found.update(int(x) for x in arr[_valid(arr, lms, sizes, full)])
    return found


def _reduce_basis(vectors: list[int]) -> list[int]:
    """Echelon basis of the GF(2) span (distinct leading bits, descending)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def even_cycle_basis(s: IncidenceStructure) -> list[int]:
    """Basis of the sets meeting every line in an even number of points.

    For lines of three points these are exactly the complements of the
    hyperplanes (a line meets the complement in 0 or 2 points).
    """
    rows = _reduce_basis(line_masks(s))
    pivots = [r.bit_length() - 1 for r in rows]
    # reduced row echelon form, then read off the null space
    for i in range(len(rows)):
        for j in range(len(rows)):
            if j != i and rows[j] >> pivots[i] & 1:
                rows[j] ^= rows[i]
    free = [p for p in range(s.n) if p not in set(pivots)]
    out = []
    for f in free:
        v = 1 << f
        for r, p in zip(rows, pivots):
            if r >> f & 1:
                v |= 1 << p
        out.append(v)
    return out


def _span(basis_src: list[int], limit: int) -> np.ndarray | None:
    """Nonzero elements of the GF(2) span, or None past ``limit``."""
    basis = _reduce_basis(basis_src)
    if len(basis) > limit:
        return None
    arr = np.zeros(1, dtype=np.uint64)
    for b in basis:
        arr = np.concatenate([arr, arr ^ np.uint64(b)])
    return arr[1:]


def _closure(seeds: list[int], lms, sizes, full) -> set[int]:
    """Fixpoint of pairwise sums, keeping only hyperplanes (complement form)."""
    known = np.array(sorted(set(seeds)), dtype=np.uint64)
    frontier = known
    while frontier.size:
        new_parts = []
        block = max(1, (1 << 22) // max(1, known.size))
        for i in range(0, frontier.size, block):
            cand = (frontier[i:i + block, None] ^ known[None, :]).ravel()
            cand = np.unique(cand)
            cand = cand[~np.isin(cand, known, assume_unique=True)]
            cand = cand[_valid(full ^ cand, lms, sizes, full)]
            new_parts.append(cand)
        frontier = np.unique(np.concatenate(new_parts)) if new_parts else np.zeros(0, np.uint64)
        frontier = frontier[~np.isin(frontier, known, assume_unique=True)]
        known = np.union1d(known, frontier)
    return {full ^ int(c) for c in known}


def veldkamp_seeds(s: IncidenceStructure, seeds: str = "full") -> list[int]:
    """Seed hyperplanes (as masks) for the closure.

    ``singular``: the singular hyperplanes that are hyperplanes.  ``full``
    adds, for geometries with three points per line, the complements of a
    basis of the even-intersection space; singular seeds alone may span
    only part of the hyperplane space (15 of the 31 hyperplanes of GQ(2,2)).
    """
    if seeds not in ("singular", "full"):
        raise ValueError(f"unknown seed set {seeds!r}")
    out = [h for h in singular_hyperplanes(s) if is_hyperplane(s, h)]
    if seeds == "full" and all(len(line) == 3 for line in s.lines):
        out += [_full(s.n) ^ c for c in even_cycle_basis(s)]
    return sorted(set(out))


def _veldkamp(s: IncidenceStructure, seeds: str = "full") -> set[int]:
    if s.n > 64:
        raise HyperplaneError("veldkamp mode supports at most 64 points")
    full = _full(s.n)
    lms, sizes = line_masks(s), [len(x) for x in s.lines]
    comps = [full ^ h for h in veldkamp_seeds(s, seeds)]
    if not comps:
        return set()
    # Shortcut: the fixpoint always lies inside the span of the seeds; when
    # every element of that span is a hyperplane, nothing is ever discarded
    # and the fixpoint is the whole span.
    span = _span(comps, 24)
    if span is not None and bool(_valid(full ^ span, lms, sizes, full).all()):
        return {full ^ int(c) for c in span}
    return _closure(comps, lms, sizes, full)


def hyperplanes(s: IncidenceStructure, mode: str = "veldkamp", seeds: str = "full") -> HyperplaneSet:
    if mode == "brute":
        return HyperplaneSet(s.n, frozenset(_brute(s)), mode)
    if mode == "veldkamp":
        return HyperplaneSet(s.n, frozenset(_veldkamp(s, seeds)), f"veldkamp/{seeds}")
    raise ValueError(f"unknown mode {mode!r}; expected 'brute' or 'veldkamp'")
