"""Dessins d'enfants as transitive permutation pairs (g0, g1)."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .cosets import CosetTable, coset_action
from .perm import Permutation, PermGroup, orbits
from .words import Word

DEFAULT_PRIORITY = "aAbB"


class DessinError(ValueError):
    pass


@dataclass(frozen=True)
class Dessin:
    """Black vertices are cycles of g0, white vertices cycles of g1 and
    faces cycles of g_inf = (g0 g1)^-1, so that g0 g1 g_inf = 1."""

    g0: Permutation
    g1: Permutation

    def __post_init__(self):
        if self.g0.degree != self.g1.degree:
            raise DessinError("g0 and g1 have different degrees")
        orbs = orbits([self.g0, self.g1], self.g0.degree)
        if len(orbs) != 1:
            parts = ", ".join("{" + ",".join(str(p + 1) for p in o) + "}" for o in orbs)
            raise DessinError(f"permutation pair is not transitive; orbits {parts}")

    @classmethod
    def from_pair(cls, g0: Permutation | str, g1: Permutation | str, n: int | None = None) -> Dessin:
        if isinstance(g0, str):
            g0 = Permutation.from_cycles(g0, n)
        if isinstance(g1, str):
            g1 = Permutation.from_cycles(g1, n if n is not None else g0.degree)
        if g0.degree != g1.degree:
            m = max(g0.degree, g1.degree)
            g0 = Permutation.from_cycles(str(g0), m)
            g1 = Permutation.from_cycles(str(g1), m)
        return cls(g0, g1)

    @classmethod
    def from_table(cls, t: CosetTable) -> Dessin:
        return cls(*coset_action(t))

    @property
    def n(self) -> int:
        return self.g0.degree

    @cached_property
    def g_inf(self) -> Permutation:
        return (self.g0 * self.g1).inverse()

    @cached_property
    def group(self) -> PermGroup:
        return PermGroup([self.g0, self.g1])

    def signature(self) -> tuple[int, int, int, int]:
        """(B, W, F, genus)."""
        b = len(self.g0.cycles())
        w = len(self.g1.cycles())
        f = len(self.g_inf.cycles())
        chi = b + w + f - self.n
        if chi % 2:
            raise DessinError("odd Euler characteristic")
        return b, w, f, (2 - chi) // 2

    @property
    def genus(self) -> int:
        return self.signature()[3]

    def passport(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        """Cycle lengths of (g0, g1, g_inf), each in decreasing order."""
        return tuple(tuple(sorted(p.cycle_type(), reverse=True))  # type: ignore[return-value]
                     for p in (self.g0, self.g1, self.g_inf))

    def labels(self, priority: str = DEFAULT_PRIORITY, base: int = 0) -> list[Word]:
        """Shortest words carrying ``base`` to each point, ties broken by letter priority."""
        for c in DEFAULT_PRIORITY:
            if c not in priority:
                priority += c
        act = {"a": self.g0.images, "A": self.g0.inverse().images,
               "b": self.g1.images, "B": self.g1.inverse().images}
        words: dict[int, str] = {base: ""}
        queue = [base]
        for k in queue:
            for c in priority:
                d = act[c][k]
                if d not in words:
                    words[d] = words[k] + c
                    queue.append(d)
        return [Word(words[k]) for k in range(self.n)]

    def labels_variants(self, base: int = 0) -> list[tuple[str, list[Word]]]:
        """BFS labelings for the 6 priority orders of a, A, b (deduplicated)."""
        out: list[tuple[str, list[Word]]] = []
        seen = set()
        for order in itertools.permutations("aAb"):
            pr = "".join(order) + "B"
            lab = self.labels(pr, base)
            key = tuple(w.letters for w in lab)
            if key not in seen:
                seen.add(key)
                out.append((pr, lab))
        return out

    def rebased(self, base: int) -> Dessin:
        """Same dessin with points renumbered in BFS order from ``base``."""
        act = {"a": self.g0.images, "A": self.g0.inverse().images,
               "b": self.g1.images, "B": self.g1.inverse().images}
        seq = _bfs_order(act, base)
        pos = {p: i for i, p in enumerate(seq)}
        g0 = Permutation(tuple(pos[self.g0.images[seq[i]]] for i in range(self.n)))
        g1 = Permutation(tuple(pos[self.g1.images[seq[i]]] for i in range(self.n)))
        return Dessin(g0, g1)

    def canonical(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Lexicographically least rebased pair; equal iff isomorphic."""
        return min((d.g0.images, d.g1.images) for d in (self.rebased(b) for b in range(self.n)))

    def is_isomorphic(self, other: Dessin) -> bool:
        return (self.n == other.n and self.passport() == other.passport()
                and self.canonical() == other.canonical())

    def to_json(self) -> dict:
        b, w, f, g = self.signature()
        return {
            "n": self.n,
            "g0": str(self.g0),
            "g1": str(self.g1),
            "g_inf": str(self.g_inf),
            "signature": {"B": b, "W": w, "F": f, "genus": g},
            "labels": [w.letters for w in self.labels()],
        }

    @classmethod
    def from_json(cls, data: str | dict) -> Dessin:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_pair(data["g0"], data["g1"], int(data["n"]))

    def conjugate(self, sigma: Permutation) -> Dessin:
        """Relabel points by ``sigma``: both generators conjugated."""
        return Dessin(self.g0.conjugate(sigma), self.g1.conjugate(sigma))

    def to_dot(self) -> str:
        """Bipartite map: black and white vertices joined by one edge per point."""
        lines = ["graph dessin {"]
        for i, c in enumerate(self.g0.cycles()):
            lines.append(f'  b{i} [shape=circle, style=filled, fillcolor=black, label=""];')
        for j, c in enumerate(self.g1.cycles()):
            lines.append(f'  w{j} [shape=circle, label=""];')
        black = {x: i for i, c in enumerate(self.g0.cycles()) for x in c}
        white = {x: j for j, c in enumerate(self.g1.cycles()) for x in c}
        for x in range(self.n):
            lines.append(f'  b{black[x]} -- w{white[x]} [label="{x + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bfs_order(act: dict[str, Sequence[int]], base: int) -> list[int]:
    seq = [base]
    seen = {base}
    for k in seq:
        for c in DEFAULT_PRIORITY:
            d = act[c][k]
            if d not in seen:
                seen.add(d)
                seq.append(d)
    return seq
