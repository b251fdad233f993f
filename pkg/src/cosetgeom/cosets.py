"""Coset enumeration: Todd-Coxeter for one subgroup, and the low-index
search that lists every subgroup (or conjugacy class) of a given index.
"""
from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Permutation
from .words import INVERSE, Presentation, Word, reduce

COLUMNS = "aAbB"
_COL = {c: i for i, c in enumerate(COLUMNS)}
_INV_COL = [1, 0, 3, 2]


class CosetLimitError(RuntimeError):
    """Enumeration exceeded its coset or node budget."""


@dataclass(frozen=True)
class CosetTable:
    """Complete right-coset action table; coset 0 is the subgroup itself."""

    n: int
    action: dict[str, tuple[int, ...]]
    transversal: tuple[Word, ...]

    def __post_init__(self):
        for c in COLUMNS:
            if len(self.action[c]) != self.n:
                raise ValueError(f"column {c} has wrong length")
        for c in COLUMNS:
            col, back = self.action[c], self.action[INVERSE[c]]
            if any(back[col[k]] != k for k in range(self.n)):
                raise ValueError(f"columns {c} and {INVERSE[c]} are not mutually inverse")

    def flat(self) -> tuple[int, ...]:
        return tuple(self.action[c][k] for k in range(self.n) for c in COLUMNS)

    def trace(self, coset: int, w: Word) -> int:
        for c in w.letters:
            coset = self.action[c][coset]
        return coset

    def satisfies(self, relators: Iterable[Word]) -> bool:
        rels = list(relators)
        return all(self.trace(k, r) == k for r in rels for k in range(self.n))

    def is_transitive(self) -> bool:
        seen = {0}
        queue = [0]
        for k in queue:
            for c in COLUMNS:
                d = self.action[c][k]
                if d not in seen:
                    seen.add(d)
                    queue.append(d)
        return len(seen) == self.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "action": {c: [k + 1 for k in self.action[c]] for c in COLUMNS},
            "transversal": [w.letters for w in self.transversal],
        }

    @classmethod
    def from_json(cls, data: str | dict) -> CosetTable:
        if isinstance(data, str):
            data = json.loads(data)
        action = {c: tuple(k - 1 for k in data["action"][c]) for c in COLUMNS if c in data["action"]}
        if "B" not in action:
            action["B"] = _inverse_column(action["b"])
        if "A" not in action:
            action["A"] = _inverse_column(action["a"])
        return cls(int(data["n"]), action, tuple(Word(w) for w in data["transversal"]))


def _inverse_column(col: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(col)
    for k, d in enumerate(col):
        out[d] = k
    return tuple(out)


def _standardize(rows: list[list[int]], base: int = 0, letters: str = COLUMNS) -> CosetTable:
    """Renumber cosets in BFS order from ``base`` and build the transversal."""
    order = [base]
    pos = {base: 0}
    words = {base: ""}
    for k in order:
        for c in letters:
            d = rows[k][_COL[c]]
            if d not in pos:
                pos[d] = len(order)
                words[d] = words[k] + c
                order.append(d)
    n = len(order)
    if n != len(rows):
        raise ValueError("table is not transitive")
    action = {c: tuple(pos[rows[order[i]][_COL[c]]] for i in range(n)) for c in COLUMNS}
    return CosetTable(n, action, tuple(Word(words[order[i]]) for i in range(n)))


def table_from_permutations(g0: Permutation, g1: Permutation, base: int = 0) -> CosetTable:
    """Coset table of the stabilizer of ``base`` in the action a -> g0, b -> g1."""
    a, b = g0.images, g1.images
    ai, bi = g0.inverse().images, g1.inverse().images
    rows = [[a[k], ai[k], b[k], bi[k]] for k in range(g0.degree)]
    return _standardize(rows, base)


def coset_action(t: CosetTable) -> tuple[Permutation, Permutation]:
    return Permutation(t.action["a"]), Permutation(t.action["b"])


def schreier_generators(t: CosetTable, p: Presentation | None = None) -> list[Word]:
    """Words generating the subgroup: t_k · x · (t_{k·x})⁻¹ over cosets k and x in {a, b}."""
    gens = []
    for k in range(t.n):
        for x in "ab":
            d = t.action[x][k]
            w = reduce(Word(t.transversal[k].letters + x + t.transversal[d].inverse().letters), p)
            if not w.is_identity() and w not in gens:
                gens.append(w)
    return gens


def _relator_columns(p: Presentation) -> list[list[int]]:
    rels = [r.letters for r in p.relators]
    if p.mode == "G" and "bb" not in rels:
        rels.append("bb")
    return [[_COL[c] for c in r] for r in rels]


# --- Todd-Coxeter (HLT with immediate coincidence processing) ---------------

def todd_coxeter(p: Presentation, subgroup_generators: Sequence[Word], max_cosets: int = 10**6) -> CosetTable:
    rels = _relator_columns(p)
    gens = [[_COL[c] for c in w.letters] for w in subgroup_generators]
    table: list[list[int]] = [[-1, -1, -1, -1]]
    parent = [0]
    live = [1]

    def define(c: int, x: int):
        if live[0] >= max_cosets:
            raise CosetLimitError(f"more than {max_cosets} cosets (index may be infinite)")
        d = len(table)
        table.append([-1, -1, -1, -1])
        parent.append(d)
        live[0] += 1
        table[c][x] = d
        table[d][_INV_COL[x]] = c

    def rep(c: int) -> int:
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(k: int, l: int, queue: list[int]):
        k, l = rep(k), rep(l)
        if k == l:
            return
        k, l = min(k, l), max(k, l)
        parent[l] = k
        live[0] -= 1
        queue.append(l)

    def coincidence(a: int, b: int):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(4):
                f = table[e][x]
                if f < 0:
                    continue
                xi = _INV_COL[x]
                if table[f][xi] == e:
                    table[f][xi] = -1
                e1, f1 = rep(e), rep(f)
                if table[e1][x] >= 0:
                    merge(f1, table[e1][x], queue)
                elif table[f1][xi] >= 0:
                    merge(e1, table[f1][xi], queue)
                else:
                    table[e1][x] = f1
                    table[f1][xi] = e1

    def scan_and_fill(c: int, w: list[int]):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][_INV_COL[w[j]]] >= 0:
                b = table[b][_INV_COL[w[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][_INV_COL[w[i]]] = f
                return
            define(f, w[i])

    for w in gens:
        if w:
            scan_and_fill(0, w)
    c = 0
    while c < len(table):
        if parent[c] == c:
            for r in rels:
                scan_and_fill(c, r)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(4):
                    if table[c][x] < 0:
                        define(c, x)
        c += 1

    alive = [k for k in range(len(table)) if parent[k] == k]
    index = {k: i for i, k in enumerate(alive)}
    rows = [[index[rep(table[k][x])] for x in range(4)] for k in alive]
    return _standardize(rows, 0)


# --- low-index subgroups ----------------------------------------------------

class _LowIndex:
    """Sims-style backtracking over partial coset tables in standard form.

    Undefined entries are filled in row-major order; a new coset always gets
    the next number, so every subgroup appears exactly once.  Relators are
    enforced by deduction after each assignment.
    """

    def __init__(self, p: Presentation, n: int, classes: bool, max_nodes: int | None = None):
        self.n = n
        self.classes = classes
        self.max_nodes = max_nodes
        self.nodes = 0
        self.invol = p.b_is_involution
        self.ncol = 3 if self.invol else 4
        self.inv = [1, 0, 2] if self.invol else [1, 0, 3, 2]
        rels = []
        for r in _relator_columns(p):
            if self.invol:
                r = [2 if x == 3 else x for x in r]
                if r == [2, 2]:
                    continue
            rels.append(r)
        rot: list[list[tuple[int, ...]]] = [[] for _ in range(self.ncol)]
        seen = set()
        for w in rels:
            wi = [self.inv[x] for x in reversed(w)]
            for ww in (w, wi):
                for i in range(len(ww)):
                    cyc = tuple(ww[i:] + ww[:i])
                    if cyc not in seen:
                        seen.add(cyc)
                        rot[cyc[0]].append(cyc)
        self.rot = rot
        self.table = [[-1] * self.ncol for _ in range(n)]
        self.results: list[list[list[int]]] = []

    def _scan(self, w, c, trail, queue) -> bool:
        T, inv = self.table, self.inv
        f, i, L = c, 0, len(w)
        while i < L:
            t = T[f][w[i]]
            if t < 0:
                break
            f = t
            i += 1
        if i == L:
            return f == c
        b, j = c, L - 1
        while j >= i:
            t = T[b][inv[w[j]]]
            if t < 0:
                break
            b = t
            j -= 1
        if j < i:
            return f == b
        if j == i:
            x = w[i]
            y = inv[x]
            if T[b][y] >= 0:
                return False
            T[f][x] = b
            T[b][y] = f
            trail.extend(((f, x), (b, y)))
            queue.extend(((f, x), (b, y)))
        return True

    def _assign(self, c, x, d, trail) -> bool:
        T = self.table
        y = self.inv[x]
        T[c][x] = d
        trail.append((c, x))
        if T[d][y] < 0:
            T[d][y] = c
            trail.append((d, y))
        elif T[d][y] != c:
            return False
        queue = [(c, x), (d, y)]
        while queue:
            cc, xx = queue.pop()
            for w in self.rot[xx]:
                if not self._scan(w, cc, trail, queue):
                    return False
        return True

    def _partial_canonical(self, k: int) -> bool:
        """False if re-basing at some coset gives a smaller standard table."""
        T, ncol = self.table, self.ncol
        for base in range(1, k):
            order = [base]
            pos = {base: 0}
            i = 0
            done = False
            while i < len(order) and i < k and not done:
                row, cur = T[order[i]], T[i]
                for x in range(ncol):
                    d, o = row[x], cur[x]
                    if d < 0 or o < 0:
                        done = True
                        break
                    v = pos.get(d)
                    if v is None:
                        v = pos[d] = len(order)
                        order.append(d)
                    if v < o:
                        return False
                    if v > o:
                        done = True
                        break
                i += 1
        return True

    def _first_gap(self, k):
        T = self.table
        for c in range(k):
            row = T[c]
            for x in range(self.ncol):
                if row[x] < 0:
                    return c, x
        return None

    def _choices(self, k, c, x):
        y = self.inv[x]
        out = [d for d in range(k) if self.table[d][y] < 0]
        if k < self.n:
            out.append(k)
        return out

    def run(self, k: int = 1, split_depth: int | None = None, path=(), tasks=None):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise CosetLimitError(f"low-index search exceeded {self.max_nodes} nodes")
        if self.classes and not self._partial_canonical(k):
            return
        gap = self._first_gap(k)
        if gap is None:
            if k == self.n and (not self.classes or self._partial_canonical(k)):
                self.results.append([row[:] for row in self.table])
            return
        if split_depth is not None and len(path) == split_depth:
            tasks.append(path)
            return
        c, x = gap
        for d in self._choices(k, c, x):
            trail: list[tuple[int, int]] = []
            if self._assign(c, x, d, trail):
                self.run(k + 1 if d == k else k, split_depth, path + (d,), tasks)
            for cc, xx in trail:
                self.table[cc][xx] = -1

    def replay(self, path: Sequence[int]) -> int | None:
        """Re-apply a branch path from the root; returns the coset count."""
        k = 1
        for d in path:
            c, x = self._first_gap(k)
            if not self._assign(c, x, d, []):
                return None
            k = k + 1 if d == k else k
        return k

    def to_table(self, rows: list[list[int]]) -> CosetTable:
        full = [[r[0], r[1], r[2], r[2] if self.invol else r[3]] for r in rows]
        return _standardize(full, 0)


def _subtree_worker(args):
    p, n, classes, path, max_nodes = args
    li = _LowIndex(p, n, classes, max_nodes)
    k = li.replay(path)
    if k is not None:
        li.run(k, path=path)
    return li.results, li.nodes


def low_index_subgroups(p: Presentation, n: int, up_to_conjugacy: bool = True, jobs: int = 1,
                        max_nodes: int | None = None) -> list[CosetTable]:
    """All subgroups of index exactly ``n`` (or one per conjugacy class).

    Output is sorted on the flattened table, independent of ``jobs``.
    """
    if n < 1:
        raise ValueError("index must be at least 1")
    li = _LowIndex(p, n, up_to_conjugacy, max_nodes)
    if jobs <= 1:
        li.run(1)
        rows = li.results
    else:
        tasks: list[tuple[int, ...]] = []
        li.run(1, split_depth=6, tasks=tasks)
        rows = list(li.results)
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for res, _ in ex.map(_subtree_worker, [(p, n, up_to_conjugacy, t, max_nodes) for t in tasks]):
                rows.extend(res)
    tables = [li.to_table(r) for r in rows]
    tables.sort(key=CosetTable.flat)
    return tables
