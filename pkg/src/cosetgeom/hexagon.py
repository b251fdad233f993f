"""The split Cayley hexagon of order (2,2) and its two G2(2)-dessins.

The hexagon is built on the 63 points of the parabolic quadric
x0x4 + x1x5 + x2x6 + x3^2 = 0 in PG(6,2); its lines are the quadric lines
whose Grassmann coordinates satisfy six linear conditions.

The dessins cannot come from an exhaustive low-index search at index 63,
so they are found inside the automorphism group of the hexagon instead:
pairs (x, y) with x^4 = y^2 = (xy)^7 = [x, y]^6 = 1 generating the whole
group, acting on points and on lines.  The result is stored as package
data; ``python3 -m cosetgeom.hexagon`` rebuilds it.
"""
from __future__ import annotations

import itertools
import json
from importlib import resources
from pathlib import Path

from .dessin import Dessin
from .geometry import IncidenceStructure, automorphism_generators
from .perm import Permutation, PermGroup, _inv, _is_id, _mul

DATA_FILE = "gh22_dessins.json"
G2_2_ORDER = 12096


def _quadric(x) -> int:
    return (x[0] * x[4] + x[1] * x[5] + x[2] * x[6] + x[3] * x[3]) % 2


def split_cayley_hexagon() -> IncidenceStructure:
    pts = [v for v in itertools.product((0, 1), repeat=7) if any(v) and _quadric(v) == 0]
    idx = {v: i for i, v in enumerate(pts)}
    lines = set()
    for x, y in itertools.combinations(pts, 2):
        z = tuple((a + b) % 2 for a, b in zip(x, y))
        if z not in idx:
            continue

        def p(i, j):
            return (x[i] * y[j] + x[j] * y[i]) % 2

        if (p(1, 2) == p(3, 4) and p(5, 4) == p(3, 2) and p(2, 0) == p(3, 5)
                and p(6, 5) == p(3, 0) and p(0, 1) == p(3, 6) and p(4, 6) == p(3, 1)):
            lines.add(tuple(sorted((idx[x], idx[y], idx[z]))))
    return IncidenceStructure.from_lines(len(pts), sorted(lines), "GH(2,2)")


def _power(x, k):
    y = tuple(range(len(x)))
    for _ in range(k):
        y = _mul(y, x)
    return y


def _order(x) -> int:
    k, y = 1, x
    while not _is_id(y):
        y = _mul(y, x)
        k += 1
    return k


def g2_dessins() -> list[Dessin]:
    """All dessins (up to isomorphism) from generating pairs of Aut(GH(2,2))."""
    h = split_cayley_hexagon()
    gens = [tuple(g) for g in automorphism_generators(h)]
    group = PermGroup([Permutation(g) for g in gens], h.n)
    if group.order() != G2_2_ORDER:
        raise RuntimeError(f"unexpected automorphism group order {group.order()}")
    els = list(group.chain.elements())
    ords = {x: _order(x) for x in els}
    invols = [x for x in els if ords[x] == 2]
    fours = [x for x in els if ords[x] in (2, 4)]
    reps, seen = [], set()
    for x in invols:
        if x in seen:
            continue
        orb, queue = {x}, [x]
        for y in queue:
            for g in gens:
                z = _mul(_mul(_inv(g), y), g)
                if z not in orb:
                    orb.add(z)
                    queue.append(z)
        seen |= orb
        reps.append(x)
    line_index = {line: i for i, line in enumerate(h.lines)}

    def on_lines(x):
        return tuple(line_index[tuple(sorted(x[p] for p in line))] for line in h.lines)

    found: dict[tuple, Dessin] = {}
    for y in reps:
        for x in fours:
            xy = _mul(x, y)
            if not _is_id(_power(xy, 7)):
                continue
            c = _mul(_mul(_mul(_inv(x), _inv(y)), x), y)
            if not _is_id(_power(c, 6)):
                continue
            if PermGroup([Permutation(x), Permutation(y)]).order() != G2_2_ORDER:
                continue
            for g0, g1 in ((x, y), (on_lines(x), on_lines(y))):
                d = Dessin(Permutation(g0), Permutation(g1))
                key = d.canonical()
                if key not in found:
                    found[key] = Dessin(Permutation(key[0]), Permutation(key[1]))
    return sorted(found.values(), key=lambda d: (d.genus, d.canonical()))


def load_g2_dessins() -> list[Dessin]:
    """The stored dessins, genus 0 (point action) first."""
    text = resources.files("cosetgeom").joinpath("data", DATA_FILE).read_text()
    return [Dessin.from_json(x) for x in json.loads(text)["dessins"]]


def write_g2_dessins(path: Path | None = None) -> Path:
    if path is None:
        path = Path(__file__).with_name("data") / DATA_FILE
    payload = {"group_order": G2_2_ORDER, "relations": ["b^2", "a^4", "(ab)^7", "(ABab)^6"],
               "dessins": [d.to_json() for d in g2_dessins()]}
    path.write_text(json.dumps(payload, indent=1) + "\n")
    return path


if __name__ == "__main__":
    print(write_g2_dessins())
