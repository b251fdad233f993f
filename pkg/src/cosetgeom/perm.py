"""Permutations and permutation groups.

Points are 0-based internally; cycle notation on input and output is
1-based, e.g. ``"(1,2,3)(4,5,6)"``.  Products act on the right:
``(p * q)(i) == q(p(i))``, so a word is evaluated left to right.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from math import lcm, prod
from typing import Iterable, Iterator, Sequence

from .words import Word

Images = tuple[int, ...]


def _mul(p: Images, q: Images) -> Images:
    return tuple([q[i] for i in p])


def _inv(p: Images) -> Images:
    r = [0] * len(p)
    for i, j in enumerate(p):
        r[j] = i
    return tuple(r)


def _is_id(p: Images) -> bool:
    return all(i == j for i, j in enumerate(p))


@dataclass(frozen=True, order=True)
class Permutation:
    images: Images

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a bijection")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, text: str, n: int | None = None) -> Permutation:
        cyc = [[int(x) - 1 for x in c.split(",") if x.strip()]
               for c in re.findall(r"\(([^()]*)\)", text)]
        top = max((max(c) + 1 for c in cyc if c), default=0)
        n = top if n is None else n
        if top > n:
            raise ValueError(f"cycle point {top} exceeds degree {n}")
        img = list(range(n))
        for c in cyc:
            if len(set(c)) != len(c):
                raise ValueError(f"repeated point in cycle {c}")
            for i, x in enumerate(c):
                img[x] = c[(i + 1) % len(c)]
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(_mul(self.images, other.images))

    def inverse(self) -> Permutation:
        return Permutation(_inv(self.images))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(k) % max(self.order(), 1)):
            out = out * base
        return out

    def conjugate(self, s: Permutation) -> Permutation:
        """s⁻¹ · self · s (relabel points by s)."""
        return s.inverse() * self * s

    def is_identity(self) -> bool:
        return _is_id(self.images)

    def cycles(self, singletons: bool = True) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            c = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                c.append(j)
                seen[j] = True
                j = self.images[j]
            if singletons or len(c) > 1:
                out.append(tuple(c))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        return lcm(*self.cycle_type()) if self.degree else 1

    def __str__(self) -> str:
        cs = self.cycles(singletons=False)
        if not cs:
            return "()"
        return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cs)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def evaluate(w: Word, g0: Permutation, g1: Permutation) -> Permutation:
    """Image of ``w`` under a -> g0, b -> g1 (letters applied left to right)."""
    if g0.degree != g1.degree:
        raise ValueError("degree mismatch between g0 and g1")
    table = {"a": g0.images, "A": _inv(g0.images), "b": g1.images, "B": _inv(g1.images)}
    p = tuple(range(g0.degree))
    for c in w.letters:
        p = _mul(p, table[c])
    return Permutation(p)


def orbits(gens: Sequence[Permutation], n: int) -> list[list[int]]:
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        for x in orb:
            for g in gens:
                y = g.images[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(sorted(orb))
    return out


class _Chain:
    """Base and strong generating set from deterministic Schreier-Sims."""

    def __init__(self, n: int, gens: Sequence[Images], base_prefix: Sequence[int] = ()):
        self.n = n
        ident = tuple(range(n))
        gens = [g for g in dict.fromkeys(gens) if g != ident]
        base = list(base_prefix)
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(next(i for i in range(n) if g[i] != i))
        S = [[g for g in gens if all(g[base[j]] == base[j] for j in range(i))]
             for i in range(len(base))]
        T = [self._transversal(base[i], S[i], n) for i in range(len(base))]
        i = len(base) - 1
        while i >= 0:
            added = self._check_level(i, base, S, T)
            i = added if added is not None else i - 1
        self.base = base
        self.strong = S
        self.trans = T

    @staticmethod
    def _transversal(point: int, gens: Sequence[Images], n: int) -> dict[int, Images]:
        T = {point: tuple(range(n))}
        queue = [point]
        for x in queue:
            ux = T[x]
            for g in gens:
                y = g[x]
                if y not in T:
                    T[y] = _mul(ux, g)
                    queue.append(y)
        return T

    def _check_level(self, i, base, S, T):
        n = self.n
        for b, ub in list(T[i].items()):
            for s in S[i]:
                c = s[b]
                h = _mul(_mul(ub, s), _inv(T[i][c]))
                if _is_id(h):
                    continue
                j = i + 1
                while j < len(base):
                    x = h[base[j]]
                    if x not in T[j]:
                        break
                    h = _mul(h, _inv(T[j][x]))
                    j += 1
                if j == len(base):
                    if _is_id(h):
                        continue
                    base.append(next(p for p in range(n) if h[p] != p))
                    S.append([])
                    T.append({})
                for lvl in range(i + 1, j + 1):
                    S[lvl].append(h)
                    T[lvl] = self._transversal(base[lvl], S[lvl], n)
                return j
        return None

    @classmethod
    def known_order(cls, n: int, gens: Sequence[Images], base_prefix: Sequence[int],
                    order: int, seed: int = 0) -> _Chain:
        """Randomized Schreier-Sims for a group of known order.

        Random elements (product replacement, fixed seed) are sifted until
        the orbit lengths multiply to ``order``, which certifies the chain.
        """
        self = cls.__new__(cls)
        self.n = n
        ident = tuple(range(n))
        gens = [g for g in dict.fromkeys(gens) if g != ident]
        base = list(base_prefix)
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(next(i for i in range(n) if g[i] != i))
        S = [[g for g in gens if all(g[base[j]] == base[j] for j in range(i))]
             for i in range(len(base))]
        T = [self._transversal(base[i], S[i], n) for i in range(len(base))]
        self.base, self.strong, self.trans = base, S, T
        if not gens:
            return self
        rng = random.Random(seed)
        pool = [gens[i % len(gens)] for i in range(max(10, len(gens)))]
        acc = ident

        def rand() -> Images:
            nonlocal acc
            i, j = rng.sample(range(len(pool)), 2)
            pool[i] = _mul(pool[i], pool[j]) if rng.random() < 0.5 else _mul(pool[j], pool[i])
            acc = _mul(acc, pool[i])
            return acc

        for _ in range(30):
            rand()
        while self.order() < order:
            h, j = self.sift(rand())
            if _is_id(h):
                continue
            if j == len(base):
                base.append(next(p for p in range(n) if h[p] != p))
                S.append([])
                T.append({})
            for lvl in range(1, j + 1):
                S[lvl].append(h)
                T[lvl] = self._transversal(base[lvl], S[lvl], n)
        if self.order() != order:
            raise RuntimeError("stabilizer chain overshot the group order")
        return self

    def order(self) -> int:
        return prod(len(t) for t in self.trans)

    def sift(self, g: Images) -> tuple[Images, int]:
        for i, b in enumerate(self.base):
            x = g[b]
            if x not in self.trans[i]:
                return g, i
            g = _mul(g, _inv(self.trans[i][x]))
        return g, len(self.base)

    def contains(self, g: Images) -> bool:
        h, _ = self.sift(g)
        return _is_id(h)

    def elements(self) -> Iterator[Images]:
        # g = u_k ... u_1 u_0 with u_i from the level-i transversal
        def rec(level: int, acc: Images):
            if level == len(self.base):
                yield acc
                return
            for u in self.trans[level].values():
                yield from rec(level + 1, _mul(u, acc))
        yield from rec(0, tuple(range(self.n)))


class PermGroup:
    """Group generated by permutations of a common degree.

    The stabilizer chain is built on demand with base order 0, 1, 2, ...
    (after any requested prefix), so generators and keys are reproducible.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators have differing degrees")
        self.degree = degree
        self.generators = tuple(gens)
        self._point_stabs: dict[int, PermGroup] = {}

    @classmethod
    def _from_chain(cls, n: int, chain: _Chain, level: int) -> PermGroup:
        gens = chain.strong[level] if level < len(chain.base) else []
        g = cls([Permutation(x) for x in gens], n)
        sub = _Chain.__new__(_Chain)
        sub.n = n
        sub.base = chain.base[level:]
        sub.strong = chain.strong[level:]
        sub.trans = chain.trans[level:]
        g.__dict__["chain"] = sub
        return g

    @cached_property
    def chain(self) -> _Chain:
        return _Chain(self.degree, [g.images for g in self.generators])

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        return self.chain.contains(g.images)

    def elements(self) -> Iterator[Permutation]:
        for x in self.chain.elements():
            yield Permutation(x)

    def orbit(self, p: int) -> list[int]:
        return next(o for o in orbits(self.generators, self.degree) if p in o)

    def orbits(self) -> list[list[int]]:
        return orbits(self.generators, self.degree)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def _check_point(self, p: int):
        if not 0 <= p < self.degree:
            raise ValueError(f"point {p} out of range for degree {self.degree}")

    def point_stabilizer(self, p: int) -> PermGroup:
        self._check_point(p)
        if p not in self._point_stabs:
            self._point_stabs[p] = PermGroup._from_chain(self.degree, self._rebased_chain([p]), 1)
        return self._point_stabs[p]

    def _rebased_chain(self, prefix: list[int]) -> _Chain:
        return _Chain.known_order(self.degree, [g.images for g in self.generators], prefix, self.order())

    def two_point_stabilizer(self, p: int, q: int) -> PermGroup:
        self._check_point(p)
        self._check_point(q)
        if p == q:
            raise ValueError("two-point stabilizer needs distinct points")
        p, q = min(p, q), max(p, q)
        return PermGroup._from_chain(self.degree, self._rebased_chain([p, q]), 2)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators=[{', '.join(map(str, self.generators))}])"


def group_order(g: PermGroup) -> int:
    return g.order()


# Orders of stabilizer groups that carry a conventional name in this setting.
KNOWN_NAMES = {1: "Z1", 2: "Z2", 12: "A4", 168: "PSL(2,7)", 32: "E32+"}


def subgroup_key(g: PermGroup, bound: int = 10**6) -> tuple:
    """Key equal for two subgroups of a common parent iff they are equal.

    Below ``bound`` the key is the element set; above it only the order and
    the generator cycle types are used, which no longer decides equality.
    """
    order = g.order()
    if order <= bound:
        return ("elements", order, frozenset(x for x in g.chain.elements()))
    return ("coarse", order, tuple(sorted(x.cycle_type() for x in g.generators)))


def class_label(g: PermGroup) -> int:
    """Coarse class of a subgroup: its order."""
    return g.order()


def profile(g: PermGroup) -> dict:
    """Order, element cycle-type histogram (small groups) and a name hint."""
    order = g.order()
    out = {"order": order, "name": KNOWN_NAMES.get(order, f"order {order}")}
    if order <= 5000:
        hist: dict[str, int] = {}
        for x in g.elements():
            key = ".".join(map(str, sorted((len(c) for c in x.cycles(False)), reverse=True))) or "1"
            hist[key] = hist.get(key, 0) + 1
        out["cycle_types"] = dict(sorted(hist.items()))
    return out
