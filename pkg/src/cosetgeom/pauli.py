"""n-qubit Pauli operators with exact phases.

An operator is i^k · X^x Z^z with bit vectors x, z stored as integers
(bit j for qubit j, leftmost letter is qubit 0).  Y = iXZ, so the text
"Y" has x = z = 1 and k = 1.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

from .geometry import IncidenceStructure

_PREFIX = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PREFIX_OUT = {0: "", 1: "i", 2: "-", 3: "-i"}


class PauliError(ValueError):
    pass


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True, order=True)
class PauliOp:
    n: int
    x: int
    z: int
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)
        if self.x >> self.n or self.z >> self.n:
            raise PauliError("bit vectors exceed qubit count")

    @classmethod
    def parse(cls, text: str) -> PauliOp:
        m = re.fullmatch(r"\s*([+-]?i?)([IXYZ]+)\s*", text)
        if not m:
            raise PauliError(f"cannot parse Pauli operator {text!r}")
        letters = m.group(2)
        x = z = 0
        for j, c in enumerate(letters):
            if c in "XY":
                x |= 1 << j
            if c in "ZY":
                z |= 1 << j
        return cls(len(letters), x, z, _PREFIX[m.group(1)] + letters.count("Y"))

    @classmethod
    def identity(cls, n: int) -> PauliOp:
        return cls(n, 0, 0, 0)

    def letters(self) -> str:
        return "".join("IXZY"[(self.x >> j & 1) | (self.z >> j & 1) << 1] for j in range(self.n))

    def __str__(self) -> str:
        ny = _popcount(self.x & self.z)
        return _PREFIX_OUT[(self.k - ny) % 4] + self.letters()

    def __repr__(self) -> str:
        return f"PauliOp({str(self)!r})"

    def __mul__(self, other: PauliOp) -> PauliOp:
        return multiply(self, other)

    def is_identity_up_to_sign(self) -> bool:
        return self.x == 0 and self.z == 0 and self.k % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for ±identity; raises otherwise."""
        if not self.is_identity_up_to_sign():
            raise PauliError(f"{self} is not ±identity")
        return 1 if self.k == 0 else -1

    def hermitian(self) -> PauliOp:
        """Same operator with the phase making it Hermitian and sign +."""
        return PauliOp(self.n, self.x, self.z, _popcount(self.x & self.z))


def _check(a: PauliOp, b: PauliOp):
    if a.n != b.n:
        raise PauliError(f"size mismatch: {a.n} vs {b.n} qubits")


def multiply(a: PauliOp, b: PauliOp) -> PauliOp:
    _check(a, b)
    # Z^z1 X^x2 = (-1)^(z1.x2) X^x2 Z^z1
    return PauliOp(a.n, a.x ^ b.x, a.z ^ b.z, a.k + b.k + 2 * _popcount(a.z & b.x))


def product(ops: Sequence[PauliOp]) -> PauliOp:
    acc = PauliOp.identity(ops[0].n)
    for op in ops:
        acc = multiply(acc, op)
    return acc


def commutes(a: PauliOp, b: PauliOp) -> bool:
    _check(a, b)
    return (_popcount(a.x & b.z) + _popcount(a.z & b.x)) % 2 == 0


@dataclass
class ParityVerdict:
    ok: bool
    signs: list[int]
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @property
    def negative_lines(self) -> int:
        return sum(1 for s in self.signs if s < 0)


def _verify_lines(ops: Sequence[PauliOp], lines: Sequence[Sequence[int]]) -> ParityVerdict:
    signs = []
    for li, line in enumerate(lines):
        for i, j in itertools.combinations(line, 2):
            if not commutes(ops[i], ops[j]):
                return ParityVerdict(False, signs, f"line {li + 1}: {ops[i]} and {ops[j]} anticommute")
        p = product([ops[i] for i in line])
        if not p.is_identity_up_to_sign():
            return ParityVerdict(False, signs, f"line {li + 1}: product {p} is not ±identity")
        signs.append(p.sign)
    neg = sum(1 for s in signs if s < 0)
    if neg % 2 == 0:
        return ParityVerdict(False, signs, f"{neg} lines with product -I (even)")
    return ParityVerdict(True, signs)


SQUARE_LINES = [[0, 1, 2], [3, 4, 5], [6, 7, 8], [0, 3, 6], [1, 4, 7], [2, 5, 8]]


def verify_mermin_square(grid: Sequence[Sequence[PauliOp]]) -> ParityVerdict:
    """Rows then columns: mutually commuting, product ±I, odd number of -I."""
    ops = [op for row in grid for op in row]
    if len(grid) != 3 or any(len(r) != 3 for r in grid) or any(op.n != 2 for op in ops):
        raise PauliError("a Mermin square is a 3x3 grid of two-qubit operators")
    return _verify_lines(ops, SQUARE_LINES)


def verify_pentagram(ops: Sequence[PauliOp], lines: Sequence[Sequence[int]]) -> ParityVerdict:
    if len(ops) != 10 or len(lines) != 5 or any(len(line) != 4 for line in lines):
        raise PauliError("a pentagram has 10 operators on 5 lines of 4")
    if any(op.n != 3 for op in ops):
        raise PauliError("pentagram operators act on three qubits")
    counts = [sum(p in line for line in lines) for p in range(10)]
    if any(c != 2 for c in counts):
        raise PauliError("every pentagram point must lie on exactly 2 lines")
    return _verify_lines(ops, lines)


def hermitian_paulis(n: int) -> list[PauliOp]:
    """The 4^n - 1 non-identity Hermitian Paulis with sign +, in text order."""
    out = [PauliOp(n, x, z).hermitian() for x in range(1 << n) for z in range(1 << n) if x or z]
    return sorted(out, key=lambda op: op.letters().translate(str.maketrans("IXYZ", "0123")))


def find_mermin_square() -> list[list[PauliOp]]:
    """First grid (in a fixed search order) passing ``verify_mermin_square``.

    Rows and columns are triads {A, B, ±AB} of mutually commuting operators.
    """
    ops = hermitian_paulis(2)
    cells: list[PauliOp | None] = [None] * 9

    def fits(pos: int, op: PauliOp) -> bool:
        if op in cells:
            return False
        r, c = divmod(pos, 3)
        peers = [cells[3 * r + j] for j in range(c)] + [cells[3 * i + c] for i in range(r)]
        return all(commutes(op, q) for q in peers)

    def rec(pos: int):
        if pos == 9:
            grid = [cells[0:3], cells[3:6], cells[6:9]]
            return grid if verify_mermin_square(grid) else None
        r, c = divmod(pos, 3)
        if c == 2:
            third = product([cells[3 * r], cells[3 * r + 1]]).hermitian()
            choices = [third]
        elif r == 2:
            choices = [product([cells[c], cells[3 + c]]).hermitian()]
        else:
            choices = ops
        for op in choices:
            if fits(pos, op):
                cells[pos] = op
                res = rec(pos + 1)
                if res:
                    return res
                cells[pos] = None
        return None

    grid = rec(0)
    if grid is None:
        raise PauliError("no Mermin square found")
    return [list(row) for row in grid]


def find_pentagram(template: IncidenceStructure | None = None) -> tuple[list[PauliOp], list[list[int]]]:
    """Three-qubit labels on the pentagram template passing ``verify_pentagram``.

    Each line's fourth operator is fixed (up to sign) by the other three.
    """
    if template is None:
        from .catalog import pentagram
        template = pentagram()
    lines = [list(line) for line in template.lines]
    ops = hermitian_paulis(3)
    label: list[PauliOp | None] = [None] * 10
    order = sorted(range(10), key=lambda p: min(i for i, line in enumerate(lines) if p in line))

    def consistent(p: int) -> bool:
        for line in lines:
            if p not in line:
                continue
            known = [label[q] for q in line if label[q] is not None]
            if any(not commutes(a, b) for a, b in itertools.combinations(known, 2)):
                return False
            if len(known) == 4:
                prod = product(known)
                if not prod.is_identity_up_to_sign():
                    return False
        return True

    def rec(i: int):
        if i == 10:
            res = verify_pentagram(label, lines)
            return list(label) if res else None
        p = order[i]
        for op in ops:
            if op in label:
                continue
            label[p] = op
            if consistent(p):
                out = rec(i + 1)
                if out:
                    return out
            label[p] = None
        return None

    found = rec(0)
    if found is None:
        raise PauliError("no pentagram labelling found")
    return found, lines


def _rank(vectors: Sequence[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def max_commuting_geometry(n: int, generators: Sequence[PauliOp] | None = None
                           ) -> tuple[IncidenceStructure, list[PauliOp]]:
    """The 2^n - 1 nontrivial products of ``n`` commuting independent
    generators, with lines the triads {A, B, AB}.  Default generators are
    Z on each qubit."""
    if generators is None:
        generators = [PauliOp(n, 0, 1 << j) for j in range(n)]
    gens = list(generators)
    if len(gens) != n or any(g.n != gens[0].n for g in gens):
        raise PauliError(f"need {n} generators on a common qubit count")
    if any(not commutes(a, b) for a, b in itertools.combinations(gens, 2)):
        raise PauliError("generators do not commute")
    if _rank([g.x | g.z << g.n for g in gens]) != n:
        raise PauliError("generators are dependent")
    labels = []
    for mask in range(1, 1 << n):
        labels.append(product([gens[j] for j in range(n) if mask >> j & 1]).hermitian())
    index = {(op.x, op.z): i for i, op in enumerate(labels)}
    lines = set()
    for i, j in itertools.combinations(range(len(labels)), 2):
        ab = multiply(labels[i], labels[j])
        lines.add(tuple(sorted((i, j, index[(ab.x, ab.z)]))))
    s = IncidenceStructure.from_lines(len(labels), sorted(lines), f"maximal commuting set, {n} generators")
    return s, labels
