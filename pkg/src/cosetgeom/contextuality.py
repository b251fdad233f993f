"""Contextuality score of a labelled geometry.

Every point carries a word; a line is *good* when its words commute in
the chosen sense after evaluation in the dessin's permutation group.
With ``u`` good lines out of ``l``, the score is ``c = 1 - u/l``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dessin import Dessin
from .geometry import IncidenceStructure, isomorphism
from .perm import Permutation, _inv, _is_id, _mul, evaluate
from .words import Word

MODES = ("iterated", "pairwise")


@dataclass(frozen=True)
class LineVerdict:
    good: bool
    witness: tuple[int, ...] | None = None  # offending ordering or pair (line positions)


def _commutator(x, y):
    return _mul(_mul(_mul(_inv(x), _inv(y)), x), y)


def perms_commute(perms: Sequence[Permutation], mode: str = "iterated") -> LineVerdict:
    """Commutation test for the permutations on one line.

    ``iterated``: the left-normed commutator [[x1, x2], ..., xk] is trivial
    for every ordering of the line.  ``pairwise``: every two commute.
    """
    ims = [p.images for p in perms]
    if mode == "iterated":
        for order in itertools.permutations(range(len(ims))):
            acc = ims[order[0]]
            for i in order[1:]:
                acc = _commutator(acc, ims[i])
            if not _is_id(acc):
                return LineVerdict(False, order)
        return LineVerdict(True)
    if mode == "pairwise":
        for i, j in itertools.combinations(range(len(ims)), 2):
            if _mul(ims[i], ims[j]) != _mul(ims[j], ims[i]):
                return LineVerdict(False, (i, j))
        return LineVerdict(True)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def line_commuting(words: Sequence[Word], d: Dessin, mode: str = "iterated") -> LineVerdict:
    """Evaluate the words of a line in ``d`` and test them with :func:`perms_commute`."""
    if len(words) < 2:
        raise ValueError(f"a line needs at least 2 points, got {len(words)}")
    return perms_commute([evaluate(w, d.g0, d.g1) for w in words], mode)


@dataclass
class ContextualityReport:
    l: int
    u: int
    mode: str
    defective: list[tuple[int, ...]] = field(default_factory=list)
    labels: list[Word] | None = None
    labeling: str = ""

    @property
    def c(self) -> Fraction:
        return 1 - Fraction(self.u, self.l)

    @property
    def l_over_u(self) -> Fraction | None:
        return Fraction(self.l, self.u) if self.u else None

    def to_json(self) -> dict:
        ratio = self.l_over_u
        return {
            "l": self.l,
            "u": self.u,
            "c": str(self.c),
            "l_over_u": str(ratio) if ratio is not None else None,
            "mode": self.mode,
            "labeling": self.labeling,
            "defective_lines": [[p + 1 for p in line] for line in self.defective],
            "labels": [str(w) for w in self.labels] if self.labels is not None else None,
        }


def score(g: IncidenceStructure, labels: Sequence[Word], d: Dessin, mode: str = "iterated",
          labeling: str = "") -> ContextualityReport:
    """Score ``g`` whose point ``p`` carries ``labels[p]`` evaluated in ``d``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if len(labels) != g.n:
        raise ValueError(f"{len(labels)} labels for {g.n} points")
    if not g.lines:
        raise ValueError("geometry has no lines")
    perms = [evaluate(w, d.g0, d.g1) for w in labels]
    defective = [line for line in g.lines if not perms_commute([perms[p] for p in line], mode).good]
    return ContextualityReport(g.num_lines, g.num_lines - len(defective), mode, defective,
                               list(labels), labeling)


@dataclass(frozen=True)
class Candidate:
    """A dessin with a labelling of its points and the geometry read off it."""

    dessin: Dessin
    labels: tuple[Word, ...]
    geometry: IncidenceStructure
    name: str = ""


def best_labeling(g: IncidenceStructure, candidates: Sequence[Candidate],
                  mode: str = "iterated") -> tuple[Candidate, ContextualityReport]:
    """Highest-``u`` candidate whose geometry is isomorphic to ``g``.

    Ties go to the earliest candidate.  The winning report is expressed on
    the points of ``g``: labels are pulled back along the isomorphism.
    """
    if not candidates:
        raise ValueError("no labelling candidates given")
    best = None
    for cand in candidates:
        sigma = isomorphism(g, cand.geometry)
        if sigma is None:
            continue
        labels = [cand.labels[sigma[p]] for p in range(g.n)]
        rep = score(g, labels, cand.dessin, mode, cand.name)
        if best is None or rep.u > best[1].u:
            best = (cand, rep)
    if best is None:
        raise ValueError("no candidate geometry is isomorphic to the target")
    return best


def labeling_candidates(d: Dessin, geometry: IncidenceStructure, all_bases: bool = False) -> list[Candidate]:
    """Candidates from the BFS labelings of ``d``: every letter priority,
    at base 0 or at every base point."""
    out = []
    for base in (range(d.n) if all_bases else [0]):
        for priority, labels in d.labels_variants(base):
            out.append(Candidate(d, tuple(labels), geometry, f"base {base + 1}, priority {priority}"))
    return out
