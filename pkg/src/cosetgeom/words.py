"""Words over the alphabet {a, b} and two-generator presentations.

Letters are single characters: ``a``/``b`` are the generators and the
uppercase ``A``/``B`` their inverses.  A :class:`Word` stores the letter
string; the empty string is the identity ``e``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

LETTERS = "aAbB"
INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


class WordParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str = "unexpected token"):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True, order=True)
class Word:
    letters: str = ""

    def __post_init__(self):
        bad = set(self.letters) - set(LETTERS)
        if bad:
            raise ValueError(f"invalid letters {sorted(bad)} in word")

    @classmethod
    def identity(cls) -> Word:
        return cls("")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(_free_reduce(self.letters + other.letters))

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(_free_reduce(base.letters * abs(k)))

    def inverse(self) -> Word:
        return Word("".join(INVERSE[c] for c in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return self.letters or "e"

    def pretty(self) -> str:
        """Render with superscript inverses, e.g. ``a·b⁻¹·a``."""
        if not self.letters:
            return "e"
        return "·".join(c if c.islower() else c.lower() + "⁻¹" for c in self.letters)


def _free_reduce(s: str) -> str:
    out: list[str] = []
    for c in s:
        if out and out[-1] == INVERSE[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def _involution_reduce(s: str) -> str:
    # b = b^-1: rewrite B -> b, then cancel bb along with free cancellation
    out: list[str] = []
    for c in s.replace("B", "b"):
        if out and (out[-1] == INVERSE[c] or (c == "b" and out[-1] == "b")):
            out.pop()
        else:
            out.append(c)
    return "".join(out)


@dataclass(frozen=True)
class Presentation:
    """Two-generator presentation.

    ``mode`` is ``"F"`` (free group), ``"G"`` (b² = e) or ``"custom"``.
    Custom relators are never used to rewrite words; only coset
    enumeration and permutation images see them.
    """

    mode: str = "F"
    relators: tuple[Word, ...] = field(default_factory=tuple)
    name: str = ""

    def __post_init__(self):
        if self.mode not in ("F", "G", "custom"):
            raise ValueError(f"unknown presentation mode {self.mode!r}")
        for r in self.relators:
            if not r or _free_reduce(r.letters) != r.letters:
                raise ValueError(f"relator {r} must be a nonempty freely reduced word")

    @classmethod
    def free(cls) -> Presentation:
        return cls("F", (), "F")

    @classmethod
    def involution(cls) -> Presentation:
        return cls("G", (Word("bb"),), "G")

    @classmethod
    def custom(cls, relators: Iterable[str | Word], name: str = "") -> Presentation:
        rels = tuple(r if isinstance(r, Word) else parse_word(r) for r in relators)
        return cls("custom", rels, name)

    @property
    def b_is_involution(self) -> bool:
        return self.mode == "G" or any(r.letters in ("bb", "BB") for r in self.relators)

    def to_json(self) -> str:
        return json.dumps({"mode": self.mode, "relators": [r.letters for r in self.relators]})

    @classmethod
    def from_json(cls, text: str | dict) -> Presentation:
        data = json.loads(text) if isinstance(text, str) else text
        mode = data.get("mode", "custom")
        rels = tuple(parse_word(r) for r in data.get("relators", []))
        if mode == "F" and rels:
            raise ValueError("free presentation takes no relators")
        if mode == "G":
            return cls.involution()
        return cls(mode, rels, data.get("name", ""))


def reduce(w: Word, p: Presentation | None = None) -> Word:
    if p is not None and p.mode == "G":
        return Word(_involution_reduce(w.letters))
    return Word(_free_reduce(w.letters))


def commutator(ws: Sequence[Word], p: Presentation | None = None) -> Word:
    """Left-normed commutator ((w1, w2), ..., wp) with (x, y) = x⁻¹y⁻¹xy."""
    if len(ws) < 2:
        raise ValueError("commutator needs at least two words")
    c = ws[0]
    for w in ws[1:]:
        c = reduce(Word(c.inverse().letters + w.inverse().letters + c.letters + w.letters), p)
    return reduce(c, p)


_TOKEN = re.compile(r"\s*(?:([aAbB])|(\()|(\))|(\^\s*[-+]?\d+))")


def parse_word(text: str) -> Word:
    """Parse ``aBa``, ``a^-1 b``, ``(bA)^7`` into a freely reduced word."""
    pos = 0
    stack: list[list[str]] = [[]]
    # each stack frame holds a list of chunks; the last chunk may take an exponent
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordParseError(text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
        letter, lpar, rpar, exp = m.groups()
        start = m.start(m.lastindex)
        if letter:
            stack[-1].append(letter)
        elif lpar:
            stack.append([])
        elif rpar:
            if len(stack) == 1:
                raise WordParseError(text, start, "unbalanced ')'")
            chunk = "".join(stack.pop())
            stack[-1].append(chunk)
        else:
            if not stack[-1]:
                raise WordParseError(text, start, "exponent without base")
            k = int(exp[1:].replace(" ", ""))
            base = stack[-1].pop()
            if k < 0:
                base = "".join(INVERSE[c] for c in reversed(base))
            stack[-1].append(base * abs(k))
        pos = m.end()
    if len(stack) != 1:
        raise WordParseError(text, len(text), "unbalanced '('")
    return Word(_free_reduce("".join(stack[0])))


# b² = a⁸ = (ba⁻¹)⁷ = e: its index-15 subgroups carry PG(3,2)
G_PRIME = Presentation.custom(["bb", "a^8", "(bA)^7"], name="G'")
# b² = a⁴ = (ab)⁷ = ((a,b))⁶ = e: its index-63 subgroups carry GH(2,2)
G_DOUBLE_PRIME = Presentation.custom(["bb", "a^4", "(ab)^7", "(ABab)^6"], name="G''")

PRESETS = {
    "F": Presentation.free(),
    "G": Presentation.involution(),
    "G'": G_PRIME,
    "Gp": G_PRIME,
    "G''": G_DOUBLE_PRIME,
    "Gpp": G_DOUBLE_PRIME,
}


def presentation_from_selector(selector: str) -> Presentation:
    """Resolve ``F``, ``G``, ``G'``/``Gp``, ``G''``/``Gpp`` or a comma list of relators."""
    if selector in PRESETS:
        return PRESETS[selector]
    if selector.lstrip().startswith("{"):
        return Presentation.from_json(selector)
    return Presentation.custom([s for s in selector.split(",") if s.strip()])
