"""Exact checks of rational maps against dessin passports.

Polynomials have Fraction coefficients, lowest degree first.  Root
multiplicities come from square-free decomposition, never from roots.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Coeffs = tuple[Fraction, ...]


class BelyiError(ValueError):
    pass


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c: Coeffs = tuple(c)

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def const(cls, v) -> Poly:
        return cls((v,))

    @property
    def deg(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lead(self) -> Fraction:
        return self.c[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, o: Poly) -> Poly:
        m = max(len(self.c), len(o.c))
        a = self.c + (Fraction(0),) * (m - len(self.c))
        b = o.c + (Fraction(0),) * (m - len(o.c))
        return Poly(x + y for x, y in zip(a, b))

    def __neg__(self) -> Poly:
        return Poly(-x for x in self.c)

    def __sub__(self, o: Poly) -> Poly:
        return self + (-o)

    def __mul__(self, o: Poly) -> Poly:
        if self.is_zero() or o.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    out[i + j] += x * y
        return Poly(out)

    def __pow__(self, k: int) -> Poly:
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, f) -> Poly:
        return Poly(x * f for x in self.c)

    def divmod(self, o: Poly) -> tuple[Poly, Poly]:
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(0, len(r) - len(o.c) + 1)
        while len(r) >= len(o.c) and any(r):
            shift = len(r) - len(o.c)
            f = r[-1] / o.lead
            q[shift] = f
            for i, y in enumerate(o.c):
                r[shift + i] -= f * y
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def monic(self) -> Poly:
        return self.scale(1 / self.lead) if self.c else self

    def derivative(self) -> Poly:
        return Poly(i * x for i, x in enumerate(self.c) if i)

    def substitute_shift(self, shift) -> Poly:
        """p(x + shift)."""
        out = Poly()
        xs = Poly((shift, 1))
        for x in reversed(self.c):
            out = out * xs + Poly.const(x)
        return out

    def __repr__(self) -> str:
        return f"Poly({[str(x) for x in self.c]})"


def gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def squarefree(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lead · ∏ f_i^i with square-free coprime f_i."""
    if p.deg < 1:
        return []
    out = []
    g = gcd(p, p.derivative())
    w = p.divmod(g)[0]
    y = p.derivative().divmod(g)[0]
    z = y - w.derivative()
    i = 1
    while w.deg > 0:
        h = gcd(w, z)
        w = w.divmod(h)[0]
        y = z.divmod(h)[0]
        z = y - w.derivative()
        if h.deg > 0:
            out.append((h, i))
        i += 1
    return out


def multiplicities(p: Poly) -> list[int]:
    """Root multiplicities (over the algebraic closure) as a sorted multiset."""
    out = []
    for f, i in squarefree(p):
        out += [i] * f.deg
    return sorted(out, reverse=True)


# --- rational maps ----------------------------------------------------------

@dataclass(frozen=True)
class RationalMap:
    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise BelyiError("zero denominator")
        g = gcd(self.num, self.den) if not self.num.is_zero() else Poly.const(1)
        num, den = self.num.divmod(g)[0], self.den.divmod(g)[0]
        lead = den.lead
        object.__setattr__(self, "num", num.scale(1 / lead))
        object.__setattr__(self, "den", den.scale(1 / lead))

    @property
    def degree(self) -> int:
        return max(self.num.deg, self.den.deg)

    def __add__(self, o: RationalMap) -> RationalMap:
        return RationalMap(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o: RationalMap) -> RationalMap:
        return RationalMap(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o: RationalMap) -> RationalMap:
        return RationalMap(self.num * o.num, self.den * o.den)

    def __truediv__(self, o: RationalMap) -> RationalMap:
        if o.num.is_zero():
            raise BelyiError("division by zero")
        return RationalMap(self.num * o.den, self.den * o.num)

    def __neg__(self) -> RationalMap:
        return RationalMap(-self.num, self.den)

    def __pow__(self, k: int) -> RationalMap:
        if k < 0:
            return RationalMap(Poly.const(1), Poly.const(1)) / (self ** -k)
        return RationalMap(self.num ** k, self.den ** k)

    def shifted(self, c) -> RationalMap:
        """f(x + c)."""
        return RationalMap(self.num.substitute_shift(c), self.den.substitute_shift(c))

    def __str__(self) -> str:
        return f"({_fmt(self.num)}) / ({_fmt(self.den)})"


def _fmt(p: Poly) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.deg, -1, -1):
        a = p.c[i]
        if a:
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(a) if (a != 1 or not mon) else ""
            if a == -1 and mon:
                coef = "-"
            terms.append(f"{coef}*{mon}" if coef not in ("", "-") and mon else coef + mon)
    return " + ".join(terms).replace("+ -", "- ")


_TOK = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(x)|(\*\*|[-+*/^()]))")


def parse_rational_map(text: str) -> RationalMap:
    """Parse e.g. ``"-(1/64)*(x-1)^3*(x+3)^2 / x^3"`` exactly."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise BelyiError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        toks.append(m.group(1) or m.group(2) or ("^" if m.group(3) == "**" else m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    toks.append("$")
    i = 0

    def peek():
        return toks[i]

    def take(expected=None):
        nonlocal i
        t = toks[i]
        if expected is not None and t != expected:
            raise BelyiError(f"expected {expected!r}, got {t!r}")
        i += 1
        return t

    one = Poly.const(1)

    def expr():
        sign = 1
        if peek() in "+-":
            sign = -1 if take() == "-" else 1
        v = term()
        if sign < 0:
            v = -v
        while peek() in ("+", "-"):
            op = take()
            v = v + term() if op == "+" else v - term()
        return v

    def term():
        v = power()
        while peek() in ("*", "/") or peek() in ("(", "x") or _is_num(peek()):
            if peek() == "*":
                take()
                v = v * power()
            elif peek() == "/":
                take()
                v = v / power()
            else:  # implicit multiplication, e.g. 3x or 2(x-1)
                v = v * power()
        return v

    def power():
        base = atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            e = take()
            if not e.isdigit():
                raise BelyiError(f"exponent must be an integer, got {e!r}")
            return base ** (-int(e) if neg else int(e))
        return base

    def atom():
        t = take()
        if t == "(":
            v = expr()
            take(")")
            return v
        if t == "x":
            return RationalMap(Poly.x(), one)
        if t == "-":
            return -atom()
        if _is_num(t):
            return RationalMap(Poly.const(Fraction(t)), one)
        raise BelyiError(f"unexpected token {t!r}")

    v = expr()
    if peek() != "$":
        raise BelyiError(f"trailing input at token {peek()!r}")
    return v


def _is_num(t: str) -> bool:
    return bool(t) and t[0].isdigit()


# --- passports ----------------------------------------------------------------

@dataclass
class PassportReport:
    degree: int
    zeros: list[int]
    ones: list[int]
    poles: list[int]
    sums_ok: bool
    critical_values_ok: bool
    residual_degree: int
    ramification: int

    @property
    def passport(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return tuple(self.zeros), tuple(self.ones), tuple(self.poles)

    @property
    def ok(self) -> bool:
        return self.sums_ok and self.critical_values_ok

    def to_json(self) -> dict:
        return {"degree": self.degree, "zeros": self.zeros, "ones": self.ones, "poles": self.poles,
                "sums_ok": self.sums_ok, "critical_values_ok": self.critical_values_ok,
                "residual_critical_degree": self.residual_degree,
                "ramification_over_0_1_inf": self.ramification, "expected_ramification": 2 * self.degree - 2}


def _fiber(p: Poly, d: int) -> list[int]:
    m = multiplicities(p)
    if p.deg < d:
        m.append(d - p.deg)
    return sorted(m, reverse=True)


def passport_of(f: RationalMap) -> PassportReport:
    """Multiplicities over 0, 1 and ∞, with consistency flags.

    ``critical_values_ok`` requires two things: the numerator of f′,
    divided by ∏ P^(m-1) over the three square-free decompositions, leaves
    a constant; and the ramification over {0, 1, ∞} totals 2d - 2, which
    also covers a critical point at ∞ with another value.
    """
    d = f.degree
    if d < 1:
        raise BelyiError("constant map")
    n, m = f.num, f.den
    n1 = n - m
    zeros, ones, poles = _fiber(n, d), _fiber(n1, d), _fiber(m, d)
    sums_ok = sum(zeros) == d and sum(ones) == d and sum(poles) == d
    wr = n.derivative() * m - n * m.derivative()
    expected = Poly.const(1)
    for p in (n, n1, m):
        for fac, i in squarefree(p):
            expected = expected * fac ** (i - 1)
    q, r = wr.divmod(expected)
    residual = q.deg if r.is_zero() else -2
    ram = sum(d - len(x) for x in (zeros, ones, poles))
    crit_ok = r.is_zero() and q.deg == 0 and ram == 2 * d - 2
    return PassportReport(d, zeros, ones, poles, sums_ok, crit_ok, residual, ram)


def matches_dessin(f: RationalMap, d) -> bool:
    """Passport of ``f`` equals (black, white, face) cycle types of ``d``."""
    rep = passport_of(f)
    return rep.passport == d.passport()
