"""Parser and serializer for ideal expressions.

Grammar (whitespace-insensitive)::

    document   := [ring ";"] [NAME "="] "(" poly ("," poly)* ")"
    ring       := "ring" (NAME ".." NAME | NAME ("," NAME)*)
    poly       := ["+"|"-"] term (("+"|"-") term)*
    term       := factor (["*"] factor)*
    factor     := INT | NAME ["^" INT]

``ring x1..x4`` declares x1, x2, x3, x4.  Without a ring declaration the
variables are the names that occur, in natural sort order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .monomial_ideals import MonomialIdeal
from .polynomial import GradedIdeal, Polynomial

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<range>\.\.)|(?P<op>[-+*^(),;=]))"
)


class IdealSyntaxError(ValueError):
    """Malformed ideal expression; ``position`` is the offending character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = ""
        if text:
            pointer = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} (at position {position}){pointer}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise IdealSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _natural_key(name: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name)]


def _expand_range(first: str, last: str, pos: int, text: str) -> list[str]:
    a, b = re.fullmatch(r"(\D*)(\d+)", first), re.fullmatch(r"(\D*)(\d+)", last)
    if not a or not b or a.group(1) != b.group(1) or int(a.group(2)) > int(b.group(2)):
        raise IdealSyntaxError(f"bad variable range {first}..{last}", pos, text)
    return [f"{a.group(1)}{k}" for k in range(int(a.group(2)), int(b.group(2)) + 1)]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, value: str | None = None, kind: str | None = None) -> bool:
        k, v, _ = self.tokens[self.i]
        return (value is None or v == value) and (kind is None or k == kind)

    def take(self, value: str | None = None, kind: str | None = None):
        k, v, p = self.tokens[self.i]
        if (value is not None and v != value) or (kind is not None and k != kind):
            want = value or kind
            got = v or "end of input"
            raise IdealSyntaxError(f"expected {want!r}, found {got!r}", p, self.text)
        self.i += 1
        return v, p

    def ring(self) -> list[str] | None:
        if not (self.peek("ring") and self.tokens[self.i + 1][0] == "name"):
            return None
        self.take("ring")
        first, pos = self.take(kind="name")
        if self.peek(kind="range"):
            self.take(kind="range")
            last, _ = self.take(kind="name")
            names = _expand_range(first, last, pos, self.text)
        else:
            names = [first]
            while self.peek(","):
                self.take(",")
                names.append(self.take(kind="name")[0])
        self.take(";")
        if len(set(names)) != len(names):
            raise IdealSyntaxError("repeated variable in ring declaration", pos, self.text)
        return names

    def document(self):
        names = self.ring()
        if self.peek(kind="name") and self.tokens[self.i + 1][1] == "=":
            self.take(kind="name")
            self.take("=")
        _, open_pos = self.take("(")
        if self.peek(")"):
            raise IdealSyntaxError("empty ideal", open_pos, self.text)
        polys = [self.poly()]
        while self.peek(","):
            self.take(",")
            polys.append(self.poly())
        self.take(")")
        if self.peek(";"):
            self.take(";")
        self.take(kind="end")
        return names, polys

    def poly(self):
        start = self.tokens[self.i][2]
        terms = []
        sign = 1
        if self.peek("+") or self.peek("-"):
            sign = -1 if self.take()[0] == "-" else 1
        terms.append((sign, self.term()))
        while self.peek("+") or self.peek("-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append((sign, self.term()))
        return start, terms

    def term(self):
        coeff, powers = self.factor(1, {})
        while True:
            if self.peek("*"):
                self.take("*")
            elif not (self.peek(kind="int") or self.peek(kind="name")):
                break
            coeff, powers = self.factor(coeff, powers)
        return coeff, powers

    def factor(self, coeff, powers):
        if self.peek(kind="int"):
            return coeff * int(self.take(kind="int")[0]), powers
        name, pos = self.take(kind="name")
        exp = 1
        if self.peek("^"):
            self.take("^")
            exp = int(self.take(kind="int")[0])
        powers = dict(powers)
        powers.setdefault(name, [0, pos])
        powers[name][0] += exp
        return coeff, powers


@dataclass(frozen=True)
class IdealExpression:
    """Parsed ideal: the source text, the graded ideal and, when every
    generator is a monomial, its minimal monomial form."""

    source: str
    names: tuple[str, ...]
    ideal: GradedIdeal
    monomial: MonomialIdeal | None

    @property
    def is_monomial(self) -> bool:
        return self.monomial is not None


def parse_ideal(text: str) -> IdealExpression:
    parser = _Parser(text)
    declared, polys = parser.document()
    if declared is None:
        seen = {name for _, terms in polys for _, (_, pw) in terms for name in pw}
        names = sorted(seen, key=_natural_key)
    else:
        names = declared
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    if n == 0:
        raise IdealSyntaxError("no variables", 0, text)
    gens = []
    for start, terms in polys:
        acc: dict[tuple[int, ...], Fraction] = {}
        for sign, (coeff, powers) in terms:
            exps = [0] * n
            for name, (e, pos) in powers.items():
                if name not in index:
                    raise IdealSyntaxError(f"unknown variable {name!r}", pos, text)
                exps[index[name]] += e
            key = tuple(exps)
            acc[key] = acc.get(key, 0) + sign * coeff
        poly = Polynomial(n, acc)
        if not poly:
            raise IdealSyntaxError("generator is zero", start, text)
        if not poly.is_homogeneous():
            raise IdealSyntaxError(
                f"generator {poly.format(names)} is not homogeneous (degrees {sorted(poly.degrees)})",
                start, text,
            )
        gens.append(poly)
    ideal = GradedIdeal(n, tuple(gens), tuple(names))
    mono = None
    if ideal.is_monomial():
        mono = MonomialIdeal(n, tuple(ideal.monomial_generators()))
    return IdealExpression(text, tuple(names), ideal, mono)


def serialize_ideal(I, names=None) -> str:
    """Text form ``ring a,b,...; I = (...)`` that :func:`parse_ideal` reads back."""
    if isinstance(I, IdealExpression):
        I = I.ideal
    if names is None:
        names = getattr(I, "names", None) or tuple(f"x{i + 1}" for i in range(I.n))
    if isinstance(I, MonomialIdeal):
        body = I.format(names)
    else:
        body = "(" + ", ".join(g.format(names) for g in I.generators) + ")"
    return "ring " + ",".join(names) + "; I = " + body
