"""Words over the generators x, y, t: parsing, printing and free reduction.

Everything here is free-group level. Group relations are handled by
:mod:`bgkit.h_arith` and :mod:`bgkit.britton`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class Generator(enum.Enum):
    X = "x"
    Y = "y"
    T = "t"

    def __repr__(self) -> str:
        return self.name


X, Y, T = Generator.X, Generator.Y, Generator.T


@dataclass(frozen=True)
class Syllable:
    gen: Generator
    exp: int

    def __post_init__(self):
        if self.exp == 0:
            raise ValueError("syllable exponent must be nonzero")

    def __repr__(self) -> str:
        return f"{self.gen.name}^{self.exp}"


class WordSyntaxError(ValueError):
    """Malformed word text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset}: {text!r}")
        self.text = text
        self.offset = offset


class Word:
    """Freely reduced sequence of syllables. The empty word is the identity."""

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables: Iterable[Syllable] = ()):
        syl = tuple(syllables)
        for a, b in zip(syl, syl[1:]):
            if a.gen is b.gen:
                raise ValueError("adjacent syllables share a generator; use free_reduce")
        self.syllables = syl
        self._hash = None

    @classmethod
    def gen(cls, g: Generator, exp: int = 1) -> "Word":
        return cls((Syllable(g, exp),)) if exp else cls()

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __getitem__(self, i):
        return self.syllables[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.syllables == other.syllables

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, e: int) -> "Word":
        return word_power(self, e)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def inverse(self) -> "Word":
        return invert(self)

    def is_identity(self) -> bool:
        return not self.syllables

    def has_stable_letter(self) -> bool:
        return any(s.gen is T for s in self.syllables)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


IDENTITY = Word()


def free_reduce(raw: Iterable[Syllable | tuple]) -> Word:
    """Merge equal neighbours and drop zero exponents.

    Accepts ``Syllable`` objects or plain ``(gen, exp)`` pairs; zero exponents
    are allowed in the input.
    """
    stack: list[list] = []
    for item in raw:
        if isinstance(item, Syllable):
            g, e = item.gen, item.exp
        else:
            g, e = item
        if e == 0:
            continue
        if stack and stack[-1][0] is g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return Word(Syllable(g, e) for g, e in stack)


def concat(a: Word, b: Word) -> Word:
    if not a:
        return b
    if not b:
        return a
    return free_reduce(a.syllables + b.syllables)


def invert(w: Word) -> Word:
    return Word(Syllable(s.gen, -s.exp) for s in reversed(w.syllables))


def word_product(words: Iterable[Word]) -> Word:
    raw: list[Syllable] = []
    for w in words:
        raw.extend(w.syllables)
    return free_reduce(raw)


def word_power(w: Word, e: int) -> Word:
    """``w**e`` by repeated squaring; free reduction happens at every seam."""
    if e < 0:
        w, e = invert(w), -e
    if len(w) == 1:
        s = w.syllables[0]
        return Word.gen(s.gen, s.exp * e)
    result = IDENTITY
    base = w
    while e:
        if e & 1:
            result = concat(result, base)
        e >>= 1
        if e:
            base = concat(base, base)
    return result


def cyclic_reduce_free(w: Word) -> tuple[Word, Word]:
    """Return ``(c, core)`` with ``w == c * core * c**-1`` in the free group.

    The first and last syllables of ``core`` use different generators.
    """
    conj: list[Syllable] = []
    core = list(w.syllables)
    while len(core) >= 2 and core[0].gen is core[-1].gen:
        first, last = core[0], core[-1]
        conj.append(first)
        merged = last.exp + first.exp
        core = core[1:-1]
        if merged:
            core.append(Syllable(first.gen, merged))
    return free_reduce(conj), free_reduce(core)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"([xytXYT])(?:\^(-?[0-9]+))?")
_WS = re.compile(r"\s+")


def parse_word(text: str) -> Word:
    """Parse ``"x^2 y^-1 T"`` style text into a freely reduced Word.

    Uppercase letters are inverses: ``X`` is ``x^-1`` and ``X^k`` is ``x^-k``.
    The identity is written ``1``.
    """
    pos = 0
    n = len(text)
    m = _WS.match(text, pos)
    if m:
        pos = m.end()
    if pos == n:
        raise WordSyntaxError("empty word", text, pos)
    if text[pos] == "1":
        end = pos + 1
        m = _WS.match(text, end)
        if m:
            end = m.end()
        if end != n:
            raise WordSyntaxError("'1' must stand alone", text, end)
        return IDENTITY

    raw: list[tuple[Generator, int]] = []
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError("expected one of x y t X Y T", text, pos)
        letter, exp = m.group(1), m.group(2)
        if m.end() < n and text[m.end()] == "^":
            raise WordSyntaxError("malformed exponent", text, m.end() + 1)
        e = int(exp) if exp is not None else 1
        if letter.isupper():
            e = -e
        raw.append((Generator(letter.lower()), e))
        pos = m.end()
        if pos == n:
            break
        ws = _WS.match(text, pos)
        if not ws:
            raise WordSyntaxError("tokens must be separated by whitespace", text, pos)
        pos = ws.end()
    return free_reduce(raw)


def format_word(w: Word | Sequence[Syllable]) -> str:
    syl = w.syllables if isinstance(w, Word) else w
    if not syl:
        return "1"
    parts = []
    for s in syl:
        parts.append(s.gen.value if s.exp == 1 else f"{s.gen.value}^{s.exp}")
    return " ".join(parts)
