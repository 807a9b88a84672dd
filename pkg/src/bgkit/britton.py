"""The Baumslag-Gersten group G = <x, y, t | x^y = x^2, x^t = y>.

G is an HNN extension of H with stable letter t, where ``t^-1 x^k t = y^k``.
Elements are handled as Britton-reduced sequences ``h0 t^e1 h1 ... t^em hm``
with every ``h`` an :class:`~bgkit.h_arith.AffineElem`.

Reduced forms are not unique across t-letters, so equality of elements is
decided by dividing and testing for the identity, never by comparing
``GWord`` objects directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .h_arith import AffineElem, H_ONE, h_mul, h_normal_form, x_power, y_power
from .words import T, Word, X, Y, concat, invert, word_product

DEFAULT_MAX_BITS = 1 << 20


class BudgetExceeded(ArithmeticError):
    """An intermediate number outgrew the bit budget.

    This says nothing about the input being invalid; retry with a larger
    budget or accept that the element is out of reach without compressed
    arithmetic.
    """

    def __init__(self, max_bits: int, bits: int, what: str):
        super().__init__(f"{what} needs {bits} bits, budget is {max_bits}")
        self.max_bits = max_bits
        self.bits = bits
        self.what = what


@dataclass(frozen=True)
class Budget:
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        if self.max_bits < 64:
            raise ValueError("max_bits must be at least 64")

    def check_int(self, k: int, what: str) -> None:
        bits = k.bit_length()
        if bits > self.max_bits:
            raise BudgetExceeded(self.max_bits, bits, what)

    def check_elem(self, a: AffineElem) -> None:
        self.check_int(a.q.num, "numerator")
        if a.q.den_exp > self.max_bits:
            raise BudgetExceeded(self.max_bits, a.q.den_exp, "denominator exponent")
        self.check_int(a.n, "y-exponent")

    def mul(self, a: AffineElem, b: AffineElem) -> AffineElem:
        """``h_mul`` refusing to build numbers beyond the budget."""
        if b.q:
            # b.q gets rescaled by 2^-a.n before the sum is formed
            den = b.q.den_exp + a.n
            if den < 0:
                bits = b.q.num.bit_length() - den
                if bits > self.max_bits:
                    raise BudgetExceeded(self.max_bits, bits, "numerator")
            if a.q and abs(den - a.q.den_exp) > self.max_bits:
                raise BudgetExceeded(self.max_bits, abs(den - a.q.den_exp), "alignment shift")
            if den > self.max_bits:
                raise BudgetExceeded(self.max_bits, den, "denominator exponent")
        out = h_mul(a, b)
        self.check_elem(out)
        return out


DEFAULT_BUDGET = Budget()


def _as_budget(b: Budget | int | None) -> Budget:
    if b is None:
        return DEFAULT_BUDGET
    if isinstance(b, int):
        return Budget(b)
    return b


def is_x_power(h: AffineElem) -> Optional[int]:
    if h.n == 0 and h.q.den_exp == 0:
        return h.q.num
    return None


def is_y_power(h: AffineElem) -> Optional[int]:
    if not h.q:
        return h.n
    return None


@dataclass(frozen=True)
class GWord:
    """``head t^e1 h1 ... t^em hm``; ``tail`` holds the ``(e_i, h_i)`` pairs."""

    head: AffineElem = H_ONE
    tail: tuple[tuple[int, AffineElem], ...] = field(default=())

    def t_length(self) -> int:
        return len(self.tail)

    def is_identity(self) -> bool:
        return not self.tail and self.head.is_identity()

    def letters(self) -> list:
        """The alternating sequence ``[h0, e1, h1, ..., em, hm]``."""
        out: list = [self.head]
        for e, h in self.tail:
            out.extend((e, h))
        return out

    def to_word(self) -> Word:
        parts = [h_normal_form(self.head)]
        for e, h in self.tail:
            parts.append(Word.gen(T, e))
            parts.append(h_normal_form(h))
        return word_product(parts)

    def is_reduced(self) -> bool:
        prev_e = None
        hs = [self.head] + [h for _, h in self.tail]
        for i, (e, _) in enumerate(self.tail):
            if prev_e is not None and _pinches(prev_e, hs[i], e) is not None:
                return False
            prev_e = e
        return True

    def __str__(self) -> str:
        return str(self.to_word())


def _pinches(e_left: int, h: AffineElem, e_right: int) -> Optional[AffineElem]:
    """The H-element ``t^e_left h t^e_right`` collapses to, if it does."""
    if e_left == -1 and e_right == 1:
        k = is_x_power(h)
        if k is not None:
            return y_power(k)
    elif e_left == 1 and e_right == -1:
        k = is_y_power(h)
        if k is not None:
            return x_power(k)
    return None


class _Reducer:
    """Left-to-right stack reduction. ``hs[i]`` follows the i-th t-letter."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.hs: list[AffineElem] = [H_ONE]
        self.es: list[int] = []

    def push_h(self, h: AffineElem) -> None:
        self.hs[-1] = self.budget.mul(self.hs[-1], h)

    def push_t(self, e: int) -> None:
        if self.es:
            collapsed = _pinches(self.es[-1], self.hs[-1], e)
            if collapsed is not None:
                self.es.pop()
                self.hs.pop()
                self.budget.check_int(collapsed.n, "pinched exponent")
                self.push_h(collapsed)
                return
        self.es.append(e)
        self.hs.append(H_ONE)

    def push_syllable(self, gen, exp: int) -> None:
        if gen is X:
            self.budget.check_int(exp, "x-exponent")
            self.push_h(x_power(exp))
        elif gen is Y:
            self.budget.check_int(exp, "y-exponent")
            self.push_h(y_power(exp))
        else:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                self.push_t(step)

    def push_gword(self, g: GWord) -> None:
        self.push_h(g.head)
        for e, h in g.tail:
            self.push_t(e)
            self.push_h(h)

    def result(self) -> GWord:
        return GWord(self.hs[0], tuple(zip(self.es, self.hs[1:])))


def britton_reduce(w: Word, budget: Budget | int | None = None) -> GWord:
    r = _Reducer(_as_budget(budget))
    for s in w:
        r.push_syllable(s.gen, s.exp)
    return r.result()


def reduce_gwords(*parts: GWord, budget: Budget | int | None = None) -> GWord:
    """Britton-reduce the product of already reduced pieces."""
    r = _Reducer(_as_budget(budget))
    for g in parts:
        r.push_gword(g)
    return r.result()


def invert_gword(g: GWord) -> GWord:
    hs = [g.head] + [h for _, h in g.tail]
    es = [e for e, _ in g.tail]
    inv_h = [h.inverse() for h in reversed(hs)]
    inv_e = [-e for e in reversed(es)]
    return GWord(inv_h[0], tuple(zip(inv_e, inv_h[1:])))


def t_length(g: GWord) -> int:
    return g.t_length()


def g_is_identity(w: Word, budget: Budget | int | None = None) -> bool:
    return britton_reduce(w, budget).is_identity()


def g_mul(a: Word, b: Word, budget: Budget | int | None = None) -> GWord:
    return britton_reduce(concat(a, b), budget)


def g_conjugate(w: Word, c: Word, budget: Budget | int | None = None) -> GWord:
    """``w^c = c^-1 w c``, Britton-reduced."""
    return britton_reduce(word_product([invert(c), w, c]), budget)


def g_equal(a: Word, b: Word, budget: Budget | int | None = None) -> bool:
    return g_is_identity(concat(a, invert(b)), budget)


def cyclic_reduce_g(w: Word, budget: Budget | int | None = None) -> tuple[Word, GWord]:
    """Return ``(c, core)`` with ``w == c * core * c^-1`` in G.

    ``core`` is Britton-reduced and no pinch forms across its wraparound seam,
    so every cyclic permutation is reduced as well.
    """
    budget = _as_budget(budget)
    g = britton_reduce(w, budget)
    conj_parts: list[Word] = []
    while len(g.tail) >= 2:
        e_first = g.tail[0][0]
        e_last, h_last = g.tail[-1]
        seam = budget.mul(h_last, g.head)
        collapsed = _pinches(e_last, seam, e_first)
        if collapsed is None:
            break
        # w = h0 u h0^-1 with u = t^e1 ... t^em seam, and
        # t^em seam u seam^-1 t^-em = collapsed * h1 t^e2 ... h_(m-1)
        conj_parts.append(h_normal_form(g.head))
        conj_parts.append(invert(h_normal_form(seam)))
        conj_parts.append(Word.gen(T, -e_last))
        g = GWord(budget.mul(collapsed, g.tail[0][1]), g.tail[1:-1])
    return word_product(conj_parts), g
