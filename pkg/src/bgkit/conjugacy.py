"""Conjugacy in G for elements of t-length zero, with checkable certificates.

Two elements of H that are conjugate in G are joined by a chain that
alternates conjugation inside H with a pinch ``t^-1 x^k t = y^k`` (or its
reverse). A :class:`ChainCertificate` records such a chain; it can be
checked link by link and assembled into a conjugating word.

Conjugacy of elements of t-length one or more is not decided here; only the
t-length obstruction is available for them.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .britton import Budget, britton_reduce, cyclic_reduce_g, g_is_identity
from .h_arith import (
    AffineElem,
    Dyadic,
    H_ONE,
    _odd_split,
    h_conjugate,
    h_conjugator,
    h_normal_form,
    x_power,
    y_power,
)
from .words import T, Generator, Word, X, Y, invert, word_product

DEFAULT_MAX_DEPTH = 64

DOWN = "down"  # u = t^-1 v t, i.e. x^k -> y^k
UP = "up"  # v = t^-1 u t, i.e. y^k -> x^k


class WrongTLength(ValueError):
    pass


@dataclass(frozen=True)
class ChainLink:
    v: tuple[Generator, int]
    u: tuple[Generator, int]
    direction: str
    h_conjugator: AffineElem = H_ONE

    def is_pinch(self) -> bool:
        (vg, vk), (ug, uk) = self.v, self.u
        if vk != uk or vk == 0:
            return False
        if self.direction == DOWN:
            return vg is X and ug is Y
        if self.direction == UP:
            return vg is Y and ug is X
        return False

    def t_conjugator(self) -> Word:
        # c with c^-1 v c == u
        return Word.gen(T, 1 if self.direction == DOWN else -1)


@dataclass(frozen=True)
class ChainCertificate:
    start_conjugator: AffineElem
    links: tuple[ChainLink, ...] = ()
    end_conjugator: AffineElem = H_ONE

    def conjugator(self) -> Word:
        """The word ``c`` with ``c^-1 u c == v`` assembled from the chain."""
        parts = [h_normal_form(self.start_conjugator)]
        for link in self.links:
            parts.append(link.t_conjugator())
            parts.append(h_normal_form(link.h_conjugator))
        parts.append(h_normal_form(self.end_conjugator))
        return word_product(parts)

    def __str__(self) -> str:
        return format_certificate(self)


@dataclass(frozen=True)
class NoChain:
    """No certificate was found.

    ``exhausted`` means the whole relevant state space was searched, which
    proves non-conjugacy; otherwise the depth cap stopped the search.
    """

    exhausted: bool
    depth: int

    def __str__(self) -> str:
        why = "search exhausted" if self.exhausted else f"depth limit {self.depth} reached"
        return f"NoChain ({why})"


def _power(power: tuple[Generator, int]) -> AffineElem:
    g, k = power
    return x_power(k) if g is X else y_power(k)


def _head(w: Word, budget) -> AffineElem:
    g = britton_reduce(w, budget)
    if g.t_length():
        raise WrongTLength(f"{w} has t-length {g.t_length()}")
    return g.head


def t_length_obstruction(u: Word, v: Word, budget: Budget | int | None = None) -> bool:
    """False proves u and v are not conjugate: their cyclic cores differ in t-length."""
    _, cu = cyclic_reduce_g(u, budget)
    _, cv = cyclic_reduce_g(v, budget)
    return cu.t_length() == cv.t_length()


# states of the search: ("x", odd) is the H-class of x^odd, ("y", k) is y^k

def _entry(a: AffineElem) -> Optional[tuple[str, int]]:
    """The pinchable power class ``a`` is H-conjugate to, if any."""
    if a.n == 0:
        if not a.q:
            return None
        return ("x", _odd_split(a.q.num)[0])
    if h_conjugator(a, y_power(a.n)) is not None:
        return ("y", a.n)
    return None


def conjugacy_key(a: AffineElem) -> Optional[int]:
    """Signed odd part shared by every power of x or y that ``a`` is G-conjugate to."""
    state = _entry(a)
    if state is None:
        return None
    return _odd_split(state[1])[0]


def _neighbours(state: tuple[str, int], width: int):
    kind, k = state
    if kind == "y":
        yield ("x", _odd_split(k)[0]), ChainLink((Y, k), (X, k), UP)
    else:
        for j in range(width + 1):
            e = k << j
            yield ("y", e), ChainLink((X, e), (Y, e), DOWN)


def _assemble(a: AffineElem, b: AffineElem, links: list[ChainLink]) -> ChainCertificate:
    if not links:
        return ChainCertificate(h_conjugator(a, b), (), H_ONE)
    start = h_conjugator(a, _power(links[0].v))
    out = []
    for here, nxt in zip(links, links[1:]):
        c = h_conjugator(_power(here.u), _power(nxt.v))
        out.append(ChainLink(here.v, here.u, here.direction, c))
    out.append(links[-1])
    end = h_conjugator(_power(links[-1].u), b)
    if start is None or end is None or any(l.h_conjugator is None for l in out):
        raise AssertionError("search produced a chain with a broken H-conjugacy")
    return ChainCertificate(start, tuple(out), end)


def conj_zero_g(
    u: Word,
    v: Word,
    budget: Budget | int | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Union[ChainCertificate, NoChain]:
    """Breadth-first search for a chain certificate that u and v are conjugate in G.

    Both words must Britton-reduce to t-length 0.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be positive")
    a, b = _head(u, budget), _head(v, budget)
    if h_conjugator(a, b) is not None:
        return _assemble(a, b, [])
    start, goal = _entry(a), _entry(b)
    if start is None or goal is None:
        return NoChain(exhausted=True, depth=0)
    # a y-node only links back to its own x-class, so longer multiples than
    # the endpoints' exponents can never lie on a shortest path
    width = max(abs(start[1]).bit_length(), abs(goal[1]).bit_length())
    parent: dict = {start: None}
    frontier = deque([(start, 0)])
    truncated = False
    while frontier:
        state, depth = frontier.popleft()
        if state == goal:
            links = []
            while parent[state] is not None:
                state, link = parent[state]
                links.append(link)
            return _assemble(a, b, links[::-1])
        for nxt, link in _neighbours(state, width):
            if nxt in parent:
                continue
            if depth == max_depth:
                truncated = True
                break
            parent[nxt] = (state, link)
            frontier.append((nxt, depth + 1))
    return NoChain(exhausted=not truncated, depth=max_depth)


def verify_chain(u: Word, v: Word, cert: ChainCertificate, budget: Budget | int | None = None) -> bool:
    """Check every H-conjugacy and pinch of ``cert``, then the assembled conjugator."""
    try:
        a, b = _head(u, budget), _head(v, budget)
    except WrongTLength:
        return False
    links = cert.links
    if not links:
        if h_conjugate(a, cert.start_conjugator) != b or not cert.end_conjugator.is_identity():
            return False
    else:
        if h_conjugate(a, cert.start_conjugator) != _power(links[0].v):
            return False
        for here, nxt in zip(links, links[1:]):
            if not here.is_pinch():
                return False
            if h_conjugate(_power(here.u), here.h_conjugator) != _power(nxt.v):
                return False
        last = links[-1]
        if not last.is_pinch() or not last.h_conjugator.is_identity():
            return False
        if h_conjugate(_power(last.u), cert.end_conjugator) != b:
            return False
    c = cert.conjugator()
    return g_is_identity(word_product([invert(c), u, c, invert(v)]), budget)


def conj_zero_closed_form(u: Word, v: Word, budget: Budget | int | None = None) -> bool:
    """Decide G-conjugacy of t-length-0 elements without searching.

    Either they are already conjugate in H, or both are H-conjugate to
    powers of x or y and those powers share a signed odd part.
    """
    a, b = _head(u, budget), _head(v, budget)
    if h_conjugator(a, b) is not None:
        return True
    ka = conjugacy_key(a)
    return ka is not None and ka == conjugacy_key(b)


# ---------------------------------------------------------------- text form

def _fmt_power(p: tuple[Generator, int]) -> str:
    g, k = p
    return g.value if k == 1 else f"{g.value}^{k}"


def _fmt_elem(a: AffineElem) -> str:
    return f"({a.q},{a.n})"


def format_certificate(cert: ChainCertificate) -> str:
    """One link per line, framed by the start and end H-conjugators."""
    lines = [f"start conj={_fmt_elem(cert.start_conjugator)}"]
    for link in cert.links:
        arrow = "--t-->" if link.direction == DOWN else "<--t--"
        lines.append(
            f"v={_fmt_power(link.v)} {arrow} u={_fmt_power(link.u)} ; conj={_fmt_elem(link.h_conjugator)}"
        )
    lines.append(f"end conj={_fmt_elem(cert.end_conjugator)}")
    return "\n".join(lines)


_ELEM = r"\(([^,()]+),(-?\d+)\)"
_LINK = re.compile(
    r"v=([xy])(?:\^(-?\d+))? (--t-->|<--t--) u=([xy])(?:\^(-?\d+))? ; conj=" + _ELEM
)


def _parse_elem(q: str, n: str) -> AffineElem:
    return AffineElem(Dyadic.parse(q), int(n))


def parse_certificate(text: str) -> ChainCertificate:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    m0 = re.fullmatch(r"start conj=" + _ELEM, lines[0]) if lines else None
    m1 = re.fullmatch(r"end conj=" + _ELEM, lines[-1]) if len(lines) >= 2 else None
    if not m0 or not m1:
        raise ValueError("certificate must start with 'start conj=' and end with 'end conj='")
    links = []
    for ln in lines[1:-1]:
        m = _LINK.fullmatch(ln)
        if not m:
            raise ValueError(f"bad certificate line: {ln!r}")
        vg, vk, arrow, ug, uk, q, n = m.groups()
        links.append(
            ChainLink(
                (Generator(vg), int(vk or 1)),
                (Generator(ug), int(uk or 1)),
                DOWN if arrow == "--t-->" else UP,
                _parse_elem(q, n),
            )
        )
    return ChainCertificate(_parse_elem(*m0.groups()), tuple(links), _parse_elem(*m1.groups()))
