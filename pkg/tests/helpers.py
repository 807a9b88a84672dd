"""Random generators shared by the test modules."""

from __future__ import annotations

import random

from bgkit.britton import GWord, _pinches
from bgkit.h_arith import AffineElem, Dyadic
from bgkit.words import T, Word, X, Y, free_reduce, invert, word_power, word_product

RELATORS = (
    free_reduce([(Y, -1), (X, 1), (Y, 1), (X, -2)]),
    free_reduce([(T, -1), (X, 1), (T, 1), (Y, -1)]),
)


def random_word(rng: random.Random, max_syllables: int, max_exp: int, gens=(X, Y, T)) -> Word:
    raw = []
    for _ in range(rng.randint(0, max_syllables)):
        e = 0
        while e == 0:
            e = rng.randint(-max_exp, max_exp)
        raw.append((rng.choice(gens), e))
    return free_reduce(raw)


def relator_product(rng: random.Random, count: int = 8, conj_syllables: int = 4) -> Word:
    parts = []
    for _ in range(rng.randint(1, count)):
        r = rng.choice(RELATORS)
        if rng.random() < 0.5:
            r = invert(r)
        c = random_word(rng, conj_syllables, 3)
        parts.append(word_product([invert(c), r, c]))
    return word_product(parts)


def random_elem(rng: random.Random, num_bits: int = 8, max_den: int = 6, max_n: int = 6) -> AffineElem:
    num = rng.randint(-(1 << num_bits), 1 << num_bits)
    return AffineElem(Dyadic.make(num, rng.randint(0, max_den)), rng.randint(-max_n, max_n))


def random_reduced_gword(rng: random.Random, max_t: int = 6) -> GWord:
    """A Britton-reduced GWord with at least one t-letter."""
    m = rng.randint(1, max_t)
    head = random_elem(rng)
    tail = []
    prev_e = None
    for _ in range(m):
        e = rng.choice((1, -1))
        if prev_e is not None:
            # the element between the last t and this one must not pinch
            while _pinches(prev_e, tail[-1][1] if tail else head, e) is not None:
                h = random_elem(rng)
                if tail:
                    tail[-1] = (tail[-1][0], h)
                else:
                    head = h
        h = random_elem(rng) if rng.random() < 0.7 else random_power(rng)
        tail.append((e, h))
        prev_e = e
    return GWord(head, tuple(tail))


def random_power(rng: random.Random) -> AffineElem:
    k = rng.randint(-9, 9)
    return AffineElem(Dyadic.make(k), 0) if rng.random() < 0.5 else AffineElem(Dyadic.make(0), k)
