"""Endomorphisms of G and the outer automorphism group.

A map on generators ``x -> wx, y -> wy, t -> wt`` extends to an endomorphism
exactly when the images satisfy both defining relations. Such an
endomorphism either kills x (and then y), or it is an automorphism that
becomes ``x -> x, y -> y, t -> g t`` after an inner twist, with ``g`` a
translation ``y^n x^j y^-n``. The class of the automorphism in Out(G) is
the dyadic rational ``j / 2^n``; composing automorphisms adds these numbers.

The classifier below carries out that normalization step by step, checking
at each step the conclusion that has to hold. A failed check raises
:class:`InternalContradiction`, which always means a bug here and never a
property of the input.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

from .britton import Budget, GWord, _as_budget, britton_reduce, cyclic_reduce_g, is_y_power
from .conjugacy import _entry
from .h_arith import (
    AffineElem,
    Dyadic,
    H_ONE,
    ZERO,
    h_conjugate,
    h_conjugator,
    h_mul,
    h_normal_form,
    in_centralizer_of_x,
    psi,
    translation,
    x_power,
    y_power,
)
from .words import IDENTITY, T, Word, X, Y, invert, word_power, word_product


log = logging.getLogger(__name__)


class NotVerified(ValueError):
    """The images do not define a homomorphism."""

    def __init__(self, witness: "NotHom"):
        super().__init__(f"relation {witness.relation} fails, residue {witness.residue}")
        self.witness = witness


class InternalContradiction(AssertionError):
    pass


@dataclass(frozen=True)
class AutImages:
    wx: Word
    wy: Word
    wt: Word

    def image(self, gen) -> Word:
        return {X: self.wx, Y: self.wy, T: self.wt}[gen]

    def conjugated(self, c: Word) -> "AutImages":
        """Images of ``s -> c^-1 F(s) c``."""
        ci = invert(c)
        return AutImages(*(word_product([ci, w, c]) for w in (self.wx, self.wy, self.wt)))

    def __str__(self) -> str:
        return f"x -> {self.wx}\ny -> {self.wy}\nt -> {self.wt}"


IDENTITY_IMAGES = AutImages(Word.gen(X), Word.gen(Y), Word.gen(T))


@dataclass(frozen=True)
class OutClass:
    d: Dyadic

    def __str__(self) -> str:
        return str(self.d)


@dataclass(frozen=True)
class NotHom:
    relation: str
    residue: GWord

    kind = "not_hom"


@dataclass(frozen=True)
class Degenerate:
    t_image: Word

    kind = "degenerate"


@dataclass(frozen=True)
class Aut:
    """``conjugator^-1 F(s) conjugator`` is the standard automorphism for ``out``."""

    out: OutClass
    conjugator: Word

    kind = "aut"


Classification = Union[NotHom, Degenerate, Aut]

RELATION_Y = "y^-1 x y = x^2"
RELATION_T = "t^-1 x t = y"


def _relators(F: AutImages) -> list[tuple[str, Word]]:
    wx, wy, wt = F.wx, F.wy, F.wt
    return [
        (RELATION_Y, word_product([invert(wy), wx, wy, word_power(wx, -2)])),
        (RELATION_T, word_product([invert(wt), wx, wt, invert(wy)])),
    ]


def verify_hom(F: AutImages, budget: Budget | int | None = None) -> Optional[NotHom]:
    """``None`` if the images satisfy both relations, else the first failure."""
    for name, r in _relators(F):
        g = britton_reduce(r, budget)
        if not g.is_identity():
            return NotHom(name, g)
    return None


def std_aut(d: Dyadic) -> AutImages:
    """The automorphism ``x -> x, y -> y, t -> g t`` with ``g`` translation by ``d``."""
    g = h_normal_form(translation(d))
    return AutImages(Word.gen(X), Word.gen(Y), word_product([g, Word.gen(T)]))


def substitute(F: AutImages, w: Word) -> Word:
    """The word obtained by replacing each generator of ``w`` with its image."""
    return word_product([word_power(F.image(s.gen), s.exp) for s in w])


def apply_aut(F: AutImages, w: Word, budget: Budget | int | None = None) -> GWord:
    return britton_reduce(substitute(F, w), budget)


def compose_images(F: AutImages, G: AutImages, budget: Budget | int | None = None) -> AutImages:
    """Images of ``F o G`` (apply G first), each Britton-reduced."""
    return AutImages(
        *(apply_aut(F, w, budget).to_word() for w in (G.wx, G.wy, G.wt))
    )


def compose_out(d1: Dyadic, d2: Dyadic) -> Dyadic:
    return d1 + d2


def invert_out(d: Dyadic) -> Dyadic:
    return -d


class _Normalizer:
    """Current images of ``A o F`` where ``A`` is conjugation by ``self.conj``."""

    def __init__(self, F: AutImages, budget: Budget):
        self.budget = budget
        self.images = F
        self.conj = IDENTITY

    def twist(self, c: Word) -> None:
        if not c:
            return
        self.conj = word_product([self.conj, c])
        self.images = AutImages(
            *(
                britton_reduce(w, self.budget).to_word()
                for w in (
                    word_product([invert(c), self.images.wx, c]),
                    word_product([invert(c), self.images.wy, c]),
                    word_product([invert(c), self.images.wt, c]),
                )
            )
        )

    def reduced(self, gen) -> GWord:
        return britton_reduce(self.images.image(gen), self.budget)

    def h_image(self, gen, why: str) -> AffineElem:
        g = self.reduced(gen)
        if g.t_length():
            raise InternalContradiction(f"{why}: image of {gen.value} has t-length {g.t_length()}")
        return g.head


def classify_endo(F: AutImages, budget: Budget | int | None = None) -> Classification:
    """Classify verified images as degenerate or as an automorphism with its Out class.

    Raises :class:`NotVerified` when the images break a relation.
    """
    budget = _as_budget(budget)
    witness = verify_hom(F, budget)
    if witness is not None:
        raise NotVerified(witness)
    st = _Normalizer(F, budget)

    # the image of x is conjugate to its own square, so its cyclic core lies in H
    c1, core = cyclic_reduce_g(st.images.wx, budget)
    if core.t_length():
        raise InternalContradiction(f"core of F(x) has t-length {core.t_length()}")
    st.twist(c1)
    a = st.h_image(X, "after cyclic reduction")
    if a.is_identity():
        if not st.reduced(Y).is_identity():
            raise InternalContradiction("F(x) = 1 but F(y) != 1")
        return Degenerate(F.wt)

    # F(x) ~ F(x)^2 in G forces F(x) into a class containing a power of x
    entry = _entry(a)
    if entry is None:
        raise InternalContradiction(f"F(x) = {a} is not conjugate to a power of x or y")
    if entry[0] == "y":
        k = entry[1]
        st.twist(h_normal_form(h_conjugator(a, y_power(k))))
        st.twist(Word.gen(T, -1))  # t y^k t^-1 = x^k
        a = st.h_image(X, "after moving y^k to x^k")
    if a.n != 0:
        raise InternalContradiction(f"F(x) = {a} is not a translation")
    # translation j/2^m becomes x^j after conjugating by y^m
    st.twist(Word.gen(Y, a.q.den_exp))
    a = st.h_image(X, "after clearing the denominator")
    i = a.q.num
    if a != x_power(i) or i == 0:
        raise InternalContradiction(f"F(x) = {a} is not a nonzero power of x")

    fy = st.h_image(Y, "image of y with F(x) a power of x")
    if fy.n != 1:
        raise InternalContradiction(f"F(y) = {fy} does not have y-exponent 1")

    ft = st.reduced(T)
    if ft.t_length() != 1 or ft.tail[0][0] != 1:
        raise InternalContradiction(f"F(t) = {ft} is not of the form g1 t g2")
    g1 = ft.head
    m = h_conjugate(x_power(i), g1)
    if m != x_power(1):
        raise InternalContradiction(f"g1^-1 x^{i} g1 = {m}, expected x")
    st.twist(h_normal_form(g1))
    if st.h_image(X, "after conjugating by g1") != x_power(1):
        raise InternalContradiction("F(x) != x after conjugating by g1")

    # F(y) = (p, 1) = y^(n+1) x^j y^-n; conjugating by translation 2p fixes x and y
    fy = st.h_image(Y, "after conjugating by g1")
    if fy.n != 1:
        raise InternalContradiction(f"F(y) = {fy} does not have y-exponent 1")
    if fy.q.den_exp <= 1:
        # F(y) = y^(n+1) x^j y^-n needs n = 0 here
        log.info("F(y) = %s has the shape y^(n+1) x^j y^-n with n = 0", h_normal_form(fy))
    st.twist(h_normal_form(translation(fy.q * 2)))
    if st.h_image(Y, "final") != y_power(1) or st.h_image(X, "final") != x_power(1):
        raise InternalContradiction("x and y are not fixed after normalization")

    ft = st.reduced(T)
    if ft.t_length() != 1 or ft.tail[0][0] != 1:
        raise InternalContradiction(f"F(t) = {ft} lost its single t")
    k = is_y_power(ft.tail[0][1])
    if k is None:
        raise InternalContradiction(f"F(t) = {ft}: right factor is not a power of y")
    g = h_mul(ft.head, x_power(k))  # g1 t y^k = g1 x^k t
    if not in_centralizer_of_x(g):
        raise InternalContradiction(f"F(t) = g t with g = {g} outside the centralizer of x")
    return Aut(OutClass(psi(g)), st.conj)


def inner_equiv(F1: AutImages, F2: AutImages, budget: Budget | int | None = None) -> bool:
    c1, c2 = classify_endo(F1, budget), classify_endo(F2, budget)
    if not isinstance(c1, Aut) or not isinstance(c2, Aut):
        raise ValueError("inner_equiv needs two automorphisms")
    return c1.out == c2.out


def inverse_images(d: Dyadic, conjugator: Word) -> AutImages:
    """Images of the inverse of ``s -> c std_d(s) c^-1`` where ``c = conjugator``.

    That automorphism is conjugation by ``c^-1`` after ``std_aut(d)``, so its
    inverse is ``std_aut(-d)`` after conjugation by ``c``.
    """
    S = std_aut(invert_out(d))
    ci = invert(conjugator)
    return AutImages(
        *(substitute(S, word_product([ci, Word.gen(gen), conjugator])) for gen in (X, Y, T))
    )
